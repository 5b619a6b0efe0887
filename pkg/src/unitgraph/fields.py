"""Exact arithmetic in prime fields F_p and extension fields F_{p^k}.

Elements of F_{p^k} are residue polynomials modulo a monic irreducible
polynomial of degree k over F_p, stored as coefficient vectors with the
constant term first.  Every element is identified with an integer index

    index = c0 + c1*p + ... + c_{k-1}*p^(k-1),

so enumeration by increasing index is exactly lexicographic coefficient
order with the constant term varying fastest.  A ``FieldContext`` holds
full addition/multiplication/inverse/trace lookup tables, which keeps all
arithmetic exact and O(1); the intended scale is small (q <= 27 for
enumeration work), so table size is never a concern.

The absolute trace maps a in F_{p^k} to a + a^p + ... + a^(p^(k-1)),
which always lands in the prime subfield and is returned as a plain
integer in [0, p).

Moduli for common field orders ship in ``data/moduli.txt`` (one line per
field, ``p k c0,c1,...,ck``); any table whose entries pass the
irreducibility check works, since traces and everything built on them are
independent of the basis choice.
"""

from __future__ import annotations

import functools
from importlib import resources
from typing import Iterator, Optional, Sequence, Union

from .errors import (
    ContextMismatchError,
    NonPrimeError,
    ReducibleModulusError,
    SizeTooLargeError,
    UnsupportedFieldError,
)

# Tables are dense q x q; anything bigger than this is outside the design
# scale of the package (exhaustive enumeration work tops out at q = 27).
_MAX_TABLE_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> Optional[tuple[int, int]]:
    """Decompose q as p^k with p prime, or return None.

    The decomposition is unique, so there is no ambiguity to resolve.
    """
    if q < 2:
        return None
    p = None
    if q % 2 == 0:
        p = 2
    else:
        d = 3
        while d * d <= q:
            if q % d == 0:
                p = d
                break
            d += 2
    if p is None:
        return (q, 1)  # q itself is prime
    k = 0
    m = q
    while m % p == 0:
        m //= p
        k += 1
    if m != 1:
        return None
    return (p, k)


# ---------------------------------------------------------------------------
# polynomial helpers over F_p (coefficient lists, constant term first)


def _poly_eval(coeffs: Sequence[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _poly_divmod(num: Sequence[int], den: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    """Division with remainder; den must be monic."""
    num = list(num)
    dd = len(den) - 1
    quot = [0] * max(len(num) - dd, 0)
    for i in range(len(num) - dd - 1, -1, -1):
        c = num[i + dd] % p
        if c:
            quot[i] = c
            for j, d in enumerate(den):
                num[i + j] = (num[i + j] - c * d) % p
    rem = [c % p for c in num[:dd]]
    return quot, rem


def _irreducible_quadratics(p: int) -> Iterator[list[int]]:
    for b in range(p):
        for a in range(p):
            quad = [a, b, 1]
            if all(_poly_eval(quad, x, p) for x in range(p)):
                yield quad


def _check_irreducible(modulus: Sequence[int], p: int) -> None:
    """Brute-force irreducibility for degrees 1..4.

    Degrees 2 and 3 are irreducible iff they have no root in F_p; degree 4
    additionally needs a trial division by every irreducible quadratic.
    Higher degrees are outside the supported range.
    """
    deg = len(modulus) - 1
    if deg == 1:
        return
    if deg > 4:
        raise UnsupportedFieldError(
            f"modulus degree {deg} exceeds the supported irreducibility check (degree <= 4)"
        )
    for x in range(p):
        if _poly_eval(modulus, x, p) == 0:
            raise ReducibleModulusError(
                f"modulus {list(modulus)} has root {x} over F_{p}"
            )
    if deg == 4:
        for quad in _irreducible_quadratics(p):
            _, rem = _poly_divmod(modulus, quad, p)
            if not any(rem):
                raise ReducibleModulusError(
                    f"modulus {list(modulus)} is divisible by {quad} over F_{p}"
                )


# ---------------------------------------------------------------------------
# modulus table


def _parse_modulus_table(text: str) -> dict[tuple[int, int], tuple[int, ...]]:
    table: dict[tuple[int, int], tuple[int, ...]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            p_str, k_str, coeff_str = line.split()
            p, k = int(p_str), int(k_str)
            coeffs = tuple(int(c) for c in coeff_str.split(","))
        except ValueError as exc:
            raise ValueError(f"bad modulus table line {lineno}: {raw!r}") from exc
        if len(coeffs) != k + 1:
            raise ValueError(
                f"modulus table line {lineno}: expected {k + 1} coefficients, got {len(coeffs)}"
            )
        table[(p, k)] = coeffs
    return table


@functools.cache
def _load_modulus_file(path: Optional[str]) -> dict[tuple[int, int], tuple[int, ...]]:
    if path is None:
        text = resources.files("unitgraph").joinpath("data/moduli.txt").read_text()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    table = _parse_modulus_table(text)
    # Validate every entry up front so a broken table fails at load, not
    # deep inside a computation.
    for (p, k), coeffs in table.items():
        if not is_prime(p):
            raise NonPrimeError(f"modulus table entry for ({p}, {k}): {p} is not prime")
        if coeffs[-1] % p != 1:
            raise ValueError(f"modulus table entry for ({p}, {k}) is not monic")
        _check_irreducible([c % p for c in coeffs], p)
    return table


def default_modulus_table() -> dict[tuple[int, int], tuple[int, ...]]:
    """The packaged modulus table, validated."""
    return _load_modulus_file(None)


def load_modulus_table(path: str) -> dict[tuple[int, int], tuple[int, ...]]:
    """Load and validate a user-supplied modulus table file."""
    return _load_modulus_file(path)


# ---------------------------------------------------------------------------
# field context and elements


class FieldContext:
    """A finite field F_{p^k} with dense arithmetic tables.

    Identity is structural: two contexts with the same (p, k, modulus)
    compare and hash equal, so serialized data round-trips across
    independently built contexts.  Instances are immutable.
    """

    __slots__ = ("p", "k", "q", "modulus", "_add", "_mul", "_neg", "_inv", "_trace", "_hash")

    def __init__(self, p: int, k: int, modulus: Sequence[int]):
        if not is_prime(p):
            raise NonPrimeError(f"{p} is not prime")
        if k < 1:
            raise ValueError(f"extension degree must be >= 1, got {k}")
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {k}, got {list(modulus)}")
        _check_irreducible(modulus, p)
        q = p**k
        if q > _MAX_TABLE_ORDER:
            raise SizeTooLargeError(
                f"field order {q} exceeds the table limit {_MAX_TABLE_ORDER}"
            )
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "_hash", hash((p, k, modulus)))
        self._build_tables()

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("FieldContext is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldContext):
            return NotImplemented
        return self.p == other.p and self.k == other.k and self.modulus == other.modulus

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- table construction -------------------------------------------------

    def _decode(self, index: int) -> tuple[int, ...]:
        coeffs = []
        for _ in range(self.k):
            index, c = divmod(index, self.p)
            coeffs.append(c)
        return tuple(coeffs)

    def _encode(self, coeffs: Sequence[int]) -> int:
        index = 0
        for c in reversed(coeffs):
            index = index * self.p + c % self.p
        return index

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        decode = [self._decode(i) for i in range(q)]

        add = []
        for i in range(q):
            a = decode[i]
            add.append(
                tuple(
                    self._encode([(x + y) % p for x, y in zip(a, decode[j])])
                    for j in range(q)
                )
            )
        object.__setattr__(self, "_add", tuple(add))
        object.__setattr__(
            self, "_neg", tuple(self._encode([(-x) % p for x in decode[i]]) for i in range(q))
        )

        def mul_poly(a: Sequence[int], b: Sequence[int]) -> int:
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] = (prod[i + j] + x * y) % p
            _, rem = _poly_divmod(prod, self.modulus, p)
            rem += [0] * (k - len(rem))
            return self._encode(rem)

        mul = []
        for i in range(q):
            a = decode[i]
            mul.append(tuple(mul_poly(a, decode[j]) for j in range(q)))
        object.__setattr__(self, "_mul", tuple(mul))

        inv: list[Optional[int]] = [None] * q
        for i in range(1, q):
            row = mul[i]
            for j in range(1, q):
                if row[j] == 1:
                    inv[i] = j
                    break
        object.__setattr__(self, "_inv", tuple(inv))

        # absolute trace: a + a^p + ... + a^(p^(k-1)), always in F_p;
        # Frobenius computed as p-fold multiplication (p is tiny here)
        trace = []
        for i in range(q):
            t = i
            acc = i
            for _ in range(k - 1):
                tp = 1
                for _ in range(p):
                    tp = mul[tp][t]
                t = tp
                acc = add[acc][t]
            if acc >= p:
                raise AssertionError(
                    f"trace of element {i} in {self!r} fell outside the prime subfield"
                )
            trace.append(acc)
        object.__setattr__(self, "_trace", tuple(trace))

    # -- element construction ------------------------------------------------

    def element(self, value: Union[int, Sequence[int], "FieldElement"]) -> "FieldElement":
        """Build an element from an index, a coefficient list, or itself."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise ContextMismatchError(f"element of {value.ctx!r} is not in {self!r}")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise ValueError(f"element index {value} out of range for {self!r}")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) != self.k:
            raise ValueError(f"expected {self.k} coefficients, got {len(coeffs)}")
        return FieldElement(self, self._encode(coeffs))

    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self) -> Iterator["FieldElement"]:
        """All q elements, in index order (starts at 0)."""
        for i in range(self.q):
            yield FieldElement(self, i)

    def trace_of_index(self, index: int) -> int:
        return self._trace[index]


class FieldElement:
    """An element of a ``FieldContext``, immutable and hashable.

    Supports +, -, *, unary -, ``inverse()`` and division; mixing elements
    from different contexts raises ``ContextMismatchError``.
    """

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldContext, index: int):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "index", index)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        """Residue polynomial coefficients, constant term first."""
        return self.ctx._decode(self.index)

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise ContextMismatchError(
                f"cannot combine elements of {self.ctx!r} and {other.ctx!r}"
            )

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self.ctx._add[self.index][other.index])

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self.ctx._add[self.index][self.ctx._neg[other.index]])

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.ctx, self.ctx._mul[self.index][other.index])

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx._neg[self.index])

    def inverse(self) -> "FieldElement":
        inv = self.ctx._inv[self.index]
        if inv is None:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return FieldElement(self.ctx, inv)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "FieldElement":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement(self.ctx, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def trace(self) -> int:
        """Absolute trace into the prime subfield, as an int in [0, p)."""
        return self.ctx._trace[self.index]

    def is_zero(self) -> bool:
        return self.index == 0

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.index == other.index and self.ctx == other.ctx

    def __hash__(self):
        return hash((self.ctx._hash, self.index))

    def __repr__(self):
        return f"{self.ctx!r}[{poly_str(self.coeffs)}]"


def poly_str(coeffs: Sequence[int]) -> str:
    """Human-readable form of a coefficient list, e.g. ``x^2+x+1``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            var = "x" if i == 1 else f"x^{i}"
            terms.append(var if c == 1 else f"{c}{var}")
    return "+".join(terms) if terms else "0"


@functools.cache
def _cached_context(p: int, k: int, modulus: tuple[int, ...]) -> FieldContext:
    return FieldContext(p, k, modulus)


def field(
    p: int,
    k: int = 1,
    modulus: Optional[Sequence[int]] = None,
    modulus_table: Optional[dict[tuple[int, int], tuple[int, ...]]] = None,
) -> FieldContext:
    """Build (or fetch from cache) the field F_{p^k}.

    For k = 1 the modulus is the placeholder ``x`` and need not be given.
    For k >= 2 an explicit modulus wins; otherwise the modulus table is
    consulted (the packaged table by default).
    """
    if not is_prime(p):
        raise NonPrimeError(f"{p} is not prime")
    if k < 1:
        raise ValueError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        if modulus is not None and tuple(c % p for c in modulus) != (0, 1):
            raise ValueError("prime fields use the fixed placeholder modulus x")
        return _cached_context(p, 1, (0, 1))
    if modulus is None:
        table = modulus_table if modulus_table is not None else default_modulus_table()
        if (p, k) not in table:
            raise UnsupportedFieldError(
                f"no modulus on file for GF({p}^{k}); pass one explicitly"
            )
        modulus = table[(p, k)]
    return _cached_context(p, k, tuple(c % p for c in modulus))


def field_of_order(
    q: int,
    modulus: Optional[Sequence[int]] = None,
    modulus_table: Optional[dict[tuple[int, int], tuple[int, ...]]] = None,
) -> FieldContext:
    """Build the field of order q, factoring q = p^k automatically."""
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    p, k = pk
    return field(p, k, modulus=modulus, modulus_table=modulus_table)
