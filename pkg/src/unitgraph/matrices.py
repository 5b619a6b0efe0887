"""Exact n x n matrix algebra over a finite field.

Matrices are immutable; entries are stored internally as a flat row-major
tuple of element indices into the field's tables, which keeps the
exhaustive-enumeration paths (hundreds of thousands of matrices) cheap
while the public surface still deals in ``FieldElement`` values.

Enumeration order is contractual: the matrix at enumeration index ``t``
has entry ``digit_pos(t)`` at row-major position ``pos = i*n + j``, where
``digit_pos`` is the base-q digit with position 0 least significant.  In
other words the (0,0) entry varies fastest, mirroring the field's own
constant-term-fastest element order.  The index <-> matrix maps are
exposed and invertible, so stored vertex/subset indices are reproducible
bit-for-bit across runs.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterable, Iterator, Sequence, Union

from .errors import ContextMismatchError, SizeTooLargeError
from .fields import FieldContext, FieldElement

# Streams larger than this refuse to start rather than run for hours;
# override per call where the caller knows better.  2^24 comfortably
# covers 4^9 = 262144 with room to spare.
DEFAULT_ENUM_CAP = 2**24

EntryLike = Union[FieldElement, int]


class Matrix:
    """An immutable n x n matrix over a ``FieldContext``."""

    __slots__ = ("ctx", "n", "flat")

    def __init__(self, ctx: FieldContext, n: int, flat: tuple[int, ...]):
        if n < 1:
            raise ValueError(f"matrix dimension must be >= 1, got {n}")
        if len(flat) != n * n:
            raise ValueError(f"expected {n * n} entries, got {len(flat)}")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "flat", flat)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Matrix is immutable")

    # -- construction ----------------------------------------------------------

    @classmethod
    def from_rows(cls, ctx: FieldContext, rows: Sequence[Sequence[EntryLike]]) -> "Matrix":
        """Build from nested sequences of field elements or element indices."""
        n = len(rows)
        flat = []
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix rows must all have length n")
            for e in row:
                if isinstance(e, FieldElement):
                    if e.ctx != ctx:
                        raise ContextMismatchError(
                            f"entry from {e.ctx!r} does not belong to {ctx!r}"
                        )
                    flat.append(e.index)
                else:
                    flat.append(ctx.element(e).index)
        return cls(ctx, n, tuple(flat))

    @classmethod
    def zero(cls, ctx: FieldContext, n: int) -> "Matrix":
        return cls(ctx, n, (0,) * (n * n))

    @classmethod
    def identity(cls, ctx: FieldContext, n: int) -> "Matrix":
        flat = [0] * (n * n)
        for i in range(n):
            flat[i * n + i] = 1
        return cls(ctx, n, tuple(flat))

    # -- views -------------------------------------------------------------------

    def entry(self, i: int, j: int) -> FieldElement:
        return FieldElement(self.ctx, self.flat[i * self.n + j])

    @property
    def rows(self) -> tuple[tuple[FieldElement, ...], ...]:
        n = self.n
        return tuple(
            tuple(FieldElement(self.ctx, self.flat[i * n + j]) for j in range(n))
            for i in range(n)
        )

    def to_json_dict(self) -> dict:
        n = self.n
        decode = self.ctx._decode
        return {
            "q": self.ctx.q,
            "n": n,
            "entries": [
                [list(decode(self.flat[i * n + j])) for j in range(n)] for i in range(n)
            ],
        }

    # -- ring operations -----------------------------------------------------------

    def _check(self, other: "Matrix") -> None:
        if not isinstance(other, Matrix):
            raise TypeError(f"expected Matrix, got {type(other).__name__}")
        if self.ctx != other.ctx:
            raise ContextMismatchError("matrices built over different fields")
        if self.n != other.n:
            raise ContextMismatchError(
                f"dimension mismatch: {self.n} vs {other.n}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add = self.ctx._add
        return Matrix(
            self.ctx, self.n, tuple(add[a][b] for a, b in zip(self.flat, other.flat))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        add, neg = self.ctx._add, self.ctx._neg
        return Matrix(
            self.ctx, self.n, tuple(add[a][neg[b]] for a, b in zip(self.flat, other.flat))
        )

    def __neg__(self) -> "Matrix":
        neg = self.ctx._neg
        return Matrix(self.ctx, self.n, tuple(neg[a] for a in self.flat))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        n = self.n
        add, mul = self.ctx._add, self.ctx._mul
        a, b = self.flat, other.flat
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for t in range(n):
                    acc = add[acc][mul[a[i * n + t]][b[t * n + j]]]
                out.append(acc)
        return Matrix(self.ctx, n, tuple(out))

    def trace(self) -> FieldElement:
        add = self.ctx._add
        acc = 0
        for i in range(self.n):
            acc = add[acc][self.flat[i * self.n + i]]
        return FieldElement(self.ctx, acc)

    def det(self) -> FieldElement:
        return FieldElement(self.ctx, _det_flat(self.ctx, self.n, self.flat))

    def rank(self) -> int:
        return _rank_flat(self.ctx, self.n, self.flat)

    def is_invertible(self) -> bool:
        return _det_flat(self.ctx, self.n, self.flat) != 0

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self.flat == other.flat and self.ctx == other.ctx

    def __hash__(self):
        return hash((self.ctx, self.n, self.flat))

    def __repr__(self):
        n = self.n
        rows = [
            "[" + " ".join(str(self.flat[i * n + j]) for j in range(n)) + "]"
            for i in range(n)
        ]
        return f"Matrix({self.ctx!r}, {'; '.join(rows)})"


def rank_representative(ctx: FieldContext, n: int, r: int) -> Matrix:
    """The diagonal 0/1 matrix with r leading ones (so of rank exactly r)."""
    if not 0 <= r <= n:
        raise ValueError(f"rank must be in [0, {n}], got {r}")
    flat = [0] * (n * n)
    for i in range(r):
        flat[i * n + i] = 1
    return Matrix(ctx, n, tuple(flat))


# ---------------------------------------------------------------------------
# determinant / rank on flat index tuples (the hot path)


def _det_flat(ctx: FieldContext, n: int, flat: Sequence[int]) -> int:
    add, mul, neg = ctx._add, ctx._mul, ctx._neg
    if n == 1:
        return flat[0]
    if n == 2:
        a, b, c, d = flat
        return add[mul[a][d]][neg[mul[b][c]]]
    if n == 3:
        a, b, c, d, e, f, g, h, i = flat
        m1 = mul[a][add[mul[e][i]][neg[mul[f][h]]]]
        m2 = mul[b][add[mul[d][i]][neg[mul[f][g]]]]
        m3 = mul[c][add[mul[d][h]][neg[mul[e][g]]]]
        return add[add[m1][neg[m2]]][m3]
    return _det_eliminate(ctx, n, flat)


def _det_eliminate(ctx: FieldContext, n: int, flat: Sequence[int]) -> int:
    add, mul, neg, inv = ctx._add, ctx._mul, ctx._neg, ctx._inv
    rows = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
    det = 1
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = neg[det]
        pv = rows[col][col]
        det = mul[det][pv]
        pv_inv = inv[pv]
        for r in range(col + 1, n):
            factor = rows[r][col]
            if factor:
                scale = mul[factor][pv_inv]
                rows[r] = [
                    add[x][neg[mul[scale][y]]] for x, y in zip(rows[r], rows[col])
                ]
    return det


def _rank_flat(ctx: FieldContext, n: int, flat: Sequence[int]) -> int:
    """Row-echelon rank, first-nonzero pivot in column order."""
    add, mul, neg, inv = ctx._add, ctx._mul, ctx._neg, ctx._inv
    rows = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv_inv = inv[rows[rank][col]]
        for r in range(rank + 1, n):
            factor = rows[r][col]
            if factor:
                scale = mul[factor][pv_inv]
                rows[r] = [
                    add[x][neg[mul[scale][y]]] for x, y in zip(rows[r], rows[rank])
                ]
        rank += 1
        if rank == n:
            break
    return rank


# ---------------------------------------------------------------------------
# enumeration


def matrix_count(ctx: FieldContext, n: int) -> int:
    return ctx.q ** (n * n)


def _require_under_cap(ctx: FieldContext, n: int, cap: int) -> int:
    total = matrix_count(ctx, n)
    if total > cap:
        raise SizeTooLargeError(
            f"enumerating {total} matrices over {ctx!r} exceeds the cap {cap}"
        )
    return total


def matrix_from_index(ctx: FieldContext, n: int, index: int) -> Matrix:
    """Inverse of ``matrix_to_index`` (see module docstring for the order)."""
    total = matrix_count(ctx, n)
    if not 0 <= index < total:
        raise ValueError(f"matrix index {index} out of range [0, {total})")
    q = ctx.q
    flat = []
    for _ in range(n * n):
        index, digit = divmod(index, q)
        flat.append(digit)
    return Matrix(ctx, n, tuple(flat))


def matrix_to_index(m: Matrix) -> int:
    index = 0
    q = m.ctx.q
    for digit in reversed(m.flat):
        index = index * q + digit
    return index


def _iter_flats(ctx: FieldContext, n: int) -> Iterator[tuple[int, ...]]:
    """All flat entry tuples in enumeration-index order.

    itertools.product counts big-endian, so reversing each tuple makes
    position 0 the fastest-varying digit, i.e. tuple t of this stream is
    the matrix with enumeration index t.
    """
    for rev in itertools.product(range(ctx.q), repeat=n * n):
        yield rev[::-1]


def enumerate_matrices(
    ctx: FieldContext, n: int, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Matrix]:
    """All q^(n^2) matrices, exactly once, in enumeration-index order."""
    _require_under_cap(ctx, n, cap)
    for flat in _iter_flats(ctx, n):
        yield Matrix(ctx, n, flat)


def enumerate_invertible(
    ctx: FieldContext, n: int, cap: int = DEFAULT_ENUM_CAP
) -> Iterator[Matrix]:
    """The subsequence of ``enumerate_matrices`` with nonzero determinant."""
    _require_under_cap(ctx, n, cap)
    for flat in _iter_flats(ctx, n):
        if _det_flat(ctx, n, flat):
            yield Matrix(ctx, n, flat)


@functools.lru_cache(maxsize=2)
def _invertible_flats(ctx: FieldContext, n: int) -> tuple:
    """Flat tuples of every invertible matrix, cached.

    Character sums take several passes over the same group (one per label
    or rank representative); filtering by determinant once and reusing the
    list keeps those passes linear in |GL| instead of q^(n^2).
    """
    _require_under_cap(ctx, n, DEFAULT_ENUM_CAP)
    det = _det_flat
    return tuple(flat for flat in _iter_flats(ctx, n) if det(ctx, n, flat))


def gl_order(q: int, n: int) -> int:
    """|GL_n(F_q)| = prod_{k=0}^{n-1} (q^n - q^k), as an exact integer."""
    if q < 2 or n < 1:
        raise ValueError(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    qn = q**n
    order = 1
    for k in range(n):
        order *= qn - q**k
    return order


def rank_census(ctx: FieldContext, n: int, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Exhaustive count of matrices by rank: counts[r] for r = 0..n."""
    _require_under_cap(ctx, n, cap)
    counts = [0] * (n + 1)
    for flat in _iter_flats(ctx, n):
        counts[_rank_flat(ctx, n, flat)] += 1
    return counts


def matrices_from_index_file(
    ctx: FieldContext, n: int, lines: Iterable[str]
) -> list[Matrix]:
    """Parse newline-separated enumeration indices into matrices."""
    out = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            idx = int(line)
        except ValueError as exc:
            raise ValueError(f"line {lineno}: not an integer index: {raw!r}") from exc
        out.append(matrix_from_index(ctx, n, idx))
    return out
