"""Adjacency spectrum of the invertibility graph on Mat_n(F_q).

Two independent routes to the same numbers live here and are kept
deliberately separate so they can cross-check each other:

* closed forms -- for n = 3, each eigenvalue is an explicit integer
  polynomial in q, indexed by the rank of the character label, and each
  multiplicity is the count of rank-r matrices given by Landsberg's
  formula;
* brute force -- for any n small enough to enumerate, the eigenvalue of a
  label is the exact character sum over all invertible matrices, computed
  by histogramming trace exponents and contracting against roots of unity
  once.

The closed forms for n = 3, by label rank r:

    r = 0:  (q^3-1)(q^3-q)(q^3-q^2)   (the full count of invertibles)
    r = 1:  -q^6 + q^5 + q^4 - q^3
    r = 2:  q^4 - q^3
    r = 3:  -q^3

All arithmetic is exact; a cyclotomic sum that fails to collapse to an
integer raises rather than rounding.
"""

from __future__ import annotations

from dataclasses import dataclass

from .characters import _label_terms
from .cyclotomic import Cyclotomic
from .errors import InexactDivisionError
from .fields import FieldContext, FieldElement
from .matrices import (
    DEFAULT_ENUM_CAP,
    Matrix,
    _invertible_flats,
    _require_under_cap,
    rank_representative,
)


@dataclass(frozen=True)
class SpectrumLine:
    rank: int
    eigenvalue: int
    multiplicity: int


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues with multiplicities, one line per label rank 0..n."""

    q: int
    n: int
    lines: tuple[SpectrumLine, ...]

    def validate(self) -> "Spectrum":
        """Check the structural identities; raises ValueError on failure.

        Violations here mean an implementation bug, not bad user input:
        multiplicities must partition all q^(n^2) labels and the weighted
        eigenvalue sum must vanish because the graph has no loops.
        """
        if len(self.lines) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} spectrum lines, got {len(self.lines)}")
        for r, line in enumerate(self.lines):
            if line.rank != r:
                raise ValueError(f"line {r} carries rank {line.rank}")
            if line.multiplicity < 1:
                raise ValueError(f"rank {r} has multiplicity {line.multiplicity} < 1")
        total = sum(line.multiplicity for line in self.lines)
        if total != self.q ** (self.n * self.n):
            raise ValueError(
                f"multiplicities sum to {total}, expected {self.q ** (self.n * self.n)}"
            )
        if not trace_identity_holds(self):
            raise ValueError("weighted eigenvalue sum is nonzero")
        if self.n == 3:
            values = [line.eigenvalue for line in self.lines]
            if len(set(values)) != 4:
                raise ValueError(f"eigenvalues not pairwise distinct: {values}")
        return self

    def eigenvalue_of_rank(self, r: int) -> int:
        return self.lines[r].eigenvalue

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "lines": [
                {
                    "rank": line.rank,
                    "eigenvalue": line.eigenvalue,
                    "multiplicity": line.multiplicity,
                }
                for line in self.lines
            ],
        }

    def to_csv(self) -> str:
        rows = ["rank,eigenvalue,multiplicity"]
        rows += [
            f"{line.rank},{line.eigenvalue},{line.multiplicity}" for line in self.lines
        ]
        return "\n".join(rows) + "\n"


def trace_identity_holds(spectrum: Spectrum) -> bool:
    """True iff sum_r multiplicity_r * eigenvalue_r == 0 exactly.

    The adjacency matrix has a zero diagonal, so its trace -- the weighted
    eigenvalue sum -- must vanish.
    """
    return sum(line.multiplicity * line.eigenvalue for line in spectrum.lines) == 0


# ---------------------------------------------------------------------------
# closed forms (n = 3)


def eigenvalue_closed_form(q: int, rank: int) -> int:
    """The n = 3 eigenvalue for labels of the given rank, factored form."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    if rank == 0:
        return (q**3 - 1) * (q**3 - q) * (q**3 - q**2)
    if rank == 1:
        # N(0) - N(1): invertible counts with fixed (0,0) entry 0 resp. 1
        return (q**2 - 1) * (q**3 - q) * (q**3 - q**2) - q**2 * (q**3 - q) * (q**3 - q**2)
    if rank == 2:
        return q**3 * (q - 1)
    if rank == 3:
        return -(q**3)
    raise ValueError(f"rank must be in [0, 3], got {rank}")


def _eigenvalue_polynomial(q: int, rank: int) -> int:
    """Expanded-polynomial transcription of the same eigenvalues.

    Kept separate from the factored forms on purpose: tests assert the two
    transcriptions agree over a sweep of q, guarding against a typo in
    either one.
    """
    if rank == 0:
        return q**9 - q**8 - q**7 + q**5 + q**4 - q**3
    if rank == 1:
        return -(q**6) + q**5 + q**4 - q**3
    if rank == 2:
        return q**4 - q**3
    if rank == 3:
        return -(q**3)
    raise ValueError(f"rank must be in [0, 3], got {rank}")


def rank_count(q: int, n: int, r: int) -> int:
    """Number of rank-r matrices in Mat_n(F_q) (Landsberg's formula).

    m_r = q^(r(r-1)/2) * prod_{k=0}^{r-1} (q^(n-k)-1)^2 / (q^(k+1)-1),
    evaluated in exact integer arithmetic; every intermediate division is
    checked to be exact.
    """
    if q < 2 or n < 1:
        raise ValueError(f"need q >= 2 and n >= 1, got q={q}, n={n}")
    if not 0 <= r <= n:
        raise ValueError(f"rank must be in [0, {n}], got {r}")
    acc = q ** (r * (r - 1) // 2)
    for k in range(r):
        acc *= (q ** (n - k) - 1) ** 2
        acc, rem = divmod(acc, q ** (k + 1) - 1)
        if rem:
            raise InexactDivisionError(
                f"rank count division left remainder {rem} at step {k} (q={q}, n={n}, r={r})"
            )
    return acc


def spectrum_closed_form(q: int) -> Spectrum:
    """The full n = 3 spectrum from the closed forms, validated."""
    lines = tuple(
        SpectrumLine(r, eigenvalue_closed_form(q, r), rank_count(q, 3, r))
        for r in range(4)
    )
    return Spectrum(q, 3, lines).validate()


def solve_top_rank_eigenvalue(q: int) -> int:
    """Recover the rank-3 eigenvalue from the zero-trace identity.

    The weighted sum of all four eigenvalues vanishes, so the last one is
    minus the weighted sum of the first three divided by its multiplicity.
    The division must be exact; a remainder means the closed forms are
    inconsistent with each other.
    """
    weighted = sum(rank_count(q, 3, r) * eigenvalue_closed_form(q, r) for r in range(3))
    m3 = rank_count(q, 3, 3)
    lam, rem = divmod(-weighted, m3)
    if rem:
        raise InexactDivisionError(
            f"trace identity does not divide exactly at q={q} (remainder {rem})"
        )
    return lam


# ---------------------------------------------------------------------------
# brute-force character sums over the invertible matrices


def eigenvalue_charsum(label: Matrix, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Exact character sum of the label over all invertible matrices.

    Histogram the trace exponent over GL_n(F_q), contract the histogram
    against powers of zeta_p once, and collapse to an integer.  A
    ``NotRationalError`` escaping from the collapse indicates a bug, not a
    property of the input: these sums are Galois-stable.
    """
    ctx, n = label.ctx, label.n
    _require_under_cap(ctx, n, cap)
    terms = _label_terms(ctx, n, label.flat)
    counts = [0] * ctx.p
    trace_tab = ctx._trace
    add, mul = ctx._add, ctx._mul
    if not terms:
        return len(_invertible_flats(ctx, n))
    for flat in _invertible_flats(ctx, n):
        acc = 0
        for pos, a in terms:
            acc = add[acc][mul[a][flat[pos]]]
        counts[trace_tab[acc]] += 1
    return Cyclotomic.from_exponent_counts(ctx.p, counts).to_int()


def eigenvalue_charsum_rank(ctx: FieldContext, n: int, r: int, cap: int = DEFAULT_ENUM_CAP) -> int:
    """Character sum for the canonical rank-r diagonal label."""
    return eigenvalue_charsum(rank_representative(ctx, n, r), cap=cap)


def spectrum_brute_force(ctx: FieldContext, n: int, cap: int = DEFAULT_ENUM_CAP) -> Spectrum:
    """Spectrum for any enumerable n: char-sum eigenvalues, formula counts."""
    lines = tuple(
        SpectrumLine(r, eigenvalue_charsum_rank(ctx, n, r, cap=cap), rank_count(ctx.q, n, r))
        for r in range(n + 1)
    )
    return Spectrum(ctx.q, n, lines).validate()


# ---------------------------------------------------------------------------
# proof-internal counts: invertible matrices with pinned diagonal entries


def count_invertible_corner(
    ctx: FieldContext, alpha: FieldElement, n: int = 3, cap: int = DEFAULT_ENUM_CAP
) -> int:
    """|{B in GL_n(F_q) : B[0,0] = alpha}| by exhaustive filter."""
    _require_under_cap(ctx, n, cap)
    a = ctx.element(alpha).index
    return sum(1 for flat in _invertible_flats(ctx, n) if flat[0] == a)


def count_invertible_diag_pair(
    ctx: FieldContext,
    alpha: FieldElement,
    beta: FieldElement,
    n: int = 3,
    cap: int = DEFAULT_ENUM_CAP,
) -> int:
    """|{B in GL_n(F_q) : B[0,0] = alpha, B[1,1] = beta}| by exhaustive filter."""
    _require_under_cap(ctx, n, cap)
    a = ctx.element(alpha).index
    b = ctx.element(beta).index
    pos_b = n + 1
    return sum(
        1 for flat in _invertible_flats(ctx, n) if flat[0] == a and flat[pos_b] == b
    )


def corner_count_closed_form(q: int, alpha_is_zero: bool) -> int:
    """Closed form for the corner-pinned count over GL_3: the first column
    loses the zero vector when its top entry is pinned to 0, and loses
    nothing otherwise."""
    tail = (q**3 - q) * (q**3 - q**2)
    return (q**2 - 1) * tail if alpha_is_zero else q**2 * tail


def diag_pair_count_closed_form(q: int, alpha_is_zero: bool, beta_is_zero: bool) -> int:
    """Closed form for the doubly pinned count over GL_3.

    The count depends only on which of the two pinned diagonal entries are
    zero (diagonal scaling by units moves any nonzero value to any other).
    The four cases come from splitting on whether the (1,0) entry below
    the pinned corner vanishes.
    """
    last = q**3 - q**2
    if alpha_is_zero and beta_is_zero:
        return (q - 1) * q * (q - 1) * last + (q**2 - 1) * q * (q - 1) * last
    if alpha_is_zero != beta_is_zero:
        return (q - 1) * q**2 * last + q * (q - 1) * (q**2 - 1) * last
    return q**3 * last + q * (q - 1) * (q**2 - 1) * last
