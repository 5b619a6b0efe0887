"""Spectral gap consequences for vertex subsets of Mat_3(F_q).

The graph is regular with one dominant eigenvalue, so two subsets whose
geometric mean size clears a threshold must span at least one edge, i.e.
must contain matrices whose difference is invertible.  The exact
threshold is the rational

    n_* = q^9 / (q^3 - 1),

and the integer bound actually used for the subset test is q^6 + q^3 + 2,
which strictly exceeds n_* for every q >= 2 (checked here by integer
cross-multiplication, never by floating point).

``check_spectral_gap`` combines the threshold, the size test, and an
exhaustive witness scan.  If the size test fires and the scan finds no
witness, the theorem (or more likely this implementation) is broken, and
a ``TheoremViolationError`` tripwire goes off.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import ContextMismatchError, TheoremViolationError
from .fields import FieldContext
from .matrices import Matrix, _det_flat, matrix_count, matrix_from_index
from .spectra import eigenvalue_closed_form


@dataclass(frozen=True)
class GapThreshold:
    q: int
    n_star: Fraction
    integer_bound: int


def spectral_threshold(q: int) -> GapThreshold:
    """The exact rational threshold and its integer bound, with the strict
    inequality n_* < bound re-proved in integers for this q."""
    if q < 2:
        raise ValueError(f"need q >= 2, got {q}")
    n_star = Fraction(q**9, q**3 - 1)
    bound = q**6 + q**3 + 2
    # n_star < bound  <=>  q^9 < (q^3 - 1) * bound, all in exact integers
    if not q**9 < (q**3 - 1) * bound:
        raise ArithmeticError(
            f"threshold inequality failed at q={q}: {n_star} >= {bound}"
        )
    return GapThreshold(q, n_star, bound)


def max_nontrivial_eigenvalue(q: int) -> int:
    """Largest eigenvalue magnitude over nonzero labels (ranks 1..3).

    The rank-1 magnitude dominates for every q >= 2; the max is computed
    rather than assumed, and the dominance itself is covered by tests.
    """
    return max(abs(eigenvalue_closed_form(q, r)) for r in (1, 2, 3))


@dataclass(frozen=True)
class GapReport:
    """Outcome of one subset-pair query, JSON-serializable in full."""

    q: int
    n_star_num: int
    n_star_den: int
    integer_bound: int
    size_x: int
    size_y: int
    guaranteed: bool
    witness: Optional[tuple[Matrix, Matrix]]
    seed: Optional[int] = None

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "n_star_num": self.n_star_num,
            "n_star_den": self.n_star_den,
            "integer_bound": self.integer_bound,
            "set_sizes": [self.size_x, self.size_y],
            "guaranteed": self.guaranteed,
            "witness": (
                None
                if self.witness is None
                else {
                    "a": self.witness[0].to_json_dict(),
                    "b": self.witness[1].to_json_dict(),
                }
            ),
            "seed": self.seed,
        }


def _shared_context(xs: Sequence[Matrix], ys: Sequence[Matrix]) -> tuple[FieldContext, int]:
    if not xs or not ys:
        raise ValueError("subsets must be nonempty")
    ctx, n = xs[0].ctx, xs[0].n
    for m in list(xs) + list(ys):
        if m.ctx != ctx or m.n != n:
            raise ContextMismatchError("subset matrices built over different contexts")
    return ctx, n


def find_invertible_difference(
    xs: Sequence[Matrix], ys: Sequence[Matrix]
) -> Optional[tuple[Matrix, Matrix]]:
    """First (a, b) in input order (a over xs outer, b over ys inner) with
    b - a invertible, or None.  Note b - a invertible forces b != a, so a
    single-set query never returns a degenerate pair."""
    ctx, n = _shared_context(xs, ys)
    add, neg = ctx._add, ctx._neg
    for a in xs:
        fa = a.flat
        for b in ys:
            diff = tuple(add[x][neg[y]] for x, y in zip(b.flat, fa))
            if _det_flat(ctx, n, diff):
                return (a, b)
    return None


def check_spectral_gap(
    xs: Sequence[Matrix], ys: Sequence[Matrix], seed: Optional[int] = None
) -> GapReport:
    """Run the subset test and the exhaustive witness scan for n = 3.

    ``guaranteed`` is the exact integer test |X||Y| > bound^2 (equivalent
    to sqrt(|X||Y|) > bound, with no square root taken).  A guaranteed
    query with no witness raises ``TheoremViolationError``.
    """
    ctx, n = _shared_context(xs, ys)
    if n != 3:
        raise ValueError(f"the subset bound is specific to 3x3 matrices, got n={n}")
    thr = spectral_threshold(ctx.q)
    guaranteed = len(xs) * len(ys) > thr.integer_bound**2
    witness = find_invertible_difference(xs, ys)
    if guaranteed and witness is None:
        raise TheoremViolationError(
            f"sizes ({len(xs)}, {len(ys)}) clear the bound {thr.integer_bound} "
            "but no invertible difference exists"
        )
    return GapReport(
        q=ctx.q,
        n_star_num=thr.n_star.numerator,
        n_star_den=thr.n_star.denominator,
        integer_bound=thr.integer_bound,
        size_x=len(xs),
        size_y=len(ys),
        guaranteed=guaranteed,
        witness=witness,
        seed=seed,
    )


def random_subset(ctx: FieldContext, n: int, size: int, rng: random.Random) -> list[Matrix]:
    """Uniform sample of distinct matrices, reproducible from the caller's
    seeded ``random.Random`` (indices drawn with ``rng.sample``)."""
    total = matrix_count(ctx, n)
    if size > total:
        raise ValueError(f"cannot sample {size} distinct matrices from {total}")
    return [matrix_from_index(ctx, n, i) for i in rng.sample(range(total), size)]
