"""Additive characters of F_q and of the matrix group (Mat_n(F_q), +).

The canonical character sends a field element to zeta_p raised to its
absolute trace.  Scaling the argument by a fixed element b (resp. a fixed
matrix A, under the matrix trace of A*B) yields the full character family;
the scaling value acts as the character's label, and labels are plain
data (field elements / matrices), so they serialize into reports.

Character values are exact ``Cyclotomic`` numbers.  For bulk work the
functions below also expose the underlying exponent (an integer in
[0, p)), which is what the enumeration loops histogram over.
"""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import Cyclotomic
from .errors import ContextMismatchError
from .fields import FieldContext, FieldElement
from .matrices import DEFAULT_ENUM_CAP, Matrix, _iter_flats, _require_under_cap


def field_char(label: FieldElement, c: FieldElement) -> Cyclotomic:
    """Character of F_q with the given label: zeta_p^Tr(label * c)."""
    if label.ctx != c.ctx:
        raise ContextMismatchError("label and argument built over different fields")
    ctx = label.ctx
    return Cyclotomic.root(ctx.p, ctx._trace[ctx._mul[label.index][c.index]])


def matrix_trace_exponent(label: Matrix, b: Matrix) -> int:
    """Tr(tr(label @ b)) as an integer exponent in [0, p)."""
    if label.ctx != b.ctx or label.n != b.n:
        raise ContextMismatchError("label and argument have mismatched context or size")
    return _exponent_of(label.ctx, _label_terms(label.ctx, label.n, label.flat), b.flat)


def matrix_char(label: Matrix, b: Matrix) -> Cyclotomic:
    """Character of (Mat_n(F_q), +) with a matrix label: zeta_p^Tr(tr(A B))."""
    return Cyclotomic.root(label.ctx.p, matrix_trace_exponent(label, b))


def char_vector(label: Matrix, cap: int = DEFAULT_ENUM_CAP) -> list[Cyclotomic]:
    """The character evaluated at every matrix, in enumeration order."""
    p = label.ctx.p
    return [Cyclotomic.root(p, e) for e in char_exponents(label, cap=cap)]


def char_exponents(label: Matrix, cap: int = DEFAULT_ENUM_CAP) -> list[int]:
    """Trace exponents of the character at every matrix, in enumeration order."""
    ctx, n = label.ctx, label.n
    _require_under_cap(ctx, n, cap)
    terms = _label_terms(ctx, n, label.flat)
    return [_exponent_of(ctx, terms, flat) for flat in _iter_flats(ctx, n)]


# ---------------------------------------------------------------------------
# internals shared with the spectra/graph enumeration loops


def _label_terms(ctx: FieldContext, n: int, label_flat: Sequence[int]) -> list[tuple[int, int]]:
    """Nonzero contributions to tr(A B) = sum_{i,j} a[i,j] * b[j,i].

    Returns (flat position of b[j,i], index of a[i,j]) pairs so the inner
    loop touches only the label's support; rank-r diagonal labels cost r
    additions per matrix.
    """
    terms = []
    for i in range(n):
        for j in range(n):
            a = label_flat[i * n + j]
            if a:
                terms.append((j * n + i, a))
    return terms


def _exponent_of(ctx: FieldContext, terms: Sequence[tuple[int, int]], flat: Sequence[int]) -> int:
    add, mul = ctx._add, ctx._mul
    acc = 0
    for pos, a in terms:
        acc = add[acc][mul[a][flat[pos]]]
    return ctx._trace[acc]
