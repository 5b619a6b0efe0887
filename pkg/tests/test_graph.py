"""Ground-truth graph: structure invariants, eigenvector verification."""

import io
import itertools

import pytest

from unitgraph import (
    EigenvectorMismatchError,
    Matrix,
    SizeTooLargeError,
    build_graph,
    eigenvalue_charsum,
    field,
    gl_order,
    is_simple,
    rank_representative,
    spectrum_closed_form,
    spectrum_from_graph,
    verify_eigenvector,
)
from unitgraph.graph import CayleyGraph, export_edges

F2 = field(2)
F3 = field(3)


def brute_rank1_charsum_2x2_mod3():
    """48-term independent oracle: sum of chi(b00) over invertible 2x2 mod 3."""
    counts = [0, 0, 0]
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3:
            counts[a] += 1
    assert counts[1] == counts[2]
    return counts[0] - counts[1]


def test_build_graph_2x2_mod2():
    g = build_graph(F2, 2)
    assert g.order == 16
    assert g.degree == 6  # |GL_2(F_2)| = (4-1)(4-2)
    assert all(row.bit_count() == 6 for row in g.rows)
    assert is_simple(g)


def test_build_graph_3x3_mod2():
    g = build_graph(F2, 3)
    assert g.order == 512
    assert g.degree == gl_order(2, 3)
    assert is_simple(g)
    assert not g.has_edge(0, 0)
    # vertex 0 is the zero matrix: neighbors are exactly the invertibles
    assert g.rows[0].bit_count() == 168


def test_simplicity_detects_loops_and_asymmetry():
    g = build_graph(F2, 2)
    looped = CayleyGraph(F2, 2, (g.rows[0] | 1,) + g.rows[1:], g._flats)
    assert not is_simple(looped)
    j = (g.rows[0] & -g.rows[0]).bit_length() - 1  # drop one direction of an edge
    asym = CayleyGraph(F2, 2, (g.rows[0] ^ (1 << j),) + g.rows[1:], g._flats)
    assert not is_simple(asym)


def test_verify_eigenvector_trivial_label():
    g = build_graph(F2, 3)
    assert verify_eigenvector(g, Matrix.zero(F2, 3)) == 168


def test_verify_eigenvector_rank1_label():
    g = build_graph(F2, 3)
    assert verify_eigenvector(g, rank_representative(F2, 3, 1)) == -24


def test_verify_eigenvector_2x2_mod3_independent_oracle():
    g = build_graph(F3, 2)
    lam = verify_eigenvector(g, rank_representative(F3, 2, 1))
    assert lam == brute_rank1_charsum_2x2_mod3() == -6


def test_verify_eigenvector_rejects_tampering():
    g = build_graph(F2, 2)
    # remove one edge symmetrically: vectors no longer satisfy A v = lambda v
    j = (g.rows[0] & -g.rows[0]).bit_length() - 1
    rows = list(g.rows)
    rows[0] ^= 1 << j
    rows[j] ^= 1
    tampered = CayleyGraph(F2, 2, tuple(rows), g._flats)
    with pytest.raises(EigenvectorMismatchError) as err:
        verify_eigenvector(tampered, Matrix.zero(F2, 2))
    assert err.value.coordinate == 0


def test_verify_eigenvector_label_mismatch():
    g = build_graph(F2, 2)
    with pytest.raises(ValueError):
        verify_eigenvector(g, Matrix.zero(F3, 2))


def test_spectrum_from_graph_2x2_mod2():
    # 16-vertex graph: (6, 1), (-2, 9), (2, 6); 6 - 18 + 12 = 0
    s = spectrum_from_graph(build_graph(F2, 2))
    assert [(l.eigenvalue, l.multiplicity) for l in s.lines] == [(6, 1), (-2, 9), (2, 6)]


def test_spectrum_from_graph_matches_closed_form():
    s = spectrum_from_graph(build_graph(F2, 3))
    assert s.lines == spectrum_closed_form(2).lines


def test_spectrum_from_graph_3x3_mod3_skipped_by_cap():
    with pytest.raises(SizeTooLargeError):
        build_graph(F3, 3)  # 19683 vertices, default cap 4096


def test_label_charsums_sum_to_zero():
    # column sums of the character table against the group indicator
    from unitgraph.matrices import enumerate_matrices

    for ctx, n in [(F2, 2), (F3, 2), (F2, 3)]:
        total = sum(eigenvalue_charsum(label) for label in enumerate_matrices(ctx, n))
        assert total == 0


def test_vertex_accessor_matches_enumeration():
    from unitgraph.matrices import matrix_from_index

    g = build_graph(F3, 2)
    for i in (0, 1, 40, 80):
        assert g.vertex(i) == matrix_from_index(F3, 2, i)


def test_edges_and_export():
    g = build_graph(F2, 2)
    edges = list(g.edges())
    assert len(edges) == 16 * 6 // 2
    assert all(i < j for i, j in edges)
    assert all(g.has_edge(i, j) and g.has_edge(j, i) for i, j in edges)
    buf = io.StringIO()
    count = export_edges(g, buf)
    lines = buf.getvalue().splitlines()
    assert count == len(edges) == len(lines)
    assert lines[0] == f"{edges[0][0]} {edges[0][1]}"
