"""Field arithmetic: axioms, trace properties, construction errors."""

import itertools
import random

import pytest

from unitgraph import (
    ContextMismatchError,
    NonPrimeError,
    ReducibleModulusError,
    UnsupportedFieldError,
    field,
    field_of_order,
    prime_power,
)
from unitgraph.fields import _parse_modulus_table, default_modulus_table, poly_str

EXHAUSTIVE_ORDERS = [2, 3, 4, 5, 7, 8, 9]
SAMPLED_ORDERS = [16, 25, 27]


def test_construction_basics():
    f2 = field(2)
    assert (f2.p, f2.k, f2.q) == (2, 1, 2)
    f4 = field(2, 2, [1, 1, 1])
    assert f4.q == 4
    # same structural identity whether the modulus came from the table
    assert f4 == field(2, 2)
    assert hash(f4) == hash(field(2, 2))


def test_construction_errors():
    with pytest.raises(NonPrimeError):
        field(6)
    with pytest.raises(ReducibleModulusError):
        field(2, 2, [0, 0, 1])  # x^2 = x * x
    with pytest.raises(ReducibleModulusError):
        field(3, 2, [2, 0, 1])  # x^2 - 1 = (x-1)(x+1)
    with pytest.raises(UnsupportedFieldError):
        field(7, 2)  # not in the packaged table, no modulus given
    with pytest.raises(UnsupportedFieldError):
        field(2, 5, [1, 0, 1, 0, 0, 1])  # degree 5 check unsupported
    with pytest.raises(ValueError):
        field(2, 0)


def test_field_axioms_exhaustive():
    for q in EXHAUSTIVE_ORDERS:
        ctx = field_of_order(q)
        elems = list(ctx.elements())
        for a, b, c in itertools.product(elems, repeat=3):
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c


def test_field_axioms_sampled():
    rng = random.Random(20240809)
    for q in SAMPLED_ORDERS:
        ctx = field_of_order(q)
        elems = list(ctx.elements())
        for _ in range(300):
            a, b, c = (rng.choice(elems) for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * b == b * a
            assert a * (b + c) == a * b + a * c


def test_inverses():
    for q in EXHAUSTIVE_ORDERS + SAMPLED_ORDERS:
        ctx = field_of_order(q)
        one = ctx.one()
        for a in ctx.elements():
            if a.is_zero():
                with pytest.raises(ZeroDivisionError):
                    a.inverse()
            else:
                assert a * a.inverse() == one
    assert field(3).element(2).inverse().index == 2  # 2*2 = 4 = 1 mod 3


def test_extension_multiplication_example():
    f4 = field(2, 2)
    x = f4.element([0, 1])
    assert (x * x).coeffs == (1, 1)  # x^2 reduces to x + 1


def test_trace_examples():
    assert field(2).element(1).trace() == 1  # k = 1: trace is the identity
    f4 = field(2, 2)
    assert f4.element([0, 1]).trace() == 1  # x + x^2 = x + (x+1) = 1
    assert f4.zero().trace() == 0


def test_trace_additive_exhaustive():
    for q in EXHAUSTIVE_ORDERS:
        ctx = field_of_order(q)
        for a, b in itertools.product(ctx.elements(), repeat=2):
            assert (a + b).trace() == (a.trace() + b.trace()) % ctx.p


def test_trace_prime_subfield_linearity():
    # multipliers from the prime subfield scale the trace mod p; the
    # pull-out is only valid for such multipliers, so that is all we claim
    for q in EXHAUSTIVE_ORDERS + SAMPLED_ORDERS:
        ctx = field_of_order(q)
        for c in range(ctx.p):
            ce = ctx.element([c] + [0] * (ctx.k - 1))
            for a in ctx.elements():
                assert (ce * a).trace() == (c * a.trace()) % ctx.p


def test_trace_fibers_balanced():
    # surjectivity with fibers of size exactly q/p
    for q in EXHAUSTIVE_ORDERS + SAMPLED_ORDERS:
        ctx = field_of_order(q)
        fibers = [0] * ctx.p
        for a in ctx.elements():
            fibers[a.trace()] += 1
        assert fibers == [ctx.q // ctx.p] * ctx.p


def test_enumeration_order():
    assert [e.index for e in field(2).elements()] == [0, 1]
    assert [e.index for e in field(3).elements()] == [0, 1, 2]
    # constant term varies fastest: 0, 1, x, x+1
    assert [e.coeffs for e in field(2, 2).elements()] == [(0, 0), (1, 0), (0, 1), (1, 1)]


def test_context_mismatch():
    a = field(2).one()
    b = field(3).one()
    with pytest.raises(ContextMismatchError):
        a + b
    with pytest.raises(ContextMismatchError):
        a * b


def test_element_constructors_and_repr():
    f9 = field(3, 2)
    e = f9.element([2, 1])
    assert f9.element(e.index) == e
    with pytest.raises(ValueError):
        f9.element([1])  # wrong coefficient count
    with pytest.raises(ValueError):
        f9.element(9)  # index out of range
    assert poly_str((2, 1)) == "x+2"
    assert poly_str((0, 0)) == "0"
    assert "GF(3^2)" in repr(e)


def test_packaged_modulus_table():
    table = default_modulus_table()
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]:
        assert (p, k) in table
        field(p, k)  # builds and validates


def test_modulus_table_parsing(tmp_path):
    good = tmp_path / "good.txt"
    good.write_text("# comment\n2 2 1,1,1\n\n3 2 1,0,1\n")
    table = _parse_modulus_table(good.read_text())
    assert table[(2, 2)] == (1, 1, 1)
    with pytest.raises(ValueError):
        _parse_modulus_table("2 2 1,1\n")  # wrong coefficient count
    with pytest.raises(ValueError):
        _parse_modulus_table("2 two 1,1,1\n")


def test_custom_modulus_table_roundtrip(tmp_path):
    # any valid table works; 9 = 3^2 with a different irreducible modulus
    alt = tmp_path / "alt.txt"
    alt.write_text("3 2 2,1,1\n")  # x^2 + x + 2, no roots mod 3
    from unitgraph import load_modulus_table

    table = load_modulus_table(str(alt))
    ctx = field(3, 2, modulus_table=table)
    assert ctx.modulus == (2, 1, 1)
    # trace is basis independent: fibers still balanced
    fibers = [0] * 3
    for a in ctx.elements():
        fibers[a.trace()] += 1
    assert fibers == [3, 3, 3]


def test_prime_power():
    assert prime_power(8) == (2, 3)
    assert prime_power(27) == (3, 3)
    assert prime_power(97) == (97, 1)
    assert prime_power(12) is None
    assert prime_power(1) is None


def test_field_of_order():
    assert field_of_order(9).q == 9
    with pytest.raises(ValueError):
        field_of_order(6)
