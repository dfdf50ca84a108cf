from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protodirac.ring import Poly, parse_poly, pdiff, poly_arith
from strategies import polys

q1, q2 = Poly.var(1, 2), Poly.var(2, 2)


def test_addition_of_equal_terms():
    assert poly_arith(q1, q1, "add") == 2 * q1


def test_difference_of_squares():
    assert poly_arith(q1 + 1, q1 - 1, "mul") == q1 * q1 - 1


def test_rational_scaling():
    assert poly_arith(q2 * Fraction(1, 2), Poly.const(Fraction(1, 3), 2), "mul") == q2 * Fraction(1, 6)


def test_pdiff_examples():
    assert pdiff(q1 * q2, 1) == q2
    assert pdiff(Poly.const(7, 2), 2).is_zero()
    assert pdiff(q1 ** 2, 1) == 2 * q1


def test_pdiff_rejects_bad_index():
    with pytest.raises(ValueError):
        pdiff(q1, 3)


def test_mismatched_variable_counts_rejected():
    with pytest.raises(ValueError):
        poly_arith(q1, Poly.var(1, 3), "add")


def test_unknown_operation_rejected():
    with pytest.raises(ValueError):
        poly_arith(q1, q2, "div")


def test_zero_coefficients_are_dropped():
    p = Poly(2, {(1, 0): 0, (0, 1): 3})
    assert p.terms == {(0, 1): Fraction(3)}
    assert (q1 - q1).is_zero()


def test_floats_are_refused():
    with pytest.raises((TypeError, ValueError)):
        Poly.const(0.5, 1)


@pytest.mark.parametrize("text", ["q1*q2 - 1/2*q2^2 + 3", "-q1 + q2", "0", "-7/3", "q1^3*q2"])
def test_text_round_trip(text):
    p = parse_poly(text, 2)
    assert parse_poly(p.to_text(), 2) == p


@pytest.mark.parametrize("bad", ["", "q3", "2q1", "q1**2", "1/0"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_poly(bad, 2)


@settings(max_examples=60, deadline=None)
@given(polys(2), polys(2), polys(2))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly.zero(2)


@settings(max_examples=60, deadline=None)
@given(polys(2), polys(2), st.integers(1, 2))
def test_pdiff_leibniz(a, b, i):
    assert pdiff(a * b, i) == pdiff(a, i) * b + a * pdiff(b, i)


@settings(max_examples=60, deadline=None)
@given(polys(3, max_degree=3, max_terms=5))
def test_text_round_trip_property(p):
    assert parse_poly(p.to_text(), 3) == p


@settings(max_examples=40, deadline=None)
@given(polys(2), polys(2))
def test_json_round_trip(a, b):
    p = a * b
    assert Poly.from_json(p.to_json(), 2) == p
