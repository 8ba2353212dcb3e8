from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from flowpoly.errors import NonInvertibleError, PoleError
from flowpoly.exactnum import (
    HalfGamma, TruncatedPoly, divide_one_minus, gamma_half, geometric_inverse, interpolate,
    poly_mul_truncated, prefix_sums, series_coefficient,
)


def test_gamma_half_values():
    assert gamma_half(1) == HalfGamma(Fraction(1), 1)
    assert gamma_half(4) == HalfGamma(Fraction(1), 0)
    assert gamma_half(5) == HalfGamma(Fraction(3, 4), 1)
    assert gamma_half(12).to_fraction() == 120


@pytest.mark.parametrize("two_k", [0, -1, -4])
def test_gamma_half_pole(two_k):
    with pytest.raises(PoleError):
        gamma_half(two_k)


@given(st.integers(1, 60))
def test_gamma_recurrence(two_k):
    # G(z + 1) = z G(z)
    assert gamma_half(two_k + 2) == gamma_half(two_k) * HalfGamma(Fraction(two_k, 2), 0)


def test_truncated_multiplication():
    one_plus_x = TruncatedPoly(1, (1,), {(0,): 1, (1,): 1})
    assert poly_mul_truncated(one_plus_x, one_plus_x).coeffs == {(0,): 1, (1,): 2}
    assert poly_mul_truncated(one_plus_x, TruncatedPoly.one(1, (1,))) == one_plus_x


def test_geometric_series_times_one_minus_x():
    geo = geometric_inverse([((1,), 1)], (3,))
    assert geo.coeffs == {(k,): 1 for k in range(4)}
    one_minus_x = TruncatedPoly(1, (3,), {(0,): 1, (1,): -1})
    assert poly_mul_truncated(geo, one_minus_x).coeffs == {(0,): 1}


def test_geometric_inverse_two_variables():
    inv = geometric_inverse([((1, 0), 1), ((0, 1), 1)], (1, 1))
    assert inv.coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 2}
    assert geometric_inverse([], (2,)).coeffs == {(0,): 1}


def test_constant_linear_form_rejected():
    with pytest.raises(NonInvertibleError):
        geometric_inverse([((0,), 1)], (2,))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.integers(0, 8))
def test_powers_of_geometric_series(power, k):
    p = divide_one_minus(TruncatedPoly.one(1, (k,)), [((1,), 1)], power)
    assert p.coefficient((k,)) == comb(k + power - 1, power - 1)
    assert series_coefficient([([((1,), 1)], power)], (k,)) == comb(k + power - 1, power - 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6))
def test_series_coefficient_two_variables(i, j):
    # (1 - x - y)^(-1) has coefficient C(i + j, i) at x^i y^j
    assert series_coefficient([([((1, 0), 1), ((0, 1), 1)], 1)], (i, j)) == comb(i + j, i)


def test_prefix_sums():
    assert prefix_sums((1, 3, -2)) == (1, 4, 2)


def test_interpolate():
    p = interpolate([(1, 2), (2, 3), (3, 4)])
    assert p.coeffs == (1, 1) and str(p) == "t + 1"
    q = interpolate([(0, 1), (1, 3), (2, 6)])
    assert q.coeffs == (1, Fraction(3, 2), Fraction(1, 2))
    assert q(4) == 15
