from fractions import Fraction as F

import pytest
import sympy as sp
from sympy import QQ, ring
from sympy.polys.ring_series import rs_log
from hypothesis import given, settings
from hypothesis import strategies as st

from momentratio.series import (
    NormalizationError,
    PoleAtOriginError,
    Polynomial,
    TruncatedSeries,
    poly_derivative,
    poly_gcd,
    poly_mul,
    series_exp,
    series_expand_rational,
    series_log,
    series_mul,
    to_rational,
)

from conftest import polynomials, unit_series

t = sp.symbols("t")


def sympy_coeffs(expr, N):
    """Independent oracle: Taylor coefficients of a sympy expression at 0."""
    poly = sp.series(expr, t, 0, N + 1).removeO()
    return [F(str(poly.coeff(t, k))) for k in range(N + 1)]


P3 = Polynomial(("6", "51/5", "27/5", "1/5"))


def test_to_rational_parses_decimals_exactly():
    assert to_rational("5.1") == F(51, 10)
    assert to_rational("0.1") == F(1, 10)
    assert to_rational("-3/4") == F(-3, 4)
    assert to_rational(7) == 7


def test_to_rational_rejects_floats():
    with pytest.raises(TypeError):
        to_rational(0.1)


def test_polynomial_trims_and_zero_degree():
    assert Polynomial((1, 2, 0, 0)).coeffs == (1, 2)
    assert Polynomial((0, 0)).degree is None
    assert Polynomial(()).is_zero()
    assert Polynomial((3,)).degree == 0


@pytest.mark.parametrize(
    "p, q, expected",
    [
        ((1, 1), (1, 1), (1, 2, 1)),
        ((1, -1), (1, 1, 1), (1, 0, 0, -1)),
        (P3.coeffs, (1,), P3.coeffs),
    ],
)
def test_poly_mul_examples(p, q, expected):
    assert poly_mul(Polynomial(p), Polynomial(q)) == Polynomial(expected)


@pytest.mark.parametrize(
    "p, expected",
    [
        (P3.coeffs, ("51/5", "54/5", "3/5")),
        ((7,), ()),
        ((0, 0, 1), (0, 2)),
    ],
)
def test_poly_derivative_examples(p, expected):
    assert poly_derivative(Polynomial(p)) == Polynomial(expected)


def test_divmod_and_gcd():
    p = Polynomial((1, 0, -1))  # (1-t)(1+t)
    q, r = p.divmod(Polynomial((1, 1)))
    assert q == Polynomial((1, -1)) and r.is_zero()
    g = poly_gcd(Polynomial((1, 0, 0, -1)), Polynomial((1, 0, -1)))
    assert g == Polynomial((1, -1))


@pytest.mark.parametrize(
    "P, Q, N, expected",
    [
        ((1,), (1, -1), 4, [1, 1, 1, 1, 1]),
        ((1, "1/3", "-1/4"), (1, 0, -1), 4, [1, F(1, 3), F(3, 4), F(1, 3), F(3, 4)]),
        (
            (0, 0, -6, 0, "-5.1", 0, "-0.1"),
            (1, 0, 1),
            10,
            [0, 0, -6, 0, F(9, 10), 0, -1, 0, 1, 0, -1],
        ),
    ],
)
def test_series_expand_rational_examples(P, Q, N, expected):
    P, Q = Polynomial(P), Polynomial(Q)
    got = series_expand_rational(P, Q, N)
    assert list(got) == expected
    oracle = sympy_coeffs(sum(sp.Rational(str(c)) * t**k for k, c in enumerate(P.coeffs)) /
                          sum(sp.Rational(str(c)) * t**k for k, c in enumerate(Q.coeffs)), N)
    assert list(got) == oracle


def test_series_expand_rational_cross_checks_family_pattern():
    from momentratio.family import family_ratio_sequence

    got = series_expand_rational(Polynomial((1, "1/3", "-1/4")), Polynomial((1, 0, -1)), 4)
    assert list(got) == list(family_ratio_sequence("1/3", "1/4", 4))


def test_series_expand_rational_pole_at_origin():
    with pytest.raises(PoleAtOriginError):
        series_expand_rational(Polynomial((1,)), Polynomial((0, 1)), 3)


@pytest.mark.parametrize(
    "f, g, expected",
    [
        ([1, 1, 1], [1, -1, 0], [1, 0, 0]),
        ([2, "1/3", 5], [1, 0, 0, 0], [2, F(1, 3), 5]),
        ([0, 1, 0], [0, 1, 0], [0, 0, 1]),
    ],
)
def test_series_mul_examples(f, g, expected):
    assert list(series_mul(TruncatedSeries(f), TruncatedSeries(g))) == expected


def test_series_mul_uses_minimum_order():
    out = series_mul(TruncatedSeries([1, 1, 1, 1, 1]), TruncatedSeries([1, 2]))
    assert out.order == 1


@pytest.mark.parametrize(
    "f, expr",
    [
        ([1, 1, 0, 0], sp.log(1 + t)),
        ([1, 1, 1, 1], -sp.log(1 - t)),
        ([1, 1, F(1, 2), F(1, 6)], t),
    ],
)
def test_series_log_examples(f, expr):
    got = series_log(TruncatedSeries(f), 3)
    assert list(got) == sympy_coeffs(expr, 3)


def test_series_log_examples_frozen():
    assert list(series_log(TruncatedSeries([1, 1, 0, 0]))) == [0, 1, F(-1, 2), F(1, 3)]
    assert list(series_log(TruncatedSeries([1, 1, 1, 1]))) == [0, 1, F(1, 2), F(1, 3)]
    assert list(series_log(TruncatedSeries([1, 1, F(1, 2), F(1, 6)]))) == [0, 1, 0, 0]


def test_series_log_rejects_unnormalized():
    with pytest.raises(NormalizationError):
        series_log(TruncatedSeries([2, 1]))


@settings(max_examples=60, deadline=None)
@given(unit_series())
def test_exp_inverts_log(f):
    assert series_exp(series_log(f)) == f


@settings(max_examples=40, deadline=None)
@given(unit_series(max_order=12))
def test_log_matches_sympy_ring_series(f):
    R, x = ring("x", QQ)
    p = sum((QQ(c.numerator, c.denominator) * x**k for k, c in enumerate(f)), R(0))
    terms = dict(rs_log(p, x, f.order + 1).terms())
    expected = [F(int(c.numerator), int(c.denominator)) for c in (terms.get((k,), QQ(0)) for k in range(f.order + 1))]
    assert list(series_log(f)) == expected


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials(max_degree=4), st.integers(0, 12))
def test_expand_rational_times_denominator_gives_numerator(P, Q, N):
    if Q[0] == 0:
        Q = Q + Polynomial((1,))
    s = series_expand_rational(P, Q, N)
    back = series_mul(s, TruncatedSeries.from_polynomial(Q, N))
    assert list(back) == [P[k] for k in range(N + 1)]


@settings(max_examples=60, deadline=None)
@given(polynomials(), polynomials(), polynomials())
def test_poly_mul_commutative_associative(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    if not p.is_zero() and not q.is_zero():
        assert (p * q).degree == p.degree + q.degree


@settings(max_examples=30, deadline=None)
@given(unit_series(max_order=10))
def test_pipeline_is_deterministic(f):
    assert list(series_log(f)) == list(series_log(TruncatedSeries(f.coeffs)))
