import math
from fractions import Fraction as F

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from momentratio.family import (
    CFDomainError,
    CFPoleError,
    ConstraintViolation,
    SampleSummary,
    cf_eval,
    cumulants_to_moments,
    empirical_ratios,
    family_moments,
    family_ratio_sequence,
    family_weights,
    moments_to_cumulants,
    sample_mixture,
)
from momentratio.verify import constraint_grid

GRID = constraint_grid()


def mixture_moment_oracle(a, b, k):
    """Integrate x^k against b*delta_0 + wplus*e^{-x} (x>0) + wminus*e^{x} (x<0)."""
    x = sp.symbols("x", real=True)
    a, b = sp.Rational(str(a)), sp.Rational(str(b))
    wplus, wminus = (1 + a - b) / 2, (1 - a - b) / 2
    point = b if k == 0 else 0
    pos = sp.integrate(x**k * sp.exp(-x), (x, 0, sp.oo))
    neg = sp.integrate(x**k * sp.exp(x), (x, -sp.oo, 0))
    return F(str(point + wplus * pos + wminus * neg))


@pytest.mark.parametrize(
    "a, b, weights",
    [
        (1, 0, (0, 0, 1)),
        (0, 0, (0, F(1, 2), F(1, 2))),
        ("1/2", "1/4", (F(1, 4), F(1, 8), F(5, 8))),
    ],
)
def test_family_weights(a, b, weights):
    p = family_weights(a, b)
    assert p.weights() == weights
    assert sum(p.weights()) == 1


@pytest.mark.parametrize(
    "a, b, inequality",
    [(0, "-1/8", "b >= 0"), (2, 0, "1-a-b >= 0"), (-2, 0, "1+a-b >= 0")],
)
def test_family_weights_names_violated_inequality(a, b, inequality):
    with pytest.raises(ConstraintViolation) as info:
        family_weights(a, b)
    assert info.value.inequality == inequality


@pytest.mark.parametrize(
    "a, b, N, expected",
    [
        (1, 0, 5, [1, 1, 1, 1, 1, 1]),
        (0, 0, 4, [1, 0, 1, 0, 1]),
        ("1/3", "1/4", 4, [1, F(1, 3), F(3, 4), F(1, 3), F(3, 4)]),
    ],
)
def test_family_ratio_sequence(a, b, N, expected):
    assert list(family_ratio_sequence(a, b, N)) == expected


@pytest.mark.parametrize(
    "a, b, N, expected",
    [
        (1, 0, 4, [1, 1, 2, 6, 24]),
        (0, 0, 4, [1, 0, 2, 0, 24]),
        ("1/2", "1/2", 3, [1, F(1, 2), 1, 3]),
    ],
)
def test_family_moments(a, b, N, expected):
    got = list(family_moments(a, b, N))
    assert got == expected
    assert got == [mixture_moment_oracle(a, b, k) for k in range(N + 1)]


@pytest.mark.parametrize("a, b", GRID[::7])
def test_ratio_values_set_has_at_most_three_elements(a, b):
    r = family_ratio_sequence(a, b, 20)
    assert set(r) <= {F(1), a, 1 - b}
    assert len(set(r)) <= 3


def test_degenerate_point_is_accepted_and_flagged():
    p = family_weights(0, 1)
    assert p.degenerate
    assert list(family_moments(0, 1, 3)) == [1, 0, 0, 0]


# -- characteristic function ---------------------------------------------------


def test_cf_eval_examples():
    assert cf_eval("1/3", "1/4", 0) == 1
    assert cf_eval(0, 0, 1) == pytest.approx(0.5, abs=1e-15)
    v = cf_eval(1, 0, 1)
    assert v.real == pytest.approx(0.5, abs=1e-15) and v.imag == pytest.approx(0.5, abs=1e-15)


def test_cf_eval_domain_errors():
    with pytest.raises(CFPoleError):
        cf_eval(0, 0, 1j)
    with pytest.raises(CFPoleError):
        cf_eval(0, 0, -1j)
    with pytest.raises(CFDomainError):
        cf_eval(0, 0, 0.3 + 1.2j)
    assert not issubclass(CFDomainError, CFPoleError)


def test_cf_matches_mixture_of_exponentials():
    # b + wplus/(1 - i t) + wminus/(1 + i t), the mixture read off term by term
    for a, b in GRID[::9]:
        p = family_weights(a, b)
        for t in (-3.0, -0.4, 0.7, 2.5, 0.2 + 0.5j):
            direct = float(p.w0) + float(p.wplus) / (1 - 1j * t) + float(p.wminus) / (1 + 1j * t)
            assert abs(cf_eval(a, b, t) - direct) < 1e-14


@pytest.mark.parametrize("a, b", GRID[::4])
def test_cf_bounded_and_hermitian_on_real_line(a, b):
    for t in np.linspace(-50, 50, 401):
        f = cf_eval(a, b, t)
        g = cf_eval(a, b, -t)
        assert abs(f) <= 1 + 1e-12
        assert abs(g.real - f.real) <= 1e-12 and abs(g.imag + f.imag) <= 1e-12


@pytest.mark.parametrize("a, b", GRID[::6])
def test_power_series_matches_cf_near_zero(a, b):
    r = family_ratio_sequence(a, b, 80)
    for t in (-0.5, -0.25, 0.1, 0.5):
        s = sum(1j**k * float(rk) * t**k for k, rk in enumerate(r))
        assert abs(s - cf_eval(a, b, t)) < 1e-9


# -- moments and cumulants ---------------------------------------------------------


def sympy_log_cumulants(moments):
    """Oracle: kappa_k = k! [u^k] log(sum mu_j u^j / j!)."""
    u = sp.symbols("u")
    N = len(moments) - 1
    mgf = sum(sp.Rational(str(m)) * u**j / sp.factorial(j) for j, m in enumerate(moments))
    ser = sp.series(sp.log(mgf), u, 0, N + 1).removeO()
    return [F(str(ser.coeff(u, k) * sp.factorial(k))) for k in range(N + 1)]


@pytest.mark.parametrize(
    "moments, cumulants",
    [
        ([1, 1, 2, 6, 24, 120], [0, 1, 1, 2, 6, 24]),
        ([1, 0, 1, 0, 3], [0, 0, 1, 0, 0]),
        ([1, 2, 4, 8], [0, 2, 0, 0]),
    ],
)
def test_moments_to_cumulants(moments, cumulants):
    assert list(moments_to_cumulants(moments)) == cumulants
    assert sympy_log_cumulants(moments) == cumulants


@pytest.mark.parametrize(
    "cumulants, moments",
    [
        ([0, 1, 1, 2, 6], [1, 1, 2, 6, 24]),
        ([0, 0, 1, 0, 0], [1, 0, 1, 0, 3]),
        ([0, 0, 0, 0], [1, 0, 0, 0]),
    ],
)
def test_cumulants_to_moments(cumulants, moments):
    assert list(cumulants_to_moments(cumulants)) == moments


def test_conversion_errors():
    with pytest.raises(ValueError):
        moments_to_cumulants([2, 1, 1])
    with pytest.raises(ValueError):
        cumulants_to_moments([1, 0, 1])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=9), min_size=1, max_size=24))
def test_moment_cumulant_round_trip(tail):
    m = [F(1), *tail]
    assert list(cumulants_to_moments(moments_to_cumulants(m))) == m


# -- sampler ---------------------------------------------------------------------------


def test_sampler_support():
    s = sample_mixture(1, 0, 5000, seed=3, keep_draws=True)
    assert (s.draws >= 0).all()
    s = sample_mixture(0, 1, 5000, seed=3, keep_draws=True)
    assert (s.draws == 0).all()


def test_sampler_laplace_mean_clt():
    n = 10**6
    s = sample_mixture(0, 0, n, seed=20240601, max_power=2)
    assert abs(s.power_sums[1] / n) < 4 * math.sqrt(2 / n)


def test_sampler_is_deterministic():
    a = sample_mixture("1/2", "1/4", 20000, seed=11)
    b = sample_mixture("1/2", "1/4", 20000, seed=11)
    c = sample_mixture("1/2", "1/4", 20000, seed=12)
    assert a == b
    assert a != c


def test_sampler_branch_frequencies():
    s = sample_mixture("1/2", "1/4", 200_000, seed=5, keep_draws=True)
    x = s.draws
    n = len(x)
    for observed, p in [((x == 0).mean(), 0.25), ((x < 0).mean(), 0.125), ((x > 0).mean(), 0.625)]:
        assert abs(observed - p) < 5 * math.sqrt(p * (1 - p) / n)


def test_sampler_rejects_bad_params():
    with pytest.raises(ConstraintViolation):
        sample_mixture(2, 0, 10, seed=0)


def test_summaries_merge_by_adding_power_sums():
    a = sample_mixture(0, 0, 1000, seed=1, max_power=4)
    b = sample_mixture(0, 0, 500, seed=2, max_power=4)
    merged = a + b
    assert merged.n == 1500
    assert merged.power_sums == tuple(x + y for x, y in zip(a.power_sums, b.power_sums))


def test_empirical_ratios_degenerate():
    s = SampleSummary(n=100, power_sums=(100.0,) + (0.0,) * 6)
    assert empirical_ratios(s, 3) == [(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0)]


def test_empirical_ratios_needs_enough_powers():
    s = SampleSummary(n=10, power_sums=(10.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        empirical_ratios(s, 2)


@pytest.mark.parametrize("a, b, k, exact", [(1, 0, 1, 1.0), ("1/2", "1/4", 2, 0.75)])
def test_empirical_ratios_within_five_standard_errors(a, b, k, exact):
    s = sample_mixture(a, b, 400_000, seed=99, max_power=2 * k)
    est, se = empirical_ratios(s, k)[k]
    assert abs(est - exact) < 5 * se


def test_empirical_standard_error_formula():
    x = np.array([0.0, 1.0, 2.0, 5.0])
    s = SampleSummary(n=4, power_sums=tuple(float((x**k).sum()) for k in range(5)))
    est, se = empirical_ratios(s, 2)[2]
    assert est == pytest.approx((x**2).mean() / 2)
    assert se == pytest.approx((x**2).std(ddof=1) / (2 * 2))
    assert math.isfinite(se)
