import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from equirange.errors import DegenerateAbscissaError, InsufficientDataError
from equirange.fit import beta_from_alpha, fit_power_law


def test_exact_square_root_law():
    r10 = math.sqrt(10)
    fit = fit_power_law([(1, 1), (10, r10), (100, 10), (1000, 10 * r10)])
    assert fit.exponent == pytest.approx(0.5, abs=1e-12)
    assert fit.log_amplitude == pytest.approx(0.0, abs=1e-12)
    assert fit.exponent_se == pytest.approx(0.0, abs=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert (fit.n_points, fit.dropped_points) == (4, 0)


def test_constant_data():
    fit = fit_power_law([(10, 2), (100, 2), (1000, 2)])
    assert fit.exponent == pytest.approx(0.0, abs=1e-12)
    assert fit.log_amplitude == pytest.approx(math.log10(2), abs=1e-12)
    assert 0 <= fit.r_squared <= 1


def test_noisy_recovery():
    rng = np.random.default_rng(7)
    n = np.unique(np.round(np.logspace(1, 5, 50)).astype(int))
    y = 3 * n**0.4 * 10 ** rng.normal(0, 0.05, n.size)
    fit = fit_power_law(zip(n, y))
    assert abs(fit.exponent - 0.4) <= 3 * fit.exponent_se
    assert fit.exponent_se > 0


def test_zeros_dropped_and_counted():
    fit = fit_power_law([(1, 0), (2, 0), (10, 1), (100, 10), (1000, 100)])
    assert fit.dropped_points == 2
    assert fit.n_points == 3
    assert fit.exponent == pytest.approx(1.0, abs=1e-12)


def test_window_excludes_small_n_without_counting_them():
    pts = [(1, 0), (10, 50.0), (100, 10.0), (1000, 100.0)]
    fit = fit_power_law(pts, min_n=100)
    assert (fit.n_points, fit.dropped_points, fit.fit_window_min_n) == (2, 0, 100)
    assert fit.exponent == pytest.approx(1.0, abs=1e-12)
    assert fit.exponent_se == 0.0


def test_insufficient_and_degenerate():
    with pytest.raises(InsufficientDataError):
        fit_power_law([(10, 1.0)])
    with pytest.raises(InsufficientDataError):
        fit_power_law([(10, 1.0), (100, 0.0)])
    with pytest.raises(DegenerateAbscissaError):
        fit_power_law([(10, 1.0), (10, 2.0), (10, 3.0)])


def test_duplicate_abscissae_allowed():
    fit = fit_power_law([(10, 1.0), (10, 1.2), (100, 10.0)])
    assert fit.n_points == 3


def brute_force_se(xs, ys):
    m = len(xs)
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    sxx = sum((x - xbar) ** 2 for x in xs)
    b = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sxx
    a = ybar - b * xbar
    ssr = sum((y - a - b * x) ** 2 for x, y in zip(xs, ys))
    return b, a, math.sqrt(ssr / (m - 2) / sxx)


def test_se_matches_brute_force_and_scipy():
    pts = [(10, 3.0), (20, 5.0), (50, 6.5), (100, 11.0), (300, 14.0), (1000, 30.0)]
    fit = fit_power_law(pts)
    xs = [math.log10(n) for n, _ in pts]
    ys = [math.log10(y) for _, y in pts]
    b, a, se = brute_force_se(xs, ys)
    assert fit.exponent == pytest.approx(b, abs=1e-12)
    assert fit.log_amplitude == pytest.approx(a, abs=1e-12)
    assert fit.exponent_se == pytest.approx(se, abs=1e-12)
    ref = stats.linregress(xs, ys)
    assert fit.exponent_se == pytest.approx(ref.stderr, abs=1e-12)
    assert fit.r_squared == pytest.approx(ref.rvalue**2, abs=1e-12)


def test_weighted_fit_matches_explicit_wls():
    pts = [(10, 3.0), (20, 5.0), (50, 6.5), (100, 11.0), (300, 14.0)]
    w = [1.0, 4.0, 2.0, 0.5, 3.0]
    fit = fit_power_law(pts, weights=w)
    x = np.log10([n for n, _ in pts])
    y = np.log10([v for _, v in pts])
    X = np.column_stack([np.ones_like(x), x])
    W = np.diag(w)
    cov = np.linalg.inv(X.T @ W @ X)
    coef = cov @ X.T @ W @ y
    resid = y - X @ coef
    s2 = resid @ W @ resid / (len(x) - 2)
    assert fit.exponent == pytest.approx(coef[1], abs=1e-12)
    assert fit.log_amplitude == pytest.approx(coef[0], abs=1e-12)
    assert fit.exponent_se == pytest.approx(math.sqrt(s2 * cov[1, 1]), abs=1e-12)


@pytest.mark.parametrize("alpha, beta", [(0.4, -0.6), (1.0, 0.0), (0.3763, -0.6237)])
def test_beta_from_alpha(alpha, beta):
    fit = fit_power_law([(1, 1.0), (10, 10.0**alpha)])
    assert beta_from_alpha(fit) == pytest.approx(beta, abs=1e-12)


exponents = st.floats(-2, 2, allow_nan=False)
amplitudes = st.floats(1e-3, 1e3)
abscissae = st.lists(st.integers(1, 10**6), min_size=3, max_size=30, unique=True)


@given(exponents, amplitudes, abscissae)
def test_exact_recovery(p, c, ns):
    fit = fit_power_law([(n, c * n**p) for n in ns])
    assert abs(fit.exponent - p) <= 1e-10
    assert fit.r_squared >= 1 - 1e-10


@given(abscissae, st.data())
def test_relative_series_shifts_slope_by_one(ns, data):
    ys = data.draw(st.lists(st.floats(0.1, 1e4), min_size=len(ns), max_size=len(ns)))
    a = fit_power_law(zip(ns, ys))
    b = fit_power_law((n, y / n) for n, y in zip(ns, ys))
    assert abs((b.exponent - a.exponent) + 1) <= 1e-10
    assert abs(b.exponent_se - a.exponent_se) <= 1e-10


@given(abscissae, st.floats(1e-3, 1e3), st.data())
def test_scale_invariance(ns, c, data):
    ys = data.draw(st.lists(st.floats(0.1, 1e4), min_size=len(ns), max_size=len(ns)))
    a = fit_power_law(zip(ns, ys))
    b = fit_power_law((n, c * y) for n, y in zip(ns, ys))
    assert abs(b.exponent - a.exponent) <= 1e-10
    assert abs(b.exponent_se - a.exponent_se) <= 1e-10
    assert abs(b.log_amplitude - a.log_amplitude - math.log10(c)) <= 1e-10
