"""Quadrature engine: analytic integral suite, error honesty, nesting."""

import math

import pytest

from dualdisp.quadrature import (QuadratureError, QuadratureSettings,
                                 integrate_nested, integrate_semi_infinite,
                                 tighten)

TIGHT = QuadratureSettings(rel_tol=1e-12, abs_tol=1e-300,
                           transform="exp_decay")

# (integrand, exact value, transform, scale) -- all analytic.
ANALYTIC_SUITE = [
    (lambda x: math.exp(-x), 1.0, "exp_decay", 1.0),
    (lambda x: x**3 * math.exp(-x) / (1.0 - 0.0 * math.exp(-x)),
     6.0, "exp_decay", 1.0),
    (lambda x: 1.0 / (1.0 + x**2), math.pi / 2.0, "none", 1.0),
    (lambda x: math.exp(-2.0 * x), 0.5, "sinh", 0.5),
    (lambda x: x * math.exp(-x), 1.0, "sinh", 1.0),
    (lambda x: math.exp(-x) * math.cos(x), 0.5, "exp_decay", 1.0),
]


def test_exponential_unit_integral():
    value, err = integrate_semi_infinite(lambda x: math.exp(-x), TIGHT)
    assert abs(value - 1.0) < 1e-12


def test_gamma_four():
    def f(x):
        return x**3 * math.exp(-x) / (1.0 - 0.0 * math.exp(-x))

    value, _ = integrate_semi_infinite(f, TIGHT)
    assert abs(value - 6.0) < 6 * 1e-12


def test_lorentzian():
    settings = QuadratureSettings(rel_tol=1e-12, abs_tol=1e-300,
                                  transform="none")
    value, _ = integrate_semi_infinite(lambda x: 1.0 / (1.0 + x**2), settings)
    assert abs(value - math.pi / 2.0) < 1e-10


def test_settings_validation():
    with pytest.raises(ValueError):
        QuadratureSettings(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSettings(abs_tol=-1.0)
    with pytest.raises(ValueError):
        QuadratureSettings(max_subdivisions=0)
    with pytest.raises(ValueError):
        QuadratureSettings(transform="chebyshev")


def test_scale_must_be_positive():
    with pytest.raises(ValueError):
        integrate_semi_infinite(lambda x: math.exp(-x), TIGHT, scale=0.0)


def test_error_estimates_honest_on_analytic_suite():
    for f, exact, transform, scale in ANALYTIC_SUITE:
        settings = QuadratureSettings(rel_tol=1e-10, abs_tol=1e-300,
                                      transform=transform)
        value, err = integrate_semi_infinite(f, settings, scale=scale)
        true_err = abs(value - exact)
        assert true_err <= 5.0 * err, (f, true_err, err)


def test_bit_reproducible():
    for f, _, transform, scale in ANALYTIC_SUITE:
        settings = QuadratureSettings(rel_tol=1e-10, abs_tol=1e-300,
                                      transform=transform)
        first = integrate_semi_infinite(f, settings, scale=scale)
        second = integrate_semi_infinite(f, settings, scale=scale)
        assert first == second


def test_monotone_refinement():
    # Halving rel_tol never makes the true error worse (beyond rounding).
    for f, exact, transform, scale in ANALYTIC_SUITE:
        rel = 1e-4
        previous = None
        while rel > 1e-11:
            settings = QuadratureSettings(rel_tol=rel, abs_tol=1e-300,
                                          transform=transform)
            value, _ = integrate_semi_infinite(f, settings, scale=scale)
            true_err = abs(value - exact) / max(abs(exact), 1.0)
            if previous is not None:
                assert true_err <= previous + 1e-14
            previous = true_err
            rel /= 2.0


def test_nonconvergence_carries_best_value():
    # A single Gauss-Kronrod panel cannot resolve this; the failure must
    # still report the best value and estimate found.
    settings = QuadratureSettings(rel_tol=1e-13, abs_tol=1e-300,
                                  max_subdivisions=1, transform="none")

    def nasty(x):
        return math.cos(40.0 * x) ** 2 / (1.0 + x**2) * math.sin(7.0 * x)

    with pytest.raises(QuadratureError) as excinfo:
        integrate_semi_infinite(nasty, settings)
    assert excinfo.value.value is not None
    assert excinfo.value.error_estimate is not None


def test_nested_separable():
    value, err = integrate_nested(
        lambda x, y: math.exp(-x) * math.exp(-y),
        TIGHT, tighten(TIGHT, 10.0))
    assert abs(value - 1.0) < 1e-10


def test_nested_lifshitz_energy_form():
    # Ideal-mirror interaction energy per unit area at unit gap:
    # (1/4pi^2) Int dxi Int dk k * 2 ln(1 - e^{-2 kappa}) = -pi^2/720.
    def f2(xi, k):
        kappa = math.hypot(xi, k)
        return k * 2.0 * math.log1p(-math.exp(-2.0 * kappa))

    outer = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-300,
                               transform="exp_decay")
    inner = QuadratureSettings(rel_tol=1e-12, abs_tol=1e-300,
                               transform="sinh")
    value, err = integrate_nested(f2, outer, inner, scale_outer=0.5,
                                  scale_inner=lambda xi: max(xi, 0.5))
    energy = value / (4.0 * math.pi**2)
    exact = -math.pi**2 / 720.0
    assert abs(energy - exact) < 1e-9 * abs(exact)


def test_nested_inner_loosening_consistent_with_estimates():
    def f2(xi, k):
        kappa = math.hypot(xi, k)
        return k * kappa * math.exp(-2.0 * kappa) / (1.0 - math.exp(-2.0 * kappa))

    outer = QuadratureSettings(rel_tol=1e-10, abs_tol=1e-300,
                               transform="exp_decay")
    inner_tight = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-300,
                                     transform="sinh")
    inner_loose = tighten(inner_tight, 0.1)  # 10x looser
    v1, e1 = integrate_nested(f2, outer, inner_tight, scale_outer=0.5,
                              scale_inner=lambda xi: max(xi, 0.5))
    v2, e2 = integrate_nested(f2, outer, inner_loose, scale_outer=0.5,
                              scale_inner=lambda xi: max(xi, 0.5))
    assert abs(v1 - v2) <= e1 + e2


def test_tighten():
    s = tighten(TIGHT, 10.0)
    assert s.rel_tol == TIGHT.rel_tol / 10.0
    assert s.abs_tol == TIGHT.abs_tol / 10.0
    assert s.transform == TIGHT.transform
