"""Deterministic adaptive quadrature for semi-infinite integrals.

All integrals in this package run over (0, inf): imaginary frequency on the
outer axis, transverse momentum on the inner one.  The integrands decay
exponentially, so a variable transform is applied before handing the job to
QUADPACK's Gauss-Kronrod rules (scipy.integrate.quad), which give nested-rule
error estimates and deterministic node placement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy.integrate import quad


class QuadratureError(RuntimeError):
    """Raised when the subdivision budget is exhausted or the estimate
    exceeds the requested tolerance.  Carries the best value found."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


@dataclass(frozen=True)
class QuadratureSettings:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-300
    max_subdivisions: int = 200
    transform: str = "none"  # one of: exp_decay, sinh, none

    def __post_init__(self):
        if self.rel_tol <= 0 or self.abs_tol <= 0:
            raise ValueError("rel_tol and abs_tol must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.transform not in ("exp_decay", "sinh", "none"):
            raise ValueError(f"unknown transform {self.transform!r}")


# Accept results whose reported estimate exceeds tolerance by less than this
# factor before declaring non-convergence; QUADPACK estimates are pessimistic.
_SLACK = 50.0


def integrate_semi_infinite(f, settings: QuadratureSettings, scale: float = 1.0):
    """Integrate f over (0, inf).

    `scale` sets the transform's frequency scale (the scenario's dominant
    frequency).  Returns (value, error_estimate); raises QuadratureError when
    the estimate cannot be brought below max(abs_tol, rel_tol*|value|).
    """
    if scale <= 0:
        raise ValueError("scale must be positive")

    if settings.transform == "exp_decay":
        # xi = -scale*ln(t) maps (0,1) -> (inf,0); the Jacobian scale/t turns
        # exponential tails into integrands polynomial near t = 0.
        s = scale

        def g(t):
            return f(-s * math.log(t)) * (s / t)

        value, err = quad(
            g, 0.0, 1.0,
            epsabs=settings.abs_tol, epsrel=settings.rel_tol,
            limit=settings.max_subdivisions, full_output=1,
        )[:2]
    elif settings.transform == "sinh":
        # xi = scale*sinh(u) regularizes the sqrt kink of kappa at the
        # origin.  The u range is capped where scale*sinh(u) ~ 1e17: with the
        # scale matched to the integrand's exponential decay the truncated
        # tail is far below double precision.
        s = scale

        def g(u):
            return f(s * math.sinh(u)) * (s * math.cosh(u))

        value, err = quad(
            g, 0.0, 40.0,
            epsabs=settings.abs_tol, epsrel=settings.rel_tol,
            limit=settings.max_subdivisions, full_output=1,
        )[:2]
    else:
        value, err = quad(
            f, 0.0, math.inf,
            epsabs=settings.abs_tol, epsrel=settings.rel_tol,
            limit=settings.max_subdivisions, full_output=1,
        )[:2]

    tol = max(settings.abs_tol, settings.rel_tol * abs(value))
    if err > _SLACK * tol:
        raise QuadratureError(
            f"semi-infinite quadrature did not converge: estimate {err:.3e} "
            f"vs tolerance {tol:.3e}",
            value=value, error_estimate=err,
        )
    return value, err


def integrate_nested(f2, settings_outer: QuadratureSettings,
                     settings_inner: QuadratureSettings,
                     scale_outer: float = 1.0, scale_inner=None):
    """Double quadrature of f2(x, y) over (0,inf) x (0,inf).

    The inner integral runs at every outer node; the reported estimate is the
    outer estimate plus the largest inner estimate encountered.  Node
    placement is deterministic, so results are bit-reproducible.

    `scale_inner` may be a callable of the outer variable (the inner momentum
    scale typically grows with the outer frequency).
    """
    worst_inner = [0.0]

    def outer_integrand(x):
        s = scale_inner(x) if callable(scale_inner) else (scale_inner or scale_outer)
        try:
            val, err = integrate_semi_infinite(
                lambda y: f2(x, y), settings_inner, scale=s)
        except QuadratureError as exc:
            raise QuadratureError(
                f"inner quadrature failed at outer node x={x!r}: {exc}",
                value=exc.value, error_estimate=exc.error_estimate,
            ) from exc
        worst_inner[0] = max(worst_inner[0], err)
        return val

    value, err_outer = integrate_semi_infinite(
        outer_integrand, settings_outer, scale=scale_outer)
    return value, err_outer + worst_inner[0]


def tighten(settings: QuadratureSettings, factor: float) -> QuadratureSettings:
    """Settings with tolerances divided by `factor` (for inner integrals)."""
    return replace(settings,
                   rel_tol=settings.rel_tol / factor,
                   abs_tol=settings.abs_tol / factor)
