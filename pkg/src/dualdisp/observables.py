"""Derived dispersion observables: Casimir pressure between planar bodies,
Casimir-Polder potential above a half-space, two-atom van der Waals potential
in free space, spontaneous decay rates, and the retarded local-field-corrected
closed form.

All values are in reduced units (hbar = c = eps0 = mu0 = 1); unit tags record
the physical dimension for SI conversion at the I/O layer.  Signs: negative
pressure and negative potentials mean attraction.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .greens import (PlanarCavity, PlanarHalfSpace, cavity_reflection_kernel,
                     halfspace_im_scattering_green, halfspace_trace_ee,
                     halfspace_trace_mm, vacuum_green)
from .materials import AtomModel
from .quadrature import (QuadratureSettings, integrate_nested,
                         integrate_semi_infinite, tighten)

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ObservableResult:
    value: float
    unit: str
    quadrature_error: float
    scenario_hash: str = ""
    settings: QuadratureSettings | None = None


def _with_transform(settings, transform):
    if settings.transform == transform:
        return settings
    from dataclasses import replace
    return replace(settings, transform=transform)


def casimir_pressure_planar(cavity: PlanarCavity,
                            settings: QuadratureSettings) -> ObservableResult:
    """Casimir pressure on the plates of a planar cavity (Lifshitz double
    quadrature over imaginary frequency and transverse momentum, closed-cavity
    denominator form).  Negative = attraction."""
    a = cavity.gap

    if cavity.left.is_vacuum or cavity.right.is_vacuum:
        return ObservableResult(value=0.0, unit="Pa", quadrature_error=0.0,
                                settings=settings)

    def integrand(xi, k_par):
        kappa = math.sqrt(xi**2 + k_par**2)
        kernel = cavity_reflection_kernel(k_par, xi, cavity)
        total = 0.0
        for sigma in ("s", "p"):
            factor, denom = kernel[sigma]
            total += factor / denom
        return k_par * kappa * total

    # e^{-2 kappa a} pins the exponential decay scale of the xi integrand
    # regardless of material dispersion.
    freq_scale = 1.0 / (2.0 * a)
    outer = _with_transform(settings, "exp_decay")
    inner = _with_transform(tighten(settings, 10.0), "sinh")
    value, err = integrate_nested(
        integrand, outer, inner,
        scale_outer=freq_scale,
        scale_inner=lambda xi: max(xi, 1.0 / (2.0 * a)))
    pressure = -value / (2.0 * math.pi**2)
    return ObservableResult(value=pressure, unit="Pa",
                            quadrature_error=err / (2.0 * math.pi**2),
                            settings=settings)


def cp_potential_halfspace(atom: AtomModel, hs: PlanarHalfSpace, z: float,
                           settings: QuadratureSettings) -> ObservableResult:
    """Ground-state Casimir-Polder potential of an atom at height z above a
    half-space: U = (1/2pi) Int dxi [alpha Tr G1_ee + beta Tr G1_mm]."""
    if z <= 0:
        raise ValueError("atom height z must be > 0")
    if hs.material.is_vacuum:
        return ObservableResult(value=0.0, unit="J", quadrature_error=0.0,
                                settings=settings)

    inner = _with_transform(tighten(settings, 10.0), "sinh")
    worst_inner = [0.0]

    def integrand(xi):
        alpha = atom.alpha(xi)
        beta = atom.beta(xi)
        total = 0.0
        if alpha != 0.0:
            t_ee, err = halfspace_trace_ee(z, xi, hs, inner)
            worst_inner[0] = max(worst_inner[0], abs(alpha) * err)
            total += alpha * t_ee
        if beta != 0.0:
            t_mm, err = halfspace_trace_mm(z, xi, hs, inner)
            worst_inner[0] = max(worst_inner[0], abs(beta) * err)
            total += beta * t_mm
        return total

    freq_scale = 1.0 / (2.0 * z)
    outer = _with_transform(settings, "exp_decay")
    value, err = integrate_semi_infinite(integrand, outer, scale=freq_scale)
    u = value / TWO_PI
    return ObservableResult(value=u, unit="J",
                            quadrature_error=(err + worst_inner[0]) / TWO_PI,
                            settings=settings)


def two_atom_potential_freespace(atom_a: AtomModel, atom_b: AtomModel,
                                 r_ab: float,
                                 settings: QuadratureSettings) -> ObservableResult:
    """Ground-state two-atom vdW potential in free space: the four-term
    trace over products of vacuum Green blocks weighted by alpha/beta."""
    if r_ab <= 0:
        raise ValueError("atom separation must be > 0")
    pos_a = np.zeros(3)
    pos_b = np.array([0.0, 0.0, r_ab])

    def integrand(xi):
        aa = atom_a.alpha(xi)
        ba = atom_a.beta(xi)
        ab = atom_b.alpha(xi)
        bb = atom_b.beta(xi)
        g_ab = vacuum_green(pos_a, pos_b, xi)
        g_ba = vacuum_green(pos_b, pos_a, xi)
        t_ee = float(np.trace(g_ab.ee @ g_ba.ee))
        t_em = float(np.trace(g_ab.em @ g_ba.me))
        t_me = float(np.trace(g_ab.me @ g_ba.em))
        t_mm = float(np.trace(g_ab.mm @ g_ba.mm))
        return (aa * ab * t_ee + aa * bb * t_em
                + ba * ab * t_me + ba * bb * t_mm)

    outer = _with_transform(settings, "exp_decay")
    value, err = integrate_semi_infinite(integrand, outer,
                                         scale=1.0 / (2.0 * r_ab))
    u = -value / TWO_PI
    return ObservableResult(value=u, unit="J",
                            quadrature_error=err / TWO_PI,
                            settings=settings)


def retarded_local_field_potential(kind: str, s_a: float, s_b: float,
                                   eps: float, mu: float,
                                   r_ab: float) -> ObservableResult:
    """Closed-form retarded two-atom potential with real-cavity local-field
    corrections, for two atoms embedded in a constant-(eps, mu) medium.

    'electric' takes polarizabilities, 'magnetic' takes magnetizabilities (in
    beta/c^2 reduced form); the two variants map onto each other under the
    duality swap.  At eps = mu = 1 the electric variant reduces to
    -23 s_a s_b / (64 pi^3 r^7).
    """
    if eps <= 0 or mu <= 0:
        raise ValueError("eps and mu must be > 0")
    if r_ab <= 0:
        raise ValueError("atom separation must be > 0")
    if kind == "electric":
        resp = eps
    elif kind == "magnetic":
        resp = mu
    else:
        raise ValueError("kind must be 'electric' or 'magnetic'")
    value = -1863.0 * s_a * s_b * resp**2 / (
        64.0 * math.pi**3 * math.sqrt(eps * mu)
        * (2.0 * resp + 1.0)**4 * r_ab**7)
    return ObservableResult(value=value, unit="J", quadrature_error=0.0)


def vacuum_decay_rate(atom: AtomModel) -> float:
    """Free-space rate: sum over transitions of omega^3 (|d|^2 + |m|^2)/3pi
    (m stored as m/c)."""
    total = 0.0
    for t in atom.transitions:
        d2 = float(np.dot(t.d_vec(), t.d_vec()))
        m2 = float(np.dot(t.m_vec(), t.m_vec()))
        total += t.omega**3 * d2 / (3.0 * math.pi)
        total += t.omega**3 * m2 / (3.0 * math.pi)
    return total


def decay_rate(atom: AtomModel, environment: PlanarHalfSpace | None,
               position=None,
               settings: QuadratureSettings | None = None) -> ObservableResult:
    """Total spontaneous decay rate of an atom, summed over its downward
    transitions (electric- and magnetic-dipole channels).

    `environment` is None for free space, or a PlanarHalfSpace; in the latter
    case the atom must sit at z > 0 and the scattering Green tensor is
    evaluated at each real transition frequency.
    """
    if settings is None:
        settings = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-300)
    if not atom.transitions:
        warnings.warn("atom has no downward transitions; decay rate is 0")
        return ObservableResult(value=0.0, unit="1/s", quadrature_error=0.0,
                                settings=settings)
    total = vacuum_decay_rate(atom)
    err = 0.0
    if environment is not None and not environment.material.is_vacuum:
        if position is None:
            raise ValueError("position required for a half-space environment")
        z = float(np.asarray(position, dtype=float)[2])
        if z <= 0:
            raise ValueError(
                "atom is embedded in the medium; local-field corrections "
                "via the real-cavity model must be included (unimplemented)")
        for t in atom.transitions:
            im_ee, im_mm = halfspace_im_scattering_green(
                z, t.omega, environment, settings)
            d = t.d_vec()
            m = t.m_vec()
            total += 2.0 * float(d @ im_ee @ d)
            total += 2.0 * float(m @ im_mm @ m)
            err += 2.0 * settings.rel_tol * (
                abs(d @ im_ee @ d) + abs(m @ im_mm @ m))
    return ObservableResult(value=total, unit="1/s", quadrature_error=err,
                            settings=settings)
