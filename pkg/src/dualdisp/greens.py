"""Dyadic Green tensors: bulk vacuum and the scattering part above a
magnetoelectric half-space.

Index convention: a left/right index e multiplies the fundamental tensor by
xi/c (the sign is fixed so that decay rates come out positive), a left index
m applies a curl, a right index m applies x grad' from the right.  On the
imaginary axis all four blocks are real.  Reduced units, c = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .materials import MaterialModel
from .quadrature import QuadratureSettings, integrate_semi_infinite

_IDENTITY = np.eye(3)
# Angular structure of the em/me blocks at coincident points above a plane:
# antisymmetric in the two in-plane directions.
_J = np.array([[0.0, -1.0, 0.0],
               [1.0, 0.0, 0.0],
               [0.0, 0.0, 0.0]])


@dataclass
class GreenSet:
    """The four labeled Green blocks at (r, r'), imaginary frequency xi.

    `delta_ee`/`delta_mm` are the symbolic coefficients of the coincident
    point delta terms; the smooth matrices never contain them.
    """
    ee: np.ndarray
    em: np.ndarray
    me: np.ndarray
    mm: np.ndarray
    r: np.ndarray
    r_prime: np.ndarray
    xi: float
    scattering_only: bool = False
    delta_ee: float = 0.0
    delta_mm: float = 0.0


@dataclass(frozen=True)
class PlanarHalfSpace:
    """Material filling z < 0, vacuum for z > 0."""
    material: MaterialModel


@dataclass(frozen=True)
class PlanarCavity:
    """Left material at z < 0, right material at z > gap, vacuum between."""
    left: MaterialModel
    right: MaterialModel
    gap: float

    def __post_init__(self):
        if self.gap <= 0:
            raise ValueError("cavity gap must be > 0")


def vacuum_green(r, r_prime, xi: float) -> GreenSet:
    """Vacuum Green blocks at imaginary frequency for r != r'.

    The scalar kernel is exp(-xi*rho)/(4 pi rho); all blocks decay
    exponentially and are real.
    """
    if xi <= 0:
        raise ValueError("xi must be > 0")
    r = np.asarray(r, dtype=float)
    r_prime = np.asarray(r_prime, dtype=float)
    sep = r - r_prime
    rho = float(np.linalg.norm(sep))
    if rho == 0.0:
        raise ValueError("coincident points: vacuum Green tensor is singular "
                         "(use a scattering-only set)")
    n = sep / rho
    x = xi * rho
    g = math.exp(-x) / (4.0 * math.pi * rho)
    gp = -(xi + 1.0 / rho) * g           # d/d rho
    gpp = (xi**2 + 2.0 * xi / rho + 2.0 / rho**2) * g

    nn = np.outer(n, n)
    # ee block from G = (I + grad grad / k^2) g with the adopted e-factor:
    a = g * (x**2 + x + 1.0) / x**2
    b = -g * (x**2 + 3.0 * x + 3.0) / x**2
    ee = xi**2 * (a * _IDENTITY + b * nn)
    # mm block from the double-curl form (independent route; analytically
    # equal to ee in vacuum):
    mm = (-gp / rho + xi**2 * g) * _IDENTITY + (-gpp + gp / rho) * nn
    # single-curl blocks:
    k_n = np.array([[0.0, n[2], -n[1]],
                    [-n[2], 0.0, n[0]],
                    [n[1], -n[0], 0.0]])
    em = -xi * gp * k_n
    me = xi * gp * k_n
    return GreenSet(ee=ee, em=em, me=me, mm=mm, r=r, r_prime=r_prime, xi=xi)


def fresnel_coefficients(k_par: float, xi: float, eps: float, mu: float):
    """(r_s, r_p) of a vacuum/medium interface at imaginary frequency."""
    if k_par < 0:
        raise ValueError("k_par must be >= 0")
    if xi <= 0:
        raise ValueError("xi must be > 0")
    kappa = math.sqrt(xi**2 + k_par**2)
    kappa1 = math.sqrt(eps * mu * xi**2 + k_par**2)
    r_s = (mu * kappa - kappa1) / (mu * kappa + kappa1)
    r_p = (eps * kappa - kappa1) / (eps * kappa + kappa1)
    return r_s, r_p


def reflection_coefficients(material: MaterialModel, k_par: float, xi: float):
    """(r_s, r_p) for a material, dispatching mirror and override modes."""
    if material.mirror == "electric":
        return -1.0, 1.0
    if material.mirror == "magnetic":
        return 1.0, -1.0
    if material.is_vacuum:
        return 0.0, 0.0
    return fresnel_coefficients(k_par, xi, material.eps(xi), material.mu(xi))


def fresnel_coefficients_real(material: MaterialModel, k_par: float,
                              omega: float):
    """Complex (r_s, r_p) at real frequency, for decay-rate evaluation.

    The vacuum normal component w is real for propagating waves and i*kappa
    for evanescent ones; inside the medium the branch with Im w1 >= 0 is
    taken (decay into the medium).
    """
    if material.mirror == "electric":
        return complex(-1.0), complex(1.0)
    if material.mirror == "magnetic":
        return complex(1.0), complex(-1.0)
    if material.is_vacuum:
        return complex(0.0), complex(0.0)
    eps = material.eps_real(omega)
    mu = material.mu_real(omega)
    w2 = omega**2 - k_par**2
    w = complex(math.sqrt(w2)) if w2 >= 0 else 1j * math.sqrt(-w2)
    w1 = np.sqrt(complex(eps * mu * omega**2 - k_par**2))
    if w1.imag < 0:
        w1 = -w1
    r_s = (mu * w - w1) / (mu * w + w1)
    r_p = (eps * w - w1) / (eps * w + w1)
    return r_s, r_p


# ---------------------------------------------------------------------------
# Half-space scattering part at coincident points r = r' = (0, 0, z), z > 0.
#
# Weyl-expansion kernels after the angular integral (c = 1):
#   ee_xx = (1/8pi) Int dk (k/kappa) e^{-2 kappa z} [xi^2 r_s - kappa^2 r_p]
#   ee_zz = -(1/4pi) Int dk (k^3/kappa) r_p e^{-2 kappa z}
#   mm    = same with r_s <-> r_p
#   em=me = (xi/8pi) Int dk k e^{-2 kappa z} (r_p - r_s)  times J
# ---------------------------------------------------------------------------

def _halfspace_component(hs: PlanarHalfSpace, z: float, xi: float,
                         weight, settings: QuadratureSettings):
    def integrand(k_par):
        kappa = math.sqrt(xi**2 + k_par**2)
        r_s, r_p = reflection_coefficients(hs.material, k_par, xi)
        return weight(k_par, kappa, r_s, r_p) * math.exp(-2.0 * kappa * z)

    value, err = integrate_semi_infinite(integrand, settings, scale=max(xi, 1.0 / z))
    return value, err


def halfspace_scattering_green(z: float, xi: float, hs: PlanarHalfSpace,
                               settings: QuadratureSettings | None = None) -> GreenSet:
    """Scattering Green blocks above a half-space at the coincident point
    (0, 0, z).  Delta coefficients are zero (scattering part)."""
    if z <= 0:
        raise ValueError("field point must satisfy z > 0")
    if xi <= 0:
        raise ValueError("xi must be > 0")
    if settings is None:
        settings = QuadratureSettings(rel_tol=1e-12, abs_tol=1e-300,
                                      transform="sinh")

    pre8 = 1.0 / (8.0 * math.pi)
    pre4 = 1.0 / (4.0 * math.pi)

    ee_xx, _ = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: pre8 * (k / kap) * (xi**2 * rs - kap**2 * rp),
        settings)
    ee_zz, _ = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: -pre4 * (k**3 / kap) * rp,
        settings)
    mm_xx, _ = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: pre8 * (k / kap) * (xi**2 * rp - kap**2 * rs),
        settings)
    mm_zz, _ = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: -pre4 * (k**3 / kap) * rs,
        settings)
    cross, _ = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: pre8 * xi * k * (rp - rs),
        settings)

    point = np.array([0.0, 0.0, z])
    return GreenSet(
        ee=np.diag([ee_xx, ee_xx, ee_zz]),
        em=cross * _J,
        me=cross * _J,
        mm=np.diag([mm_xx, mm_xx, mm_zz]),
        r=point, r_prime=point, xi=xi,
        scattering_only=True,
    )


def halfspace_trace_ee(z: float, xi: float, hs: PlanarHalfSpace,
                       settings: QuadratureSettings):
    """Tr G^(1)_ee(z, z, i xi): single combined k-quadrature."""
    pre = 1.0 / (4.0 * math.pi)
    value, err = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: pre * (k / kap)
        * (xi**2 * rs - (kap**2 + k**2) * rp),
        settings)
    return value, err


def halfspace_trace_mm(z: float, xi: float, hs: PlanarHalfSpace,
                       settings: QuadratureSettings):
    """Tr G^(1)_mm(z, z, i xi): single combined k-quadrature."""
    pre = 1.0 / (4.0 * math.pi)
    value, err = _halfspace_component(
        hs, z, xi,
        lambda k, kap, rs, rp: pre * (k / kap)
        * (xi**2 * rp - (kap**2 + k**2) * rs),
        settings)
    return value, err


# ---------------------------------------------------------------------------
# Real-frequency scattering part (imaginary part only), for decay rates.
# Propagating region parametrized as k = omega sin(theta), evanescent as
# k = omega cosh(u); both substitutions remove the 1/w endpoint kink.
# ---------------------------------------------------------------------------

def halfspace_im_scattering_green(z: float, omega: float, hs: PlanarHalfSpace,
                                  settings: QuadratureSettings | None = None):
    """Im of the diagonal scattering blocks at real frequency omega.

    Returns (im_ee, im_mm) as 3x3 diagonal matrices at the coincident point
    (0, 0, z).
    """
    if z <= 0:
        raise ValueError("field point must satisfy z > 0")
    if omega <= 0:
        raise ValueError("omega must be > 0")
    if settings is None:
        settings = QuadratureSettings(rel_tol=1e-11, abs_tol=1e-300)
    from scipy.integrate import quad

    def blocks_propagating(theta):
        k = omega * math.sin(theta)
        w = omega * math.cos(theta)
        r_s, r_p = fresnel_coefficients_real(hs.material, k, omega)
        phase = np.exp(2j * w * z)
        # measure: (k/w) dk = omega sin(theta) dtheta
        common = 1j * omega * math.sin(theta) * phase
        ee_xx = common / (8 * math.pi) * (omega**2 * r_s - w**2 * r_p)
        ee_zz = common / (4 * math.pi) * k**2 * r_p
        mm_xx = common / (8 * math.pi) * (omega**2 * r_p - w**2 * r_s)
        mm_zz = common / (4 * math.pi) * k**2 * r_s
        return np.array([ee_xx.imag, ee_zz.imag, mm_xx.imag, mm_zz.imag])

    def blocks_evanescent(u):
        k = omega * math.cosh(u)
        kappa = omega * math.sinh(u)
        r_s, r_p = fresnel_coefficients_real(hs.material, k, omega)
        damp = math.exp(-2.0 * kappa * z)
        # w = i kappa: i/w = 1/kappa; measure (k/kappa) dk = omega cosh(u) du
        common = omega * math.cosh(u) * damp
        ee_xx = common / (8 * math.pi) * (omega**2 * r_s + kappa**2 * r_p)
        ee_zz = common / (4 * math.pi) * k**2 * r_p
        mm_xx = common / (8 * math.pi) * (omega**2 * r_p + kappa**2 * r_s)
        mm_zz = common / (4 * math.pi) * k**2 * r_s
        return np.array([ee_xx.imag, ee_zz.imag, mm_xx.imag, mm_zz.imag])

    totals = np.zeros(4)
    for i in range(4):
        prop, _ = quad(lambda t, i=i: blocks_propagating(t)[i],
                       0.0, math.pi / 2,
                       epsabs=settings.abs_tol, epsrel=settings.rel_tol,
                       limit=settings.max_subdivisions, full_output=1)[:2]
        # u capped where omega*cosh(u) ~ 1e17; e^{-2 kappa z} is long dead
        evan, _ = quad(lambda u, i=i: blocks_evanescent(u)[i],
                       0.0, 40.0,
                       epsabs=max(settings.abs_tol, 1e-16),
                       epsrel=settings.rel_tol,
                       limit=settings.max_subdivisions, full_output=1)[:2]
        totals[i] = prop + evan

    im_ee = np.diag([totals[0], totals[0], totals[1]])
    im_mm = np.diag([totals[2], totals[2], totals[3]])
    return im_ee, im_mm


def cavity_reflection_kernel(k_par: float, xi: float, cavity: PlanarCavity):
    """Round-trip factors r_L r_R e^{-2 kappa a} and closed-cavity
    denominators per polarization.

    Returns {'s': (factor, denominator), 'p': (factor, denominator)}.
    """
    kappa = math.sqrt(xi**2 + k_par**2)
    rs_l, rp_l = reflection_coefficients(cavity.left, k_par, xi)
    rs_r, rp_r = reflection_coefficients(cavity.right, k_par, xi)
    damp = math.exp(-2.0 * kappa * cavity.gap)
    out = {}
    for sigma, (rl, rr) in (("s", (rs_l, rs_r)), ("p", (rp_l, rp_r))):
        factor = rl * rr * damp
        denom = 1.0 - factor
        if denom <= 0.0:
            raise ValueError(
                f"closed-cavity denominator <= 0 for polarization {sigma}; "
                "non-passive constant override?")
        out[sigma] = (factor, denom)
    return out
