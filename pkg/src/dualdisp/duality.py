"""Electric-magnetic duality: SO(2) rotation of dual field pairs, the
discrete Z4 transformation of media and atoms, and the Green-block
transformation rules.

Continuous rotation angles act only on field pairs (or on media with equal
eps and mu); everything touching media with a nontrivial impedance is
restricted to quarter turns, whose generator is the global swap
eps <-> mu, alpha <-> beta/c^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .greens import GreenSet
from .materials import AtomModel, MaterialModel, Transition
from .scenario import PlacedAtom, Scenario

_QUARTER = math.pi / 2.0
# Exact (cos, sin) for quarter turns, so that discrete group operations incur
# no floating-point drift.
_EXACT_CS = {0: (1.0, 0.0), 1: (0.0, 1.0), 2: (-1.0, 0.0), 3: (0.0, -1.0)}


@dataclass(frozen=True)
class DualityAngle:
    theta: float
    quarter_turns: int | None = None

    def __post_init__(self):
        if self.quarter_turns is None:
            n = round(self.theta / _QUARTER)
            if abs(self.theta - n * _QUARTER) <= 1e-12 * max(1.0, abs(self.theta)):
                object.__setattr__(self, "quarter_turns", int(n))

    def cos_sin(self):
        if self.quarter_turns is not None:
            return _EXACT_CS[self.quarter_turns % 4]
        return math.cos(self.theta), math.sin(self.theta)


@dataclass(frozen=True)
class DualPair:
    """A rescaled field couple mixed by the duality rotation."""
    x: np.ndarray
    y: np.ndarray
    kind: str = "EH"  # 'EH' | 'DB' | 'PM'


def group_power(n: int) -> DualityAngle:
    """The theta = n*pi/2 element of the discrete duality group."""
    return DualityAngle(theta=n * _QUARTER, quarter_turns=int(n))


def rotate_dual_pair(pair: DualPair, angle: DualityAngle) -> DualPair:
    c, s = angle.cos_sin()
    x = np.asarray(pair.x, dtype=float)
    y = np.asarray(pair.y, dtype=float)
    return DualPair(x=c * x + s * y, y=-s * x + c * y, kind=pair.kind)


def transform_materials(eps: float, mu: float, angle: DualityAngle):
    """(eps*, mu*) under the duality rotation.

    Continuous angles are admissible only for eps == mu; otherwise the
    constitutive relations acquire an off-diagonal residual and the angle is
    rejected.
    """
    if eps == mu:
        return eps, mu
    if angle.quarter_turns is None:
        residual = (mu - eps) * math.sin(angle.theta) * math.cos(angle.theta)
        raise ValueError(
            "duality with eps != mu requires theta = n*pi/2; off-diagonal "
            f"residual {residual!r}")
    c, s = angle.cos_sin()
    c2, s2 = c * c, s * s
    return eps * c2 + mu * s2, eps * s2 + mu * c2


def dualize_material(m: MaterialModel) -> MaterialModel:
    """Quarter-turn action on a medium: permittivity <-> permeability."""
    if m.mirror is not None:
        flipped = "magnetic" if m.mirror == "electric" else "electric"
        return MaterialModel(mirror=flipped)
    return MaterialModel(permittivity=m.permeability,
                         permeability=m.permittivity,
                         const_eps=m.const_mu, const_mu=m.const_eps)


def dualize_atom(a: AtomModel) -> AtomModel:
    """Quarter-turn action on an atom: alpha <-> beta/c^2, d <-> m/c.

    In reduced units both swaps are plain exchanges.  An alternative sign
    convention attaches a minus to one dipole partner; rates depend only
    on |d|^2 and |m|^2, and a plain swap keeps the transformation an exact
    involution on scenario files.
    """
    return AtomModel(
        polarizability=a.magnetizability,
        magnetizability=a.polarizability,
        transitions=tuple(Transition(omega=t.omega, d=t.m, m=t.d)
                          for t in a.transitions))


def dualize_scenario(s: Scenario) -> Scenario:
    """The theta = pi/2 dual scenario: every material and atom swapped,
    geometry and observable selection unchanged."""
    materials = {name: dualize_material(m) for name, m in s.materials.items()}
    atoms = {name: PlacedAtom(model=dualize_atom(a.model),
                              position=a.position)
             for name, a in s.atoms.items()}
    observable = dict(s.observable)
    if observable.get("kind") == "retarded_formula":
        observable["variant"] = ("magnetic"
                                 if observable["variant"] == "electric"
                                 else "electric")
        observable["eps"], observable["mu"] = \
            observable["mu"], observable["eps"]
    return Scenario(units=s.units, materials=materials,
                    bodies=list(s.bodies), atoms=atoms,
                    observable=observable, quadrature=s.quadrature)


def dualize_green(g: GreenSet, eps_r: float, mu_r: float,
                  eps_rp: float, mu_rp: float) -> GreenSet:
    """Green blocks of the eps <-> mu swapped scenario, from the original
    blocks and the local material values at both points.

    The smooth parts transform numerically; the coincident-point delta
    coefficients transform symbolically, and the extra bulk delta terms are
    attached only to full (non scattering-only) sets because the delta does
    not contribute to the scattering part.
    """
    for name, v in (("eps(r)", eps_r), ("mu(r)", mu_r),
                    ("eps(r')", eps_rp), ("mu(r')", mu_rp)):
        if v == 0:
            raise ValueError(f"singular duality transformation: {name} = 0")
    ee = g.mm / (mu_r * mu_rp)
    em = -(eps_rp / mu_r) * g.me
    me = -(eps_r / mu_rp) * g.em
    mm = (eps_r * eps_rp) * g.ee
    delta_ee = g.delta_mm / (mu_r * mu_rp)
    delta_mm = g.delta_ee * eps_r * eps_rp
    if not g.scattering_only:
        delta_ee += 1.0 / mu_r
        delta_mm -= eps_r
    return GreenSet(ee=ee, em=em, me=me, mm=mm,
                    r=g.r, r_prime=g.r_prime, xi=g.xi,
                    scattering_only=g.scattering_only,
                    delta_ee=delta_ee, delta_mm=delta_mm)
