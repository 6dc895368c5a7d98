"""Dispersion models for media and atoms.

Everything is expressed in reduced units (hbar = c = eps0 = mu0 = 1, one
reference frequency fixes the scale); SI conversion happens at the I/O layer.
Media are Drude-Lorentz oscillator sums, which are causal and real and
positive on the positive imaginary frequency axis.  Constant epsilon/mu
overrides and ideal mirrors exist for closed-form checks only and are flagged
non-causal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Oscillator:
    """One Drude-Lorentz term: strength omega_p, resonance omega_t, damping gamma."""
    omega_p: float
    omega_t: float
    gamma: float = 0.0


@dataclass(frozen=True)
class OscillatorModel:
    """Susceptibility chi(i xi) = sum omega_p^2 / (omega_t^2 + xi^2 + gamma*xi)."""
    oscillators: tuple = ()

    def chi(self, xi: float) -> float:
        if xi < 0:
            raise ValueError("imaginary frequency xi must be >= 0")
        total = 0.0
        for osc in self.oscillators:
            denom = osc.omega_t**2 + xi**2 + osc.gamma * xi
            if denom == 0.0:
                raise ValueError(
                    "oscillator with omega_t = 0 and gamma = 0 has a "
                    "divergent static limit")
            total += osc.omega_p**2 / denom
        return total

    def chi_real(self, omega: float) -> complex:
        """chi(omega) on the real axis (complex; Im >= 0 for gamma >= 0)."""
        total = 0.0 + 0.0j
        for osc in self.oscillators:
            total += osc.omega_p**2 / (osc.omega_t**2 - omega**2
                                       - 1j * osc.gamma * omega)
        return total


@dataclass(frozen=True)
class MaterialModel:
    """Medium response: permittivity/permeability oscillator models.

    `const_eps`/`const_mu` switch the material to constant (non-dispersive)
    response; `mirror` makes it an ideal mirror ('electric': r_p=1, r_s=-1;
    'magnetic': r_p=-1, r_s=1).  Both override modes are non-causal and are
    meant for ideal-limit tests.
    """
    permittivity: OscillatorModel = field(default_factory=OscillatorModel)
    permeability: OscillatorModel = field(default_factory=OscillatorModel)
    const_eps: float | None = None
    const_mu: float | None = None
    mirror: str | None = None  # 'electric' | 'magnetic' | None

    @property
    def is_causal(self) -> bool:
        return self.const_eps is None and self.const_mu is None \
            and self.mirror is None

    @property
    def is_vacuum(self) -> bool:
        return self.is_causal and not self.permittivity.oscillators \
            and not self.permeability.oscillators

    def eps(self, xi: float) -> float:
        if self.mirror is not None:
            raise ValueError("ideal mirrors have no pointwise permittivity")
        if self.const_eps is not None:
            return self.const_eps
        return 1.0 + self.permittivity.chi(xi)

    def mu(self, xi: float) -> float:
        if self.mirror is not None:
            raise ValueError("ideal mirrors have no pointwise permeability")
        if self.const_mu is not None:
            return self.const_mu
        return 1.0 + self.permeability.chi(xi)

    def eps_real(self, omega: float) -> complex:
        if self.const_eps is not None:
            return complex(self.const_eps)
        return 1.0 + self.permittivity.chi_real(omega)

    def mu_real(self, omega: float) -> complex:
        if self.const_mu is not None:
            return complex(self.const_mu)
        return 1.0 + self.permeability.chi_real(omega)

    def dominant_frequency(self, fallback: float = 1.0) -> float:
        freqs = [o.omega_t for o in self.permittivity.oscillators
                 + self.permeability.oscillators if o.omega_t > 0]
        freqs += [o.omega_p for o in self.permittivity.oscillators
                  + self.permeability.oscillators if o.omega_p > 0]
        return max(freqs) if freqs else fallback


VACUUM = MaterialModel()


@dataclass(frozen=True)
class Resonance:
    """One polarizability/magnetizability resonance: contribution `strength`
    to the static value, resonance frequency `omega`."""
    strength: float
    omega: float


@dataclass(frozen=True)
class Transition:
    """Downward dipole transition: frequency and electric/magnetic matrix
    elements (m stored as m/c, i.e. in the same reduced units as d)."""
    omega: float
    d: tuple = (0.0, 0.0, 0.0)
    m: tuple = (0.0, 0.0, 0.0)

    def d_vec(self):
        return np.asarray(self.d, dtype=float)

    def m_vec(self):
        return np.asarray(self.m, dtype=float)


@dataclass(frozen=True)
class AtomModel:
    """Isotropic ground-state atom: alpha(i xi), beta(i xi), transitions.

    beta is stored as beta/c^2, so the duality swap alpha <-> beta/c^2 is a
    plain exchange in these units.
    """
    polarizability: tuple = ()   # Resonance terms for alpha
    magnetizability: tuple = ()  # Resonance terms for beta/c^2
    transitions: tuple = ()

    def alpha(self, xi: float) -> float:
        return _resonance_sum(self.polarizability, xi)

    def beta(self, xi: float) -> float:
        return _resonance_sum(self.magnetizability, xi)

    @property
    def alpha0(self) -> float:
        return sum(r.strength for r in self.polarizability)

    @property
    def beta0(self) -> float:
        return sum(r.strength for r in self.magnetizability)

    def dominant_frequency(self, fallback: float = 1.0) -> float:
        freqs = [r.omega for r in self.polarizability + self.magnetizability]
        freqs += [t.omega for t in self.transitions]
        freqs = [f for f in freqs if f > 0]
        return max(freqs) if freqs else fallback


def _resonance_sum(resonances, xi: float) -> float:
    if xi < 0:
        raise ValueError("imaginary frequency xi must be >= 0")
    return sum(r.strength * r.omega**2 / (r.omega**2 + xi**2)
               for r in resonances)


def polarizability_at(atom: AtomModel, xi: float) -> float:
    """alpha(i xi) of an atom; xi >= 0."""
    return atom.alpha(xi)


def magnetizability_at(atom: AtomModel, xi: float) -> float:
    """beta(i xi)/c^2 of an atom; xi >= 0."""
    return atom.beta(xi)


def permittivity_at(material: MaterialModel, xi: float) -> float:
    """eps(i xi) of a medium; xi >= 0."""
    if xi < 0:
        raise ValueError("imaginary frequency xi must be >= 0")
    return material.eps(xi)


def permeability_at(material: MaterialModel, xi: float) -> float:
    """mu(i xi) of a medium; xi >= 0."""
    if xi < 0:
        raise ValueError("imaginary frequency xi must be >= 0")
    return material.mu(xi)


def validate_model(model) -> list:
    """Diagnostic check of type invariants.

    Returns a list of human-readable violations; empty iff the model is
    admissible.  Constant overrides and mirrors are reported as non-causal
    flags so full-spectrum integrals can warn.
    """
    violations = []
    if isinstance(model, MaterialModel):
        if model.mirror is not None:
            if model.mirror not in ("electric", "magnetic"):
                violations.append(
                    f"mirror: unknown kind {model.mirror!r}")
            violations.append(
                "mirror: non-causal ideal limit, excluded from "
                "full-spectrum claims")
            return violations
        for label, osc_model in (("permittivity", model.permittivity),
                                 ("permeability", model.permeability)):
            for i, osc in enumerate(osc_model.oscillators):
                if osc.omega_p**2 < 0 or not math.isfinite(osc.omega_p):
                    violations.append(
                        f"{label}.oscillators[{i}]: positivity violation "
                        "(omega_p^2 must be >= 0)")
                if osc.omega_t < 0:
                    violations.append(
                        f"{label}.oscillators[{i}]: omega_t must be >= 0")
                if osc.gamma < 0:
                    violations.append(
                        f"{label}.oscillators[{i}]: gamma must be >= 0")
                if osc.omega_t == 0 and osc.gamma == 0 and osc.omega_p != 0:
                    violations.append(
                        f"{label}.oscillators[{i}]: omega_t = gamma = 0 "
                        "gives a divergent static limit")
        for label, const in (("const_eps", model.const_eps),
                             ("const_mu", model.const_mu)):
            if const is not None:
                violations.append(
                    f"{label}: non-causal constant override, excluded from "
                    "full-spectrum integrals")
    elif isinstance(model, AtomModel):
        for label, resonances in (("polarizability", model.polarizability),
                                  ("magnetizability", model.magnetizability)):
            for i, r in enumerate(resonances):
                if r.strength < 0:
                    violations.append(
                        f"{label}[{i}]: positivity violation "
                        "(strength must be >= 0)")
                if r.omega <= 0:
                    violations.append(
                        f"{label}[{i}]: resonance frequency must be > 0")
        for i, t in enumerate(model.transitions):
            if t.omega <= 0:
                violations.append(
                    f"transitions[{i}]: downward transition frequency "
                    "must be > 0")
    else:
        raise TypeError(f"cannot validate {type(model).__name__}")
    return violations
