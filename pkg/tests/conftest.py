import numpy as np
import pytest

from dualdisp.materials import (AtomModel, MaterialModel, Oscillator,
                                OscillatorModel, Resonance, Transition)
from dualdisp.quadrature import QuadratureSettings


def random_oscillator_model(rng, n_max=2, allow_lossless=True):
    n = int(rng.integers(0, n_max + 1))
    oscs = []
    for _ in range(n):
        gamma = float(rng.uniform(0.0, 0.3)) if allow_lossless \
            else float(rng.uniform(0.02, 0.3))
        oscs.append(Oscillator(omega_p=float(rng.uniform(0.2, 1.5)),
                               omega_t=float(rng.uniform(0.4, 2.0)),
                               gamma=gamma))
    return OscillatorModel(tuple(oscs))


def random_material(rng):
    m = MaterialModel(permittivity=random_oscillator_model(rng),
                      permeability=random_oscillator_model(rng))
    if m.is_vacuum:
        # force at least one oscillator so the scenario is nontrivial
        m = MaterialModel(
            permittivity=OscillatorModel(
                (Oscillator(float(rng.uniform(0.3, 1.2)),
                            float(rng.uniform(0.5, 1.5)),
                            float(rng.uniform(0.0, 0.2))),)),
            permeability=m.permeability)
    return m


def random_atom(rng, with_transitions=False):
    def res():
        return Resonance(strength=float(rng.uniform(0.005, 0.08)),
                         omega=float(rng.uniform(0.5, 2.0)))
    transitions = ()
    if with_transitions:
        transitions = (Transition(
            omega=float(rng.uniform(0.5, 2.0)),
            d=tuple(rng.uniform(-0.2, 0.2, size=3)),
            m=tuple(rng.uniform(-0.2, 0.2, size=3))),)
    return AtomModel(polarizability=(res(),), magnetizability=(res(),),
                     transitions=transitions)


@pytest.fixture
def rng():
    return np.random.default_rng(20240824)


@pytest.fixture
def quick_settings():
    return QuadratureSettings(rel_tol=1e-9, abs_tol=1e-300,
                              transform="exp_decay")
