"""Dispersion forces and decay rates for planar magnetoelectric scenarios,
with a mechanical verifier of electric-magnetic duality invariance."""

from .duality import (DualityAngle, DualPair, dualize_green,
                      dualize_scenario, group_power, rotate_dual_pair,
                      transform_materials)
from .greens import (GreenSet, PlanarCavity, PlanarHalfSpace,
                     fresnel_coefficients, halfspace_scattering_green,
                     vacuum_green)
from .materials import (AtomModel, MaterialModel, Oscillator,
                        OscillatorModel, Resonance, Transition,
                        permeability_at, permittivity_at, polarizability_at,
                        validate_model)
from .observables import (ObservableResult, casimir_pressure_planar,
                          cp_potential_halfspace, decay_rate,
                          retarded_local_field_potential,
                          two_atom_potential_freespace)
from .quadrature import (QuadratureError, QuadratureSettings,
                         integrate_nested, integrate_semi_infinite)
from .runner import compute_observable, verify_duality
from .scenario import (Scenario, ValidationError, canonical_yaml,
                       load_scenario, save_scenario, scenario_hash)

__version__ = "0.1.0"
