"""Scenario execution: dispatch a validated Scenario to its observable and
assemble result / duality-verification records."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .duality import dualize_scenario
from .greens import PlanarCavity, PlanarHalfSpace
from .observables import (ObservableResult, casimir_pressure_planar,
                          cp_potential_halfspace, decay_rate,
                          retarded_local_field_potential,
                          two_atom_potential_freespace)
from .scenario import (Scenario, ValidationError, scenario_hash,
                       si_output_factor)


def _cavity(s: Scenario) -> PlanarCavity:
    body = next(b for b in s.bodies if b.kind == "cavity")
    return PlanarCavity(left=s.materials[body.left_material],
                        right=s.materials[body.right_material],
                        gap=body.gap)


def _halfspace(s: Scenario) -> PlanarHalfSpace:
    body = next(b for b in s.bodies if b.kind == "halfspace")
    return PlanarHalfSpace(material=s.materials[body.material])


def compute_observable(s: Scenario) -> ObservableResult:
    """Compute the scenario's observable in reduced units."""
    obs = s.observable
    kind = obs["kind"]
    settings = s.quadrature
    if kind == "casimir":
        result = casimir_pressure_planar(_cavity(s), settings)
    elif kind == "cp":
        atom = s.atoms[obs["atom"]]
        result = cp_potential_halfspace(atom.model, _halfspace(s),
                                        atom.position[2], settings)
    elif kind == "vdw2":
        a = s.atoms[obs["atom_a"]]
        b = s.atoms[obs["atom_b"]]
        r_ab = float(np.linalg.norm(np.asarray(a.position)
                                    - np.asarray(b.position)))
        result = two_atom_potential_freespace(a.model, b.model, r_ab,
                                              settings)
    elif kind == "decay":
        atom = s.atoms[obs["atom"]]
        env = None
        if obs.get("environment", "vacuum") == "halfspace":
            env = _halfspace(s)
        result = decay_rate(atom.model, env, position=atom.position,
                            settings=settings)
    elif kind == "retarded_formula":
        result = retarded_local_field_potential(
            obs["variant"], float(obs["strength_a"]),
            float(obs["strength_b"]), float(obs["eps"]), float(obs["mu"]),
            float(obs["distance"]))
    else:
        raise ValidationError(f"unknown observable kind {kind!r}")

    from dataclasses import replace
    return replace(result, scenario_hash=scenario_hash(s))


def result_record(s: Scenario, result: ObservableResult) -> dict:
    """Serializable result file contents, with SI conversion if requested."""
    factor = si_output_factor(s.units, result.unit)
    record = {
        "value": float(result.value * factor),
        "unit": result.unit if s.units.system == "reduced"
        else {"Pa": "Pa", "J": "J", "1/s": "1/s"}[result.unit],
        "unit_system": s.units.system,
        "quadrature_error": float(result.quadrature_error * factor),
        "scenario_hash": result.scenario_hash,
        "settings": {
            "rel_tol": s.quadrature.rel_tol,
            "abs_tol": s.quadrature.abs_tol,
            "max_subdivisions": s.quadrature.max_subdivisions,
            "transform": s.quadrature.transform,
        },
    }
    return record


@dataclass(frozen=True)
class VerificationReport:
    value: float
    dual_value: float
    abs_difference: float
    rel_difference: float
    rtol: float
    abs_floor: float
    passed: bool
    unit: str
    scenario_hash: str
    dual_scenario_hash: str

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "dual_value": self.dual_value,
            "abs_difference": self.abs_difference,
            "rel_difference": self.rel_difference,
            "rtol": self.rtol,
            "abs_floor": self.abs_floor,
            "passed": bool(self.passed),
            "unit": self.unit,
            "scenario_hash": self.scenario_hash,
            "dual_scenario_hash": self.dual_scenario_hash,
        }


def verify_duality(s: Scenario, rtol: float = 1e-8,
                   abs_floor: float = 1e-300) -> VerificationReport:
    """Compute the observable for s and for its theta = pi/2 dual with
    identical quadrature settings and compare.

    Pass iff the relative difference is <= rtol, or both magnitudes are below
    the absolute floor.
    """
    dual = dualize_scenario(s)
    res = compute_observable(s)
    res_dual = compute_observable(dual)
    diff = abs(res.value - res_dual.value)
    denom = max(abs(res.value), abs(res_dual.value))
    rel = diff / denom if denom > 0 else 0.0
    passed = rel <= rtol or (abs(res.value) < abs_floor
                             and abs(res_dual.value) < abs_floor)
    if not (math.isfinite(res.value) and math.isfinite(res_dual.value)):
        passed = False
    return VerificationReport(
        value=res.value, dual_value=res_dual.value,
        abs_difference=diff, rel_difference=rel,
        rtol=rtol, abs_floor=abs_floor, passed=passed, unit=res.unit,
        scenario_hash=res.scenario_hash,
        dual_scenario_hash=res_dual.scenario_hash)
