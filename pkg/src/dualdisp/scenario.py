"""Scenario definition, validation, and canonical YAML serialization.

A scenario bundles geometry, materials, atoms, the observable to compute and
quadrature settings.  Files are written in reduced units (hbar = c = eps0 =
mu0 = 1); an SI units block converts output values only.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import yaml

from .materials import (AtomModel, MaterialModel, Oscillator, OscillatorModel,
                        Resonance, Transition, validate_model)
from .quadrature import QuadratureSettings

SCHEMA_VERSION = 1

OBSERVABLE_KINDS = ("casimir", "cp", "vdw2", "decay", "retarded_formula")

# SI constants used only for output conversion.
HBAR_SI = 1.054571817e-34
C_SI = 299792458.0


class ValidationError(ValueError):
    """Scenario file failed schema or semantic validation."""


@dataclass(frozen=True)
class Units:
    system: str = "reduced"  # 'reduced' | 'SI'
    omega_ref: float = 1.0


@dataclass(frozen=True)
class Body:
    kind: str  # 'halfspace' | 'cavity'
    material: str | None = None        # halfspace
    left_material: str | None = None   # cavity
    right_material: str | None = None  # cavity
    gap: float | None = None           # cavity


@dataclass(frozen=True)
class PlacedAtom:
    model: AtomModel
    position: tuple = (0.0, 0.0, 1.0)


@dataclass
class Scenario:
    units: Units = field(default_factory=Units)
    materials: dict = field(default_factory=dict)   # name -> MaterialModel
    bodies: list = field(default_factory=list)      # list[Body]
    atoms: dict = field(default_factory=dict)       # name -> PlacedAtom
    observable: dict = field(default_factory=dict)  # kind + parameters
    quadrature: QuadratureSettings = field(
        default_factory=lambda: QuadratureSettings(rel_tol=1e-10,
                                                   abs_tol=1e-300,
                                                   max_subdivisions=200,
                                                   transform="exp_decay"))


# ---------------------------------------------------------------------------
# dict <-> model conversion
# ---------------------------------------------------------------------------

def _material_to_dict(m: MaterialModel) -> dict:
    if m.mirror is not None:
        return {"mirror": m.mirror}
    d = {}
    if m.const_eps is not None or m.const_mu is not None:
        d["const_eps"] = 1.0 if m.const_eps is None else float(m.const_eps)
        d["const_mu"] = 1.0 if m.const_mu is None else float(m.const_mu)
        return d
    d["permittivity"] = {"oscillators": [
        {"omega_p": o.omega_p, "omega_t": o.omega_t, "gamma": o.gamma}
        for o in m.permittivity.oscillators]}
    d["permeability"] = {"oscillators": [
        {"omega_p": o.omega_p, "omega_t": o.omega_t, "gamma": o.gamma}
        for o in m.permeability.oscillators]}
    return d


def _material_from_dict(d: dict, where: str) -> MaterialModel:
    if not isinstance(d, dict):
        raise ValidationError(f"{where}: material must be a mapping")
    if "mirror" in d:
        if d["mirror"] not in ("electric", "magnetic"):
            raise ValidationError(
                f"{where}.mirror: must be 'electric' or 'magnetic'")
        return MaterialModel(mirror=d["mirror"])
    if "const_eps" in d or "const_mu" in d:
        return MaterialModel(const_eps=float(d.get("const_eps", 1.0)),
                             const_mu=float(d.get("const_mu", 1.0)))

    def osc_model(key):
        block = d.get(key, {}) or {}
        oscs = block.get("oscillators", []) or []
        return OscillatorModel(tuple(
            Oscillator(omega_p=float(o["omega_p"]),
                       omega_t=float(o["omega_t"]),
                       gamma=float(o.get("gamma", 0.0)))
            for o in oscs))

    return MaterialModel(permittivity=osc_model("permittivity"),
                         permeability=osc_model("permeability"))


def _atom_to_dict(a: PlacedAtom) -> dict:
    m = a.model
    return {
        "polarizability": [{"strength": r.strength, "omega": r.omega}
                           for r in m.polarizability],
        "magnetizability": [{"strength": r.strength, "omega": r.omega}
                            for r in m.magnetizability],
        "transitions": [{"omega": t.omega,
                         "d": [float(v) for v in t.d],
                         "m": [float(v) for v in t.m]}
                        for t in m.transitions],
        "position": [float(v) for v in a.position],
    }


def _atom_from_dict(d: dict, where: str) -> PlacedAtom:
    if not isinstance(d, dict):
        raise ValidationError(f"{where}: atom must be a mapping")

    def resonances(key):
        return tuple(Resonance(strength=float(r["strength"]),
                               omega=float(r["omega"]))
                     for r in (d.get(key, []) or []))

    transitions = tuple(
        Transition(omega=float(t["omega"]),
                   d=tuple(float(v) for v in t.get("d", (0, 0, 0))),
                   m=tuple(float(v) for v in t.get("m", (0, 0, 0))))
        for t in (d.get("transitions", []) or []))
    position = tuple(float(v) for v in d.get("position", (0.0, 0.0, 1.0)))
    if len(position) != 3:
        raise ValidationError(f"{where}.position: must have 3 components")
    return PlacedAtom(
        model=AtomModel(polarizability=resonances("polarizability"),
                        magnetizability=resonances("magnetizability"),
                        transitions=transitions),
        position=position)


def scenario_to_dict(s: Scenario) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "units": {"system": s.units.system,
                  "omega_ref": float(s.units.omega_ref)},
        "materials": {name: _material_to_dict(m)
                      for name, m in s.materials.items()},
        "bodies": [_body_to_dict(b) for b in s.bodies],
        "atoms": {name: _atom_to_dict(a) for name, a in s.atoms.items()},
        "observable": dict(s.observable),
        "quadrature": {"rel_tol": s.quadrature.rel_tol,
                       "abs_tol": s.quadrature.abs_tol,
                       "max_subdivisions": s.quadrature.max_subdivisions,
                       "transform": s.quadrature.transform},
    }


def _body_to_dict(b: Body) -> dict:
    if b.kind == "halfspace":
        return {"kind": "halfspace", "material": b.material}
    return {"kind": "cavity", "left_material": b.left_material,
            "right_material": b.right_material, "gap": float(b.gap)}


def _body_from_dict(d: dict, where: str) -> Body:
    kind = d.get("kind")
    if kind == "halfspace":
        if "material" not in d:
            raise ValidationError(f"{where}: halfspace needs 'material'")
        return Body(kind="halfspace", material=d["material"])
    if kind == "cavity":
        for key in ("left_material", "right_material", "gap"):
            if key not in d:
                raise ValidationError(f"{where}: cavity needs '{key}'")
        return Body(kind="cavity", left_material=d["left_material"],
                    right_material=d["right_material"], gap=float(d["gap"]))
    raise ValidationError(f"{where}.kind: must be 'halfspace' or 'cavity'")


def scenario_from_dict(data: dict) -> Scenario:
    if not isinstance(data, dict):
        raise ValidationError("scenario file must contain a mapping")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ValidationError(
            f"schema_version: unsupported version {version!r}")
    units_d = data.get("units", {}) or {}
    units = Units(system=units_d.get("system", "reduced"),
                  omega_ref=float(units_d.get("omega_ref", 1.0)))
    if units.system not in ("reduced", "SI"):
        raise ValidationError("units.system: must be 'reduced' or 'SI'")

    materials = {name: _material_from_dict(md, f"materials.{name}")
                 for name, md in (data.get("materials", {}) or {}).items()}
    bodies = [_body_from_dict(bd, f"bodies.{i}")
              for i, bd in enumerate(data.get("bodies", []) or [])]
    atoms = {name: _atom_from_dict(ad, f"atoms.{name}")
             for name, ad in (data.get("atoms", {}) or {}).items()}

    quad_d = data.get("quadrature", {}) or {}
    quadrature = QuadratureSettings(
        rel_tol=float(quad_d.get("rel_tol", 1e-10)),
        abs_tol=float(quad_d.get("abs_tol", 1e-300)),
        max_subdivisions=int(quad_d.get("max_subdivisions", 200)),
        transform=quad_d.get("transform", "exp_decay"))

    observable = dict(data.get("observable", {}) or {})

    scenario = Scenario(units=units, materials=materials, bodies=bodies,
                        atoms=atoms, observable=observable,
                        quadrature=quadrature)
    validate_scenario(scenario)
    return scenario


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_scenario(s: Scenario) -> None:
    obs = s.observable
    kind = obs.get("kind")
    if kind not in OBSERVABLE_KINDS:
        raise ValidationError(
            f"observable.kind: must be one of {OBSERVABLE_KINDS}, "
            f"got {kind!r}")

    for name, m in s.materials.items():
        hard = [v for v in validate_model(m) if "non-causal" not in v]
        if hard:
            raise ValidationError(f"materials.{name}: " + "; ".join(hard))
    for name, a in s.atoms.items():
        bad = validate_model(a.model)
        if bad:
            raise ValidationError(f"atoms.{name}: " + "; ".join(bad))

    for i, b in enumerate(s.bodies):
        refs = [b.material] if b.kind == "halfspace" \
            else [b.left_material, b.right_material]
        for ref in refs:
            if ref not in s.materials:
                raise ValidationError(
                    f"bodies.{i}: references unknown material {ref!r}")
        if b.kind == "cavity" and b.gap <= 0:
            raise ValidationError(f"bodies.{i}.gap: must be > 0")

    def need_atom(key):
        name = obs.get(key)
        if name not in s.atoms:
            raise ValidationError(
                f"observable.{key}: references unknown atom {name!r}")
        return name

    if kind == "casimir":
        cavities = [b for b in s.bodies if b.kind == "cavity"]
        if len(cavities) != 1:
            raise ValidationError(
                "observable.kind casimir requires exactly one cavity body")
    elif kind == "cp":
        halves = [b for b in s.bodies if b.kind == "halfspace"]
        if len(halves) != 1:
            raise ValidationError(
                "observable.kind cp requires exactly one halfspace body")
        name = need_atom("atom")
        if s.atoms[name].position[2] <= 0:
            raise ValidationError(
                f"atoms.{name}: atom is embedded in the medium (z <= 0); "
                "local-field corrections via the real-cavity model are "
                "required and not implemented")
    elif kind == "vdw2":
        a = need_atom("atom_a")
        b = need_atom("atom_b")
        if s.bodies:
            raise ValidationError(
                "observable.kind vdw2 is a free-space potential; "
                "remove bodies")
        pa, pb = s.atoms[a].position, s.atoms[b].position
        if pa == pb:
            raise ValidationError("vdw2: atoms must be at distinct positions")
    elif kind == "decay":
        name = need_atom("atom")
        env = obs.get("environment", "vacuum")
        if env not in ("vacuum", "halfspace"):
            raise ValidationError(
                "observable.environment: must be 'vacuum' or 'halfspace'")
        if env == "halfspace":
            halves = [b for b in s.bodies if b.kind == "halfspace"]
            if len(halves) != 1:
                raise ValidationError(
                    "decay in a halfspace environment requires exactly one "
                    "halfspace body")
            if s.atoms[name].position[2] <= 0:
                raise ValidationError(
                    f"atoms.{name}: atom is embedded in the medium (z <= 0); "
                    "local-field corrections via the real-cavity model are "
                    "required and not implemented")
    elif kind == "retarded_formula":
        if obs.get("variant") not in ("electric", "magnetic"):
            raise ValidationError(
                "observable.variant: must be 'electric' or 'magnetic'")
        for key in ("strength_a", "strength_b", "eps", "mu", "distance"):
            if key not in obs:
                raise ValidationError(f"observable.{key}: required")
        if obs["eps"] <= 0 or obs["mu"] <= 0 or obs["distance"] <= 0:
            raise ValidationError(
                "observable: eps, mu and distance must be > 0")


# ---------------------------------------------------------------------------
# Canonical file form, hashing, sweeps
# ---------------------------------------------------------------------------

def canonical_yaml(s: Scenario) -> str:
    return yaml.safe_dump(scenario_to_dict(s), sort_keys=True,
                          default_flow_style=False)


def scenario_hash(s: Scenario) -> str:
    return hashlib.sha256(canonical_yaml(s).encode()).hexdigest()[:16]


def load_scenario(path) -> Scenario:
    with open(path) as fh:
        try:
            data = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            loc = f" (line {mark.line + 1})" if mark else ""
            raise ValidationError(f"{path}: YAML parse error{loc}: {exc}")
    try:
        return scenario_from_dict(data)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w") as fh:
        fh.write(canonical_yaml(s))


def set_by_path(data: dict, path: str, value: float) -> None:
    """Assign a numeric value at a dotted path like 'bodies.0.gap' or
    'atoms.a.position.2' inside the scenario dict form."""
    parts = path.split(".")
    node = data
    for part in parts[:-1]:
        if isinstance(node, list):
            node = node[int(part)]
        elif isinstance(node, dict):
            if part not in node:
                raise ValidationError(f"sweep path {path!r}: no key {part!r}")
            node = node[part]
        else:
            raise ValidationError(f"sweep path {path!r}: cannot descend "
                                  f"into {type(node).__name__}")
    leaf = parts[-1]
    if isinstance(node, list):
        idx = int(leaf)
        if not isinstance(node[idx], (int, float)) \
                or isinstance(node[idx], bool):
            raise ValidationError(f"sweep path {path!r}: not numeric")
        node[idx] = value
    elif isinstance(node, dict):
        if leaf not in node or not isinstance(node[leaf], (int, float)) \
                or isinstance(node[leaf], bool):
            raise ValidationError(f"sweep path {path!r}: not a numeric field")
        node[leaf] = value
    else:
        raise ValidationError(f"sweep path {path!r}: cannot assign")


def si_output_factor(units: Units, unit_tag: str) -> float:
    """Multiplier taking a reduced-unit observable to SI, given omega_ref."""
    if units.system == "reduced":
        return 1.0
    w = units.omega_ref
    if unit_tag == "Pa":
        return HBAR_SI * w**4 / C_SI**3
    if unit_tag == "J":
        return HBAR_SI * w
    if unit_tag == "1/s":
        return w
    raise ValueError(f"unknown unit tag {unit_tag!r}")
