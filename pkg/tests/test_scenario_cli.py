"""Scenario files, validation, canonical serialization, and the CLI."""

import csv
import math

import pytest
import yaml

from dualdisp.cli import (EXIT_DUALITY, EXIT_OK, EXIT_QUADRATURE,
                          EXIT_VALIDATION, main)
from dualdisp.runner import compute_observable
from dualdisp.scenario import (Scenario, Units, ValidationError,
                               canonical_yaml, load_scenario,
                               scenario_from_dict, scenario_hash, set_by_path,
                               si_output_factor)

OSC = {"oscillators": [{"omega_p": 1.0, "omega_t": 0.8, "gamma": 0.1}]}


def mirror_cavity_dict(gap=1.0, right="electric"):
    return {
        "schema_version": 1,
        "units": {"system": "reduced", "omega_ref": 1.0},
        "materials": {"left": {"mirror": "electric"},
                      "right": {"mirror": right}},
        "bodies": [{"kind": "cavity", "left_material": "left",
                    "right_material": "right", "gap": gap}],
        "atoms": {},
        "observable": {"kind": "casimir"},
        "quadrature": {"rel_tol": 1e-8, "abs_tol": 1e-300,
                       "max_subdivisions": 200, "transform": "exp_decay"},
    }


def cp_dict():
    return {
        "schema_version": 1,
        "materials": {"plate": {"permittivity": OSC,
                                "permeability": {"oscillators": []}}},
        "bodies": [{"kind": "halfspace", "material": "plate"}],
        "atoms": {"a": {"polarizability": [{"strength": 0.01, "omega": 1.0}],
                        "magnetizability": [],
                        "transitions": [],
                        "position": [0.0, 0.0, 1.0]}},
        "observable": {"kind": "cp", "atom": "a"},
        "quadrature": {"rel_tol": 1e-8, "abs_tol": 1e-300,
                       "max_subdivisions": 200, "transform": "exp_decay"},
    }


def vdw2_dict(r=30.0, rel_tol=1e-8):
    return {
        "schema_version": 1,
        "materials": {},
        "bodies": [],
        "atoms": {
            "a": {"polarizability": [{"strength": 0.01, "omega": 1.0}],
                  "magnetizability": [{"strength": 0.002, "omega": 1.4}],
                  "transitions": [], "position": [0.0, 0.0, 0.0]},
            "b": {"polarizability": [{"strength": 0.01, "omega": 1.0}],
                  "magnetizability": [], "transitions": [],
                  "position": [0.0, 0.0, r]},
        },
        "observable": {"kind": "vdw2", "atom_a": "a", "atom_b": "b"},
        "quadrature": {"rel_tol": rel_tol, "abs_tol": 1e-300,
                       "max_subdivisions": 200, "transform": "exp_decay"},
    }


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(data, sort_keys=True))
    return str(path)


# ---------------------------------------------------------------------------
# serialization and validation
# ---------------------------------------------------------------------------

def test_round_trip_is_canonical():
    s = scenario_from_dict(cp_dict())
    text = canonical_yaml(s)
    again = scenario_from_dict(yaml.safe_load(text))
    assert canonical_yaml(again) == text
    assert scenario_hash(again) == scenario_hash(s)


def test_hash_tracks_content():
    a = scenario_from_dict(cp_dict())
    changed = cp_dict()
    changed["atoms"]["a"]["position"] = [0.0, 0.0, 2.0]
    b = scenario_from_dict(changed)
    assert scenario_hash(a) != scenario_hash(b)
    assert len(scenario_hash(a)) == 16


def test_missing_material_names_the_reference():
    data = cp_dict()
    data["bodies"][0]["material"] = "unobtanium"
    with pytest.raises(ValidationError) as excinfo:
        scenario_from_dict(data)
    assert "unobtanium" in str(excinfo.value)


def test_vdw2_rejects_bodies():
    data = vdw2_dict()
    data["materials"] = {"plate": {"mirror": "electric"}}
    data["bodies"] = [{"kind": "halfspace", "material": "plate"}]
    with pytest.raises(ValidationError):
        scenario_from_dict(data)


def test_embedded_atom_rejected_with_real_cavity_message():
    data = cp_dict()
    data["atoms"]["a"]["position"] = [0.0, 0.0, -1.0]
    with pytest.raises(ValidationError) as excinfo:
        scenario_from_dict(data)
    assert "real-cavity" in str(excinfo.value)


def test_unknown_observable_kind_rejected():
    data = cp_dict()
    data["observable"]["kind"] = "torque"
    with pytest.raises(ValidationError):
        scenario_from_dict(data)


def test_unsupported_schema_version_rejected():
    data = cp_dict()
    data["schema_version"] = 99
    with pytest.raises(ValidationError):
        scenario_from_dict(data)


def test_nonpositive_gap_rejected():
    data = mirror_cavity_dict(gap=-1.0)
    with pytest.raises(ValidationError):
        scenario_from_dict(data)


def test_set_by_path():
    data = mirror_cavity_dict()
    set_by_path(data, "bodies.0.gap", 2.5)
    assert data["bodies"][0]["gap"] == 2.5
    with pytest.raises(ValidationError):
        set_by_path(data, "bodies.0.kind", 1.0)  # not numeric
    with pytest.raises(ValidationError):
        set_by_path(data, "nowhere.at.all", 1.0)


def test_si_output_factors():
    reduced = Units(system="reduced", omega_ref=1e15)
    assert si_output_factor(reduced, "Pa") == 1.0
    si = Units(system="SI", omega_ref=1e15)
    assert si_output_factor(si, "J") == pytest.approx(1.054571817e-19)
    assert si_output_factor(si, "1/s") == 1e15
    assert si_output_factor(si, "Pa") > 0.0
    with pytest.raises(ValueError):
        si_output_factor(si, "furlongs")


def test_load_scenario_reports_parse_location(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("observable: {kind: casimir\nbodies: []\n")
    with pytest.raises(ValidationError) as excinfo:
        load_scenario(path)
    assert "line" in str(excinfo.value)


def test_broken_dual_pair_is_detectable():
    # Swapping eps <-> mu on only one plate of an asymmetric cavity is NOT a
    # duality transformation; the two pressures differ measurably.
    data = mirror_cavity_dict(gap=1.0, right="electric")
    data["materials"]["left"] = {"permittivity": OSC,
                                 "permeability": {"oscillators": []}}
    s = scenario_from_dict(data)
    broken = mirror_cavity_dict(gap=1.0, right="electric")
    broken["materials"]["left"] = {"permittivity": {"oscillators": []},
                                   "permeability": OSC}
    s_broken = scenario_from_dict(broken)
    v = compute_observable(s).value
    v_broken = compute_observable(s_broken).value
    assert abs(v - v_broken) > 1e-6 * max(abs(v), abs(v_broken))


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_cli_compute_vacuum_cavity_zero(tmp_path):
    data = mirror_cavity_dict()
    data["materials"]["left"] = {"permittivity": {"oscillators": []},
                                 "permeability": {"oscillators": []}}
    scenario = write(tmp_path, "s.yaml", data)
    out = str(tmp_path / "result.yaml")
    assert main(["compute", "--scenario", scenario, "--out", out]) == EXIT_OK
    record = yaml.safe_load(open(out))
    assert record["value"] == 0.0


def test_cli_compute_ideal_mirror_cavity(tmp_path):
    scenario = write(tmp_path, "s.yaml", mirror_cavity_dict(gap=1.0))
    out = str(tmp_path / "result.yaml")
    assert main(["compute", "--scenario", scenario, "--out", out]) == EXIT_OK
    record = yaml.safe_load(open(out))
    assert math.isclose(record["value"], -math.pi**2 / 240.0, rel_tol=1e-4)
    assert record["quadrature_error"] > 0.0
    assert record["unit"] == "Pa"
    assert len(record["scenario_hash"]) == 16


def test_cli_validation_exit_code(tmp_path):
    data = cp_dict()
    data["bodies"][0]["material"] = "missing"
    scenario = write(tmp_path, "s.yaml", data)
    code = main(["compute", "--scenario", scenario,
                 "--out", str(tmp_path / "r.yaml")])
    assert code == EXIT_VALIDATION


def test_cli_quadrature_failure_exit_code(tmp_path):
    data = mirror_cavity_dict()
    data["quadrature"] = {"rel_tol": 1e-13, "abs_tol": 1e-300,
                          "max_subdivisions": 1, "transform": "exp_decay"}
    scenario = write(tmp_path, "s.yaml", data)
    code = main(["compute", "--scenario", scenario,
                 "--out", str(tmp_path / "r.yaml")])
    assert code == EXIT_QUADRATURE


def test_cli_dualize_is_involution(tmp_path):
    scenario = write(tmp_path, "s.yaml", cp_dict())
    once = str(tmp_path / "dual.yaml")
    twice = str(tmp_path / "dual2.yaml")
    assert main(["dualize", "--scenario", scenario, "--out", once]) == EXIT_OK
    assert main(["dualize", "--scenario", once, "--out", twice]) == EXIT_OK
    original = canonical_yaml(load_scenario(scenario))
    assert open(twice).read() == original
    # and the single application really moved the response functions
    dual = load_scenario(once)
    assert dual.materials["plate"].permittivity.oscillators == ()
    assert dual.materials["plate"].permeability.oscillators != ()


def test_cli_verify_duality_passes(tmp_path):
    scenario = write(tmp_path, "s.yaml", cp_dict())
    report_path = str(tmp_path / "report.yaml")
    code = main(["verify-duality", "--scenario", scenario,
                 "--rtol", "1e-8", "--out", report_path])
    assert code == EXIT_OK
    report = yaml.safe_load(open(report_path))
    assert report["passed"] is True
    assert report["rel_difference"] <= 1e-8


def test_cli_verify_duality_failure_exit_code(tmp_path):
    # an absurdly tight rtol turns benign last-bit quadrature noise into a
    # reported failure, exercising the dedicated exit code
    scenario = write(tmp_path, "s.yaml", vdw2_dict(r=2.0, rel_tol=1e-10))
    code = main(["verify-duality", "--scenario", scenario,
                 "--rtol", "1e-300"])
    assert code == EXIT_DUALITY


def test_cli_sweep_gap_power_law(tmp_path):
    scenario = write(tmp_path, "s.yaml", mirror_cavity_dict())
    out = str(tmp_path / "sweep.csv")
    code = main(["sweep", "--scenario", scenario, "--param", "bodies.0.gap",
                 "--from", "1.0", "--to", "2.0", "--points", "2",
                 "--out", out])
    assert code == EXIT_OK
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["parameter", "value", "error"]
    assert len(rows) == 3
    v1, v2 = float(rows[1][1]), float(rows[2][1])
    assert math.isclose(abs(v1) / abs(v2), 16.0, rel_tol=1e-4)


def test_cli_sweep_retarded_slope(tmp_path):
    scenario = write(tmp_path, "s.yaml", vdw2_dict(r=30.0))
    out = str(tmp_path / "sweep.csv")
    code = main(["sweep", "--scenario", scenario,
                 "--param", "atoms.b.position.2",
                 "--from", "30.0", "--to", "60.0", "--points", "4", "--log",
                 "--out", out])
    assert code == EXIT_OK
    with open(out) as fh:
        rows = list(csv.reader(fh))[1:]
    xs = [math.log(float(r[0])) for r in rows]
    ys = [math.log(abs(float(r[1]))) for r in rows]
    n = len(xs)
    mean_x, mean_y = sum(xs) / n, sum(ys) / n
    slope = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys)) \
        / sum((x - mean_x) ** 2 for x in xs)
    assert abs(slope + 7.0) < 0.07


def test_cli_sweep_zero_points_rejected(tmp_path):
    scenario = write(tmp_path, "s.yaml", mirror_cavity_dict())
    code = main(["sweep", "--scenario", scenario, "--param", "bodies.0.gap",
                 "--from", "1.0", "--to", "2.0", "--points", "0",
                 "--out", str(tmp_path / "s.csv")])
    assert code == EXIT_VALIDATION


def test_cli_sweep_bad_param_path_rejected(tmp_path):
    scenario = write(tmp_path, "s.yaml", mirror_cavity_dict())
    code = main(["sweep", "--scenario", scenario, "--param", "bodies.0.nope",
                 "--from", "1.0", "--to", "2.0", "--points", "2",
                 "--out", str(tmp_path / "s.csv")])
    assert code == EXIT_VALIDATION


def test_cli_sweep_renders_figure(tmp_path):
    scenario = write(tmp_path, "s.yaml", mirror_cavity_dict())
    out = str(tmp_path / "sweep.csv")
    figure = str(tmp_path / "sweep.png")
    code = main(["sweep", "--scenario", scenario, "--param", "bodies.0.gap",
                 "--from", "1.0", "--to", "2.0", "--points", "2",
                 "--out", out, "--plot", figure])
    assert code == EXIT_OK
    assert (tmp_path / "sweep.png").stat().st_size > 0
