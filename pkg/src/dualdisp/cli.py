"""Command-line front end.

Commands: compute, dualize, verify-duality, sweep.
Exit codes: 0 success, 1 validation error, 2 quadrature failure,
3 duality-verification failure.
"""

from __future__ import annotations

import argparse
import copy
import csv
import math
import os
import sys

import numpy as np
import yaml

from .duality import dualize_scenario
from .quadrature import QuadratureError
from .runner import compute_observable, result_record, verify_duality
from .scenario import (ValidationError, canonical_yaml, load_scenario,
                       scenario_from_dict, scenario_to_dict, set_by_path)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_QUADRATURE = 2
EXIT_DUALITY = 3

JOBS_ENV_VAR = "DUALDISP_JOBS"


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV_VAR, "1")))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dualdisp",
        description="Dispersion forces and decay rates for planar "
                    "magnetoelectrics, with electric-magnetic duality "
                    "verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute the scenario's observable")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("dualize",
                       help="emit the theta = pi/2 dual scenario file")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify-duality",
                       help="compute the observable for the scenario and "
                            "its dual and compare")
    p.add_argument("--scenario", required=True)
    p.add_argument("--rtol", type=float, default=1e-8)
    p.add_argument("--out", default=None)

    p = sub.add_parser("sweep", help="sweep a numeric scenario parameter "
                                     "and write a CSV table")
    p.add_argument("--scenario", required=True)
    p.add_argument("--param", required=True,
                   help="dotted path, e.g. bodies.0.gap or atoms.a.position.2")
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--log", action="store_true",
                   help="logarithmic grid spacing")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--plot", default=None,
                   help="also render a figure of |value| vs parameter")
    p.add_argument("--jobs", type=int, default=None,
                   help=f"parallel workers (default ${JOBS_ENV_VAR} or 1)")
    return parser


def cmd_compute(args) -> int:
    scenario = load_scenario(args.scenario)
    try:
        result = compute_observable(scenario)
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    record = result_record(scenario, result)
    with open(args.out, "w") as fh:
        yaml.safe_dump(record, fh, sort_keys=True)
    print(f"{record['value']:.12e} {record['unit']} "
          f"(+/- {record['quadrature_error']:.2e})")
    return EXIT_OK


def cmd_dualize(args) -> int:
    scenario = load_scenario(args.scenario)
    dual = dualize_scenario(scenario)
    with open(args.out, "w") as fh:
        fh.write(canonical_yaml(dual))
    print(f"wrote dual scenario to {args.out}")
    return EXIT_OK


def cmd_verify_duality(args) -> int:
    scenario = load_scenario(args.scenario)
    try:
        report = verify_duality(scenario, rtol=args.rtol)
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE
    if args.out:
        with open(args.out, "w") as fh:
            yaml.safe_dump(report.to_dict(), fh, sort_keys=True)
    status = "PASS" if report.passed else "FAIL"
    print(f"{status} value={report.value:.12e} dual={report.dual_value:.12e} "
          f"rel_diff={report.rel_difference:.3e} rtol={report.rtol:.1e}")
    return EXIT_OK if report.passed else EXIT_DUALITY


def _sweep_point(base_dict, param, value):
    data = copy.deepcopy(base_dict)
    set_by_path(data, param, float(value))
    scenario = scenario_from_dict(data)
    result = compute_observable(scenario)
    record = result_record(scenario, result)
    return record["value"], record["quadrature_error"], record["unit"]


def cmd_sweep(args) -> int:
    scenario = load_scenario(args.scenario)
    if args.points < 1:
        raise ValidationError("--points must be >= 1")
    base_dict = scenario_to_dict(scenario)

    if args.log:
        if args.start <= 0 or args.stop <= 0:
            raise ValidationError("--log requires positive bounds")
        grid = np.geomspace(args.start, args.stop, args.points)
    else:
        grid = np.linspace(args.start, args.stop, args.points)
    # probe the path once so bad paths fail before any computation
    probe = copy.deepcopy(base_dict)
    set_by_path(probe, args.param, float(grid[0]))

    jobs = args.jobs if args.jobs is not None else _default_jobs()
    try:
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(
                    _sweep_point,
                    [base_dict] * len(grid), [args.param] * len(grid), grid))
        else:
            rows = [_sweep_point(base_dict, args.param, g) for g in grid]
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return EXIT_QUADRATURE

    unit = rows[0][2] if rows else ""
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["parameter", "value", "error"])
        for g, (value, error, _) in zip(grid, rows):
            writer.writerow([repr(float(g)), repr(value), repr(error)])
    print(f"wrote {len(grid)} rows to {args.out}")

    if args.plot:
        from .plotting import render_sweep_figure
        render_sweep_figure(list(map(float, grid)),
                            [r[0] for r in rows], [r[1] for r in rows],
                            args.param, unit, args.plot, log_axes=args.log)
        print(f"wrote figure to {args.plot}")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {
        "compute": cmd_compute,
        "dualize": cmd_dualize,
        "verify-duality": cmd_verify_duality,
        "sweep": cmd_sweep,
    }[args.command]
    try:
        return handler(args)
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
