"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from .errors import QuditLabError
from .pulses import gate_library, parse_bitstring, run_parity_algorithm
from .thermal import DEFAULT_POINTS, DEFAULT_TMAX, DEFAULT_TMIN, default_grid, information_sweep
from .verify import run_verification
from .well import WellSpec, dipole_matrix, solve_bound_states

CSV_COLUMNS = ("T", "I_AB", "I_AC", "I_BC", "I_AB_given_C", "I_AC_given_B", "I_BC_given_A")


class UsageError(QuditLabError):
    pass


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _well(args) -> WellSpec:
    return WellSpec(depth=args.depth, width=args.width, mass=args.mass)


def _require_format(args, *allowed: str) -> str:
    fmt = args.format or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"{args.command} supports --format {'|'.join(allowed)}, got {fmt}")
    return fmt


def _seven_states(spec: WellSpec):
    states = solve_bound_states(spec)
    if len(states) < 7:
        raise QuditLabError(f"well holds {len(states)} bound states; seven are required")
    return states[:7]


def well_payload(spec: WellSpec) -> dict:
    states = solve_bound_states(spec)
    return {
        "states": [
            {"n": s.n, "E": s.energy, "parity": s.parity, "k": s.k, "kappa": s.kappa}
            for s in states
        ],
        "dipole": dipole_matrix(states).tolist(),
    }


def sweep_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([f"{v:.12g}" for v in (r.T, *r.values())])
    return buf.getvalue()


def gates_payload(spec: WellSpec) -> list[dict]:
    dipole = dipole_matrix(_seven_states(spec))
    out = []
    for gate in gate_library().values():
        sched = gate.schedule.pulses if gate.schedule is not None else ()
        out.append(
            {
                "name": gate.name,
                "matrix": [[[z.real, z.imag] for z in row] for row in gate.matrix],
                "schedule": [
                    {"n": p.n, "m": p.m, "theta": p.theta, "duration": p.duration(dipole)}
                    for p in sched
                ],
                "global_phase": gate.global_phase,
            }
        )
    return out


def cmd_solve_well(args) -> int:
    _require_format(args, "json")
    _emit(_json(well_payload(_well(args))), args.out)
    return 0


def cmd_thermal_sweep(args) -> int:
    fmt = _require_format(args, "csv", "json")
    energies = [s.energy for s in _seven_states(_well(args))]
    records = information_sweep(energies, default_grid(args.tmin, args.tmax, args.points))
    if fmt == "csv":
        text = sweep_csv(records)
    else:
        text = _json([dict(zip(CSV_COLUMNS, (r.T, *r.values()))) for r in records])
    _emit(text, args.out)
    return 0


def cmd_parity(args) -> int:
    if args.string is None:
        raise UsageError("parity requires --string")
    bits = parse_bitstring(args.string)
    write_json = args.out not in (None, "-")
    if write_json:
        _require_format(args, "json")
    dipole = dipole_matrix(_seven_states(_well(args))) if args.level == "pulse" else None
    res = run_parity_algorithm(bits, args.level, dipole)
    lines = [
        f"string: {''.join(map(str, bits))}",
        f"level: {res.level}",
        f"outcome: {res.outcome}",
        f"global_phase: {res.global_phase:+d}",
        f"oracle_queries: {res.oracle_queries}",
        "amplitudes:",
    ]
    lines += [f"  |{n}>: {z.real:+.12f} {z.imag:+.12f}j" for n, z in enumerate(res.final_state, start=1)]
    sys.stdout.write("\n".join(lines) + "\n")
    if write_json:
        payload = {
            "string": "".join(map(str, bits)),
            "level": res.level,
            "outcome": res.outcome,
            "global_phase": res.global_phase,
            "oracle_queries": res.oracle_queries,
            "final_state": [[z.real, z.imag] for z in res.final_state],
        }
        _emit(_json(payload), args.out)
    return 0


def cmd_gates_dump(args) -> int:
    _require_format(args, "json")
    _emit(_json(gates_payload(_well(args))), args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_verification(_well(args))
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        sys.stdout.write(f"{status}  {r.name}: {r.passed}/{r.total}\n")
    failed = sum(not r.ok for r in results)
    sys.stdout.write(f"{len(results) - failed} passed, {failed} failed\n")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=float, default=200.0, help="well depth V0 (positive)")
    common.add_argument("--width", type=float, default=1.0)
    common.add_argument("--mass", type=float, default=1.0)
    common.add_argument("--out", default=None, help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    parser = argparse.ArgumentParser(prog="qudit-lab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-well", parents=[common], help="bound states and dipole matrix as JSON")
    p.set_defaults(func=cmd_solve_well)

    p = sub.add_parser("thermal-sweep", parents=[common], help="information quantities vs temperature")
    p.add_argument("--tmin", type=float, default=DEFAULT_TMIN)
    p.add_argument("--tmax", type=float, default=DEFAULT_TMAX)
    p.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p.set_defaults(func=cmd_thermal_sweep)

    p = sub.add_parser("parity", parents=[common], help="run the parity algorithm on a 6-bit string")
    p.add_argument("--string", default=None)
    p.add_argument("--level", choices=("gate", "pulse"), default="gate")
    p.set_defaults(func=cmd_parity)

    p = sub.add_parser("gates-dump", parents=[common], help="gate matrices and pulse schedules as JSON")
    p.set_defaults(func=cmd_gates_dump)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except QuditLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
