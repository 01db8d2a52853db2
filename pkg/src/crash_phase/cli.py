"""Command-line front end.

Exit codes: 0 clean / no collision, 10 collision, 11 sweep disagreement,
2 usage error, 3 I/O error, 4 fleet data error.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from pathlib import Path

from . import kinematics as kin
from .errors import ConfigError, DomainError, FleetParseError
from .fleet import REFERENCE_SPEED, generate_synthetic_fleet, parse_fleet_csv, write_fleet_csv
from .kinematics import BrakingScenario
from .oracle import OracleConfig, simulate
from .predictor import predicts_collision, stopping_margin
from .solver import analyze
from .sweep import DEFAULT_TR_GRID, SweepConfig, run_sweep

EXIT_OK = 0
EXIT_COLLISION = 10
EXIT_DISAGREEMENT = 11
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_DATA = 4

TRAJECTORY_COLUMNS = ["t", "lead_pos", "ego_pos", "lead_vel", "ego_vel", "gap"]

# options whose values may legitimately start with "-"
_SIGNED_OPTS = ("--a-range",)


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _range(text: str) -> tuple[float, float]:
    values = _float_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return values[0], values[1]


def _add_scenario_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--vc", type=float, required=True, help="cruise speed (km/h unless --si)")
    p.add_argument("--si", action="store_true", help="speeds are in m/s")
    p.add_argument("--tr", type=float, required=True, help="ego reaction time, s")
    p.add_argument("--al", type=float, required=True, help="lead braking magnitude, m/s^2 (positive)")
    p.add_argument("--ae", type=float, required=True, help="ego braking magnitude, m/s^2 (positive)")
    p.add_argument("--d-default", type=float, default=10.0, help="default spacing, m")
    p.add_argument("--t-gap", type=float, default=1.4, help="time gap, s")
    p.add_argument("--d-override", type=float, default=None, help="explicit initial gap, m")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crash-phase",
                                     description="Two-vehicle hard-brake collision analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="exact verdict, screen and optional oracle for one scenario")
    _add_scenario_args(p)
    p.add_argument("--traj", type=Path, default=None, metavar="PATH", help="also write a trajectory CSV")
    p.add_argument("--oracle", action="store_true", help="also run the time-stepping simulator")
    p.add_argument("--oracle-dt", type=float, default=1e-4)

    p = sub.add_parser("trajectory", help="write lead/ego position series as CSV")
    _add_scenario_args(p)
    p.add_argument("--out", type=Path, required=True, metavar="PATH")
    p.add_argument("--dt-sample", type=float, default=0.01)
    p.add_argument("--t-max", type=float, default=None)

    p = sub.add_parser("sweep", help="pairwise fleet consistency experiment")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--fleet", type=Path, metavar="PATH", help="fleet CSV")
    src.add_argument("--synthetic", type=int, metavar="N", help="generate N synthetic vehicles")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a-range", type=_range, default=(-11.91, -7.7), metavar="LO,HI")
    p.add_argument("--tr-grid", type=_float_list, default=list(DEFAULT_TR_GRID))
    p.add_argument("--vc", type=float, default=100.0, help="cruise speed (km/h unless --si)")
    p.add_argument("--si", action="store_true")
    p.add_argument("--d-default", type=float, default=10.0)
    p.add_argument("--t-gap", type=float, default=1.4)
    p.add_argument("--include-self-pairs", action="store_true")
    p.add_argument("--oracle-fraction", type=float, default=0.0)
    p.add_argument("--v0", type=float, default=REFERENCE_SPEED,
                   help="reference speed of the fleet CSV stopping distances, m/s")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", type=Path, default=None, metavar="PATH", help="report JSON (default stdout)")
    p.add_argument("--disagreements", type=Path, default=None, metavar="PATH")

    p = sub.add_parser("gen-fleet", help="write a synthetic fleet CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--a-range", type=_range, default=(-11.91, -7.7), metavar="LO,HI")
    p.add_argument("--v0", type=float, default=REFERENCE_SPEED)
    p.add_argument("--out", type=Path, required=True, metavar="PATH")
    return parser


def _join_signed(argv: list[str]) -> list[str]:
    out = []
    it = iter(argv)
    for arg in it:
        if arg in _SIGNED_OPTS:
            nxt = next(it, None)
            out.append(arg if nxt is None else f"{arg}={nxt}")
        else:
            out.append(arg)
    return out


def _speed(args) -> float:
    return args.vc if args.si else args.vc * kin.KMH


def _scenario(args) -> BrakingScenario:
    if args.al <= 0 or args.ae <= 0:
        raise UsageError("--al and --ae are braking magnitudes and must be positive")
    return BrakingScenario(_speed(args), args.tr, -args.al, -args.ae,
                           d_default=args.d_default, t_gap=args.t_gap, d_override=args.d_override)


def trajectory_rows(s: BrakingScenario, dt_sample: float = 0.01, t_max: float | None = None) -> list[list[float]]:
    """Closed-form samples on ``k * dt_sample`` up to contact or until both vehicles rest.

    The last row sits exactly at the end time (contact instant or last stop).
    """
    if not dt_sample > 0:
        raise UsageError("--dt-sample must be positive")
    verdict = analyze(s)
    if verdict.collides:
        t_end = verdict.t_c
    else:
        t_end = max(verdict.timeline.t_sl, verdict.timeline.t_se)
    if t_max is not None:
        if not t_max > 0:
            raise UsageError("--t-max must be positive")
        t_end = min(t_end, t_max)
    times = []
    k = 0
    while k * dt_sample < t_end:
        times.append(k * dt_sample)
        k += 1
    times.append(t_end)
    rows = []
    for t in times:
        smp = kin.sample(t, s)
        rows.append([t, smp.lead_pos, smp.ego_pos, smp.lead_vel, smp.ego_vel, smp.gap])
    return rows


def _write_trajectory(path: Path, rows: list[list[float]]) -> None:
    lines = [",".join(TRAJECTORY_COLUMNS)]
    lines += [",".join(f"{x:.10g}" for x in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


def cmd_analyze(args) -> int:
    s = _scenario(args)
    verdict = analyze(s)
    out = {
        "scenario": s.to_dict(),
        "timeline": verdict.timeline.to_dict(),
        "verdict": verdict.to_dict(),
        "predictor": {
            "collides": predicts_collision(s),
            "ego_stop_position": kin.ego_stop_position(s),
            "lead_stop_position": kin.lead_stop_position(s),
            "margin": stopping_margin(s),
            "agrees_with_exact": predicts_collision(s) == verdict.collides,
        },
    }
    if args.oracle:
        res = simulate(s, OracleConfig(dt=args.oracle_dt))
        out["oracle"] = {"dt": args.oracle_dt, "min_gap": res.min_gap, **res.verdict.to_dict()}
    if args.traj is not None:
        _write_trajectory(args.traj, trajectory_rows(s))
    print(json.dumps(out, indent=2))
    return EXIT_COLLISION if verdict.collides else EXIT_OK


def cmd_trajectory(args) -> int:
    s = _scenario(args)
    _write_trajectory(args.out, trajectory_rows(s, args.dt_sample, args.t_max))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.fleet is not None:
        try:
            with open(args.fleet, encoding="utf-8", newline="") as fh:
                fleet = parse_fleet_csv(fh, v0=args.v0)
        except FleetParseError as exc:
            print(f"fleet error in {args.fleet}: {exc}", file=sys.stderr)
            return EXIT_DATA
        if not fleet:
            print(f"fleet error in {args.fleet}: no vehicles", file=sys.stderr)
            return EXIT_DATA
    else:
        if args.synthetic < 1:
            raise UsageError("--synthetic must be >= 1")
        fleet = generate_synthetic_fleet(args.synthetic, *args.a_range, seed=args.seed)
    cfg = SweepConfig(v_c=_speed(args), t_r_grid=tuple(args.tr_grid), d_default=args.d_default,
                      t_gap=args.t_gap, include_self_pairs=args.include_self_pairs,
                      oracle_check_fraction=args.oracle_fraction)
    report = run_sweep(fleet, cfg, workers=args.workers)
    text = json.dumps(report.to_dict(cfg, fleet_size=len(fleet)), indent=2)
    if args.out is None:
        print(text)
    else:
        args.out.write_text(text + "\n")
    if args.disagreements is not None:
        buf = io.StringIO()
        report.write_disagreements_csv(buf)
        args.disagreements.write_text(buf.getvalue())
    return EXIT_DISAGREEMENT if report.disagreements else EXIT_OK


def cmd_gen_fleet(args) -> int:
    fleet = generate_synthetic_fleet(args.n, *args.a_range, seed=args.seed)
    buf = io.StringIO()
    write_fleet_csv(fleet, buf, v0=args.v0)
    args.out.write_text(buf.getvalue())
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "trajectory": cmd_trajectory,
    "sweep": cmd_sweep,
    "gen-fleet": cmd_gen_fleet,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_signed(argv))
    try:
        return COMMANDS[args.command](args)
    except (UsageError, DomainError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
