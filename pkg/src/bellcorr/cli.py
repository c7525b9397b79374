"""Command-line front end: figure-ready data for trajectories, contour maps
and bandwidth sweeps, plus single-state reports.

Times are always given as the dimensionless Gamma*t; Gamma itself is fixed
to 1.
"""
from __future__ import annotations

import argparse
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .bellstate import BellDiagonalState, check_physical, is_physical, sample_physical, to_density_matrix
from .channel import DephasingChannel, evolve
from .correlations import hs_discord_bell, measure_all, quantum_discord
from .critical import bandwidth_sweep, critical_time
from .errors import ConvergenceError, UnphysicalStateError
from .oracle import (
    min_hs_to_zero_discord,
    min_relative_entropy_to_classical,
    optimize_classical_correlation,
)

EXIT_INVALID = 2
EXIT_CONVERGENCE = 3

MEASURE_COLUMNS = ("D", "Q_R", "Q_S", "C", "I")


class InvalidInput(Exception):
    pass


def fmt(x):
    """12 significant digits, shortest form; lowercase nan; no negative zero."""
    if x is None:
        return "none"
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0.0:
        return "0"
    return f"{x:.12g}"


def _json_number(x):
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return None
    return float(fmt(x))


def _csv(header, rows, comments=()):
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(v) for v in row) + "\n")
    return buf.getvalue()


def _json(header, rows, meta):
    doc = {
        "meta": meta,
        "records": [{k: _json_number(v) for k, v in zip(header, row)} for row in rows],
    }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def _emit(args, header, rows, meta, comments=()):
    if args.format == "json":
        text = _json(header, rows, meta)
    else:
        text = _csv(header, rows, comments)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _state(args):
    try:
        state = BellDiagonalState(args.c1, args.c2, args.c3)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    try:
        check_physical(state)
    except UnphysicalStateError as exc:
        raise InvalidInput(str(exc)) from exc
    return state


def _channel(args):
    if args.markovian:
        return DephasingChannel.scaled(markovian=True)
    if not (args.ratio > 0 and math.isfinite(args.ratio)):
        raise InvalidInput(f"--ratio must be positive, got {args.ratio}")
    return DephasingChannel.scaled(args.ratio)


def _meta(args, **extra):
    config = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "out")}
    meta = {"version": __version__, "config": config}
    meta.update(extra)
    return meta


def _verify(state, seed, samples):
    """Oracle cross-check on the given state and on seeded random states."""
    rng = np.random.default_rng(seed)
    worst = {"C": 0.0, "Q_R": 0.0, "Q_S": 0.0}
    for st in [state] + sample_physical(rng, samples):
        m = measure_all(st)
        c_oracle, _ = optimize_classical_correlation(to_density_matrix(st))
        worst["C"] = max(worst["C"], abs(c_oracle - m.C))
        worst["Q_R"] = max(worst["Q_R"], abs(min_relative_entropy_to_classical(st) - m.Q_R))
        worst["Q_S"] = max(worst["Q_S"], abs(min_hs_to_zero_discord(st) - m.Q_S))
    return worst


def cmd_measures(args):
    state = _state(args)
    m = measure_all(state)
    header = ("c1", "c2", "c3") + MEASURE_COLUMNS
    row = state.c + tuple(getattr(m, k) for k in MEASURE_COLUMNS)
    extra, comments = {}, []
    if args.verify:
        worst = _verify(state, args.seed, args.samples)
        extra["verify"] = {k: _json_number(v) for k, v in worst.items()}
        comments = [f"verify max|dev| {k}={fmt(v)}" for k, v in worst.items()]
    _emit(args, header, [row], _meta(args, **extra), comments)


def _time_grid(args):
    if args.steps < 2:
        raise InvalidInput("--steps must be >= 2")
    if not (args.t_max >= 0 and math.isfinite(args.t_max)):
        raise InvalidInput("--t-max must be a non-negative number")
    return np.linspace(0.0, args.t_max, args.steps)


def trajectory_rows(state0, ch, times):
    rows = []
    for t in times:
        st = evolve(state0, ch, float(t))
        m = measure_all(st)
        rows.append((float(t),) + st.c + tuple(getattr(m, k) for k in MEASURE_COLUMNS))
    return rows


def cmd_trajectory(args):
    state0 = _state(args)
    ch = _channel(args)
    times = _time_grid(args)
    cp = critical_time(state0, ch)
    header = ("Gamma_t", "c1", "c2", "c3") + MEASURE_COLUMNS
    rows = trajectory_rows(state0, ch, times)
    comments = [f"tau_Gamma={fmt(cp.T)}"] if cp.exists else []
    _emit(args, header, rows, _meta(args, tau_Gamma=_json_number(cp.T)), comments)


def cmd_critical(args):
    state0 = _state(args)
    ch = _channel(args)
    cp = critical_time(state0, ch)
    header = ("tau_Gamma", "eta_Gamma", "lambert_arg")
    row = (cp.T, cp.eta_Gamma, cp.lambert_arg)
    _emit(args, header, [row], _meta(args, tau_Gamma=_json_number(cp.T)))


def contour_rows(c3, grid, measure):
    axis = np.linspace(-1.0, 1.0, grid)
    fn = quantum_discord if measure == "discord" else hs_discord_bell
    rows = []
    for c2 in axis:
        for c1 in axis:
            st = BellDiagonalState(c1, c2, c3)
            value = fn(st) if is_physical(st) else math.nan
            rows.append((float(c1), float(c2), value))
    return rows


def cmd_contour(args):
    if args.grid < 3 or args.grid % 2 == 0:
        raise InvalidInput(f"--grid must be odd and >= 3, got {args.grid}")
    if not abs(args.c3_fixed) <= 1.0:
        raise InvalidInput(f"--c3-fixed must lie in [-1, 1], got {args.c3_fixed}")
    rows = contour_rows(args.c3_fixed, args.grid, args.measure)
    _emit(args, ("c1", "c2", args.measure), rows, _meta(args))


def _sweep_ratios(args):
    if args.ratios is not None:
        try:
            ratios = [float(x) for x in args.ratios.split(",") if x.strip()]
        except ValueError as exc:
            raise InvalidInput(f"cannot parse --ratios: {exc}") from exc
    else:
        if args.points < 1:
            raise InvalidInput("--points must be >= 1")
        lo, hi = args.ratio_min, args.ratio_max
        if not (0 < lo <= hi):
            raise InvalidInput("need 0 < --ratio-min <= --ratio-max")
        if args.spacing == "log":
            ratios = list(np.geomspace(lo, hi, args.points))
        else:
            ratios = list(np.linspace(lo, hi, args.points))
    if not ratios:
        raise InvalidInput("empty bandwidth range")
    if any(not (r > 0 and math.isfinite(r)) for r in ratios):
        raise InvalidInput("bandwidth ratios must be positive and finite")
    return ratios


def cmd_bandwidth_sweep(args):
    ratios = _sweep_ratios(args)
    if args.eta_gamma is not None:
        eta_gamma = args.eta_gamma
    else:
        cp = critical_time(_state(args), DephasingChannel.scaled(markovian=True))
        if not cp.exists:
            raise InvalidInput("state has no sudden change; pass --eta-gamma explicitly")
        eta_gamma = cp.eta_Gamma
    if not eta_gamma > 0:
        raise InvalidInput("--eta-gamma must be positive")
    rows = bandwidth_sweep(ratios, eta_gamma)
    _emit(args, ("gamma_over_Gamma", "T"), rows, _meta(args, eta_Gamma=_json_number(eta_gamma)))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--c1", type=float, default=0.8)
    common.add_argument("--c2", type=float, default=-0.4)
    common.add_argument("--c3", type=float, default=0.5)
    noise = common.add_mutually_exclusive_group()
    noise.add_argument("--ratio", type=float, default=0.1, help="bandwidth ratio gamma/Gamma")
    noise.add_argument("--markovian", action="store_true", help="use the Markovian limit")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--seed", type=int, default=0, help="seed for --verify sampling")

    parser = argparse.ArgumentParser(
        prog="bellcorr",
        description="Discord measures of Bell-diagonal states under non-Markovian dephasing.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", parents=[common], help="all measures for one state")
    p.add_argument("--verify", action="store_true", help="cross-check against brute-force oracles")
    p.add_argument("--samples", type=int, default=20, help="random states checked by --verify")
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("trajectory", parents=[common], help="measures along a dephasing trajectory")
    p.add_argument("--t-max", type=float, default=5.0, help="largest Gamma*t")
    p.add_argument("--steps", type=int, default=501, help="number of time points")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("critical", parents=[common], help="sudden-change time Gamma*tau")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("contour", parents=[common], help="measure over the (c1, c2) plane")
    p.add_argument("--grid", type=int, default=201)
    p.add_argument("--c3-fixed", type=float, default=0.5)
    p.add_argument("--measure", choices=("discord", "hs"), default="discord")
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("bandwidth-sweep", parents=[common], help="Gamma*tau against gamma/Gamma")
    p.add_argument("--ratios", help="comma-separated list of gamma/Gamma values")
    p.add_argument("--ratio-min", type=float, default=0.01)
    p.add_argument("--ratio-max", type=float, default=100.0)
    p.add_argument("--points", type=int, default=60)
    p.add_argument("--spacing", choices=("log", "linear"), default="log")
    p.add_argument("--eta-gamma", type=float, default=None,
                   help="Gamma*eta; defaults to -ln|c3/c1| of the given state")
    p.set_defaults(func=cmd_bandwidth_sweep)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    return 0


if __name__ == "__main__":
    sys.exit(main())
