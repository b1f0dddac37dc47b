"""Command-line interface: simulation, checks, limit tables, figure data.

All subcommands are deterministic (no randomness exists anywhere in the
package), so rerunning a command with the same arguments produces
byte-identical output.  Exit codes: 0 success, 1 validation or I/O
error, 2 tolerance failure in check-style commands.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import math
import sys
from typing import Callable, Sequence

import numpy as np

from .analysis import (
    limit_moment,
    localized_mass,
    mass_trace,
    moment,
    rescaled_cdf_distance,
)
from .coin import Schedule, WalkParams
from .dynamics import (
    StateVector,
    distribution,
    evolve,
    initial_state,
    max_time_cap,
    step,
)
from .limits import LimitDensity, delta_mass, limit_masses
from .spectral import eigensystem, spectral_evolve

__all__ = ["EmptyOutput", "emit", "main"]

SPECTRAL_CHECK_TOL = 1e-10

_SYMMETRIC = (complex(1.0 / math.sqrt(2.0), 0.0), complex(0.0, 1.0 / math.sqrt(2.0)))
_UP = (complex(1.0, 0.0), complex(0.0, 0.0))


class EmptyOutput(ValueError):
    """Raised when a command would write a table with no rows."""


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def emit(data, fmt: str = "csv", path: str | None = None, meta: dict | None = None) -> None:
    """Write rows (list of dicts) or a flat object (dict) to ``path``.

    CSV output has a header row, LF newlines and floats with 17
    significant digits (round-trip exact); ``meta`` entries become
    leading ``# key = value`` comment lines.  JSON output round-trips
    floats exactly as well; for row data ``meta`` wraps the rows in an
    object, for a flat object it is merged in front.
    """
    if not data:
        raise EmptyOutput("refusing to emit an empty table")
    if fmt == "csv":
        if isinstance(data, dict):
            raise ValueError("csv output requires row data, not a flat object")
        lines = []
        if meta:
            lines.extend(f"# {k} = {_fmt(v)}" for k, v in meta.items())
        keys = list(data[0])
        lines.append(",".join(keys))
        lines.extend(",".join(_fmt(row[k]) for k in keys) for row in data)
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        if isinstance(data, dict):
            payload = {**meta, **data} if meta else data
        elif meta:
            payload = {**meta, "rows": data}
        else:
            payload = data
        text = json.dumps(payload, indent=2) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


class _Parser(argparse.ArgumentParser):
    # Usage errors exit 1; the default ArgumentParser would exit 2,
    # which is reserved for tolerance failures here.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _parse_complex_pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(
            f"expected 're,im', got {text!r}"
        )
    try:
        return complex(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_walk_arguments(parser: argparse.ArgumentParser, with_tau: bool = True) -> None:
    group = parser.add_argument_group("walk parameters")
    group.add_argument("--theta", type=float, help="coin angle of U in radians")
    group.add_argument("--theta1", type=float, help="coin angle of H in radians")
    if with_tau:
        group.add_argument("--tau", type=int, help="swap step (default 0)")
    group.add_argument("--alpha", type=_parse_complex_pair, metavar="RE,IM",
                       help="initial upper amplitude")
    group.add_argument("--beta", type=_parse_complex_pair, metavar="RE,IM",
                       help="initial lower amplitude")
    group.add_argument("--preset", choices=("symmetric", "up"),
                       help="initial spinor shorthand: (1/sqrt2, i/sqrt2) or (1, 0)")
    group.add_argument("--schedule", choices=("usual", "half-time", "multi"),
                       help="coin schedule (default half-time)")
    group.add_argument("--swap-steps", type=_parse_int_list, metavar="T1,T2,...",
                       help="swap steps for the multi schedule")
    group.add_argument("--config", help="JSON file with walk parameters")


def _load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ValueError(f"config {path} must hold a JSON object")
    return cfg


def _resolve_walk(args) -> tuple[WalkParams, Schedule]:
    """Merge CLI flags over JSON config; flags win."""
    cfg = _load_config(args.config) if args.config else {}

    def pick(flag, key, default=None):
        return flag if flag is not None else cfg.get(key, default)

    theta = pick(args.theta, "theta")
    theta1 = pick(args.theta1, "theta1")
    if theta is None or theta1 is None:
        raise ValueError("theta and theta1 are required (flags or config)")
    tau = int(pick(getattr(args, "tau", None), "tau", 0))

    if args.preset is not None and (args.alpha is not None or args.beta is not None):
        raise ValueError("--preset and --alpha/--beta are mutually exclusive")
    if args.preset is not None:
        alpha, beta = _SYMMETRIC if args.preset == "symmetric" else _UP
    elif args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise ValueError("--alpha and --beta must be given together")
        alpha, beta = args.alpha, args.beta
    elif "alpha_re" in cfg or "beta_re" in cfg:
        alpha = complex(cfg.get("alpha_re", 0.0), cfg.get("alpha_im", 0.0))
        beta = complex(cfg.get("beta_re", 0.0), cfg.get("beta_im", 0.0))
    else:
        alpha, beta = _SYMMETRIC

    kind = pick(args.schedule, "schedule", "half-time")
    steps = pick(args.swap_steps, "swap_steps")
    if kind == "usual":
        schedule = Schedule.usual()
    elif kind == "half-time":
        schedule = Schedule.half_time()
    elif kind == "multi":
        if not steps:
            raise ValueError("the multi schedule requires --swap-steps")
        schedule = Schedule.multi(steps)
    else:
        raise ValueError(f"unknown schedule {kind!r}")
    if kind != "multi" and steps:
        raise ValueError("--swap-steps is only valid with --schedule multi")

    params = WalkParams(theta=float(theta), theta1=float(theta1), tau=tau,
                        alpha=alpha, beta=beta)
    return params, schedule


def _state_rows(state: StateVector) -> list[dict]:
    dist = distribution(state)
    rows = []
    for i, x in enumerate(state.positions):
        a0, a1 = state.amps[i]
        rows.append({
            "x": int(x),
            "prob": dist.probs[int(x)],
            "amp0_re": float(a0.real), "amp0_im": float(a0.imag),
            "amp1_re": float(a1.real), "amp1_im": float(a1.imag),
        })
    return rows


def _evolve_snapshots(params: WalkParams, schedule: Schedule,
                      times: Sequence[int]) -> dict[int, StateVector]:
    want = sorted(set(times))
    if want[0] < 0:
        raise ValueError(f"times must be non-negative, got {want[0]}")
    cap = max_time_cap()
    if want[-1] > cap:
        raise ValueError(f"t={want[-1]} exceeds the configured cap {cap}")
    remaining = set(want)
    out: dict[int, StateVector] = {}
    state = initial_state(params)
    if 0 in remaining:
        out[0] = state
    for t in range(1, want[-1] + 1):
        state = step(state, params, schedule)
        if t in remaining:
            out[t] = state
    return out


def _timed_path(path: str | None, t: int) -> str | None:
    if path is None:
        return None
    stem, dot, ext = path.rpartition(".")
    if dot:
        return f"{stem}_t{t}.{ext}"
    return f"{path}_t{t}"


def _cmd_simulate(args) -> int:
    params, schedule = _resolve_walk(args)
    if (args.t is None) == (args.times is None):
        raise ValueError("exactly one of --t / --times is required")
    if args.times is None:
        state = evolve(params, schedule, args.t)
        emit(_state_rows(state), args.format, args.out)
        return 0
    for t, state in sorted(_evolve_snapshots(params, schedule, args.times).items()):
        emit(_state_rows(state), args.format, _timed_path(args.out, t))
    return 0


def _cmd_spectral_check(args) -> int:
    params, schedule = _resolve_walk(args)
    direct = evolve(params, schedule, args.t)
    fourier = spectral_evolve(params, schedule, args.t, n_grid=args.n_grid)
    deviation = float(np.max(np.abs(direct.amps - fourier.amps)))
    print(f"max entrywise deviation at t={args.t}: {deviation:.3e} "
          f"(tolerance {args.tol:.3e})")
    return 0 if deviation <= args.tol else 2


def _cmd_eigen(args) -> int:
    # Only theta matters for the eigensystem; the remaining parameters
    # take harmless placeholder values.
    params = WalkParams(theta=args.theta, theta1=0.0, tau=0,
                        alpha=1.0 + 0.0j, beta=0.0j)
    ks = -np.pi + 2.0 * np.pi * np.arange(args.k_samples) / args.k_samples
    rows = []
    for k in ks:
        pair = eigensystem(params, float(k))
        rows.append({
            "k": float(k),
            "re_l1": pair.lambda1.real, "im_l1": pair.lambda1.imag,
            "re_l2": pair.lambda2.real, "im_l2": pair.lambda2.imag,
        })
    emit(rows, args.format, args.out)
    return 0


def _cmd_limits(args) -> int:
    params, _ = _resolve_walk(args)
    rows = [
        {"x": lm.position, "limit_mass": lm.value}
        for lm in limit_masses(params, args.parity, args.xmax)
    ]
    emit(rows, args.format, args.out,
         meta={"delta_mass": delta_mass(params)})
    return 0


def _cmd_density(args) -> int:
    params, _ = _resolve_walk(args)
    dens = LimitDensity.from_params(params)
    lo, hi = dens.support
    xs = np.linspace(lo, hi, args.points + 2)[1:-1]
    fs = dens.density(xs)
    rows = [{"x": float(x), "f_ac": float(f)} for x, f in zip(xs, fs)]
    emit(rows, args.format, args.out, meta={"delta_mass": dens.delta})
    return 0


def _trace_point(job) -> float:
    observable, params, schedule, tau, t, x, r = job
    p = dataclasses.replace(params, tau=tau)
    if observable == "mass":
        return distribution(evolve(p, schedule, t)).probs.get(x, 0.0)
    if observable == "moment":
        return moment(distribution(evolve(p, schedule, t)), r)
    return rescaled_cdf_distance(p, t)


def _cmd_trace(args) -> int:
    params, schedule = _resolve_walk(args)
    if not args.taus:
        raise ValueError("--taus must not be empty")
    if args.observable == "mass" and args.x is None:
        raise ValueError("--x is required for the mass observable")
    offset = 1 if args.parity == "odd" else 2
    jobs = [
        (args.observable, params, schedule, tau, 2 * tau + offset, args.x, args.r)
        for tau in args.taus
    ]
    if args.jobs > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            values = list(pool.map(_trace_point, jobs))
    else:
        values = [_trace_point(job) for job in jobs]
    rows = [
        {"tau": tau, "t": 2 * tau + offset, "value": value}
        for tau, value in zip(args.taus, values)
    ]
    emit(rows, args.format, args.out,
         meta={"observable": args.observable})
    return 0


def _cmd_compare(args) -> int:
    params, schedule = _resolve_walk(args)
    dist = distribution(evolve(params, schedule, args.t))
    report = {
        "ks_distance": rescaled_cdf_distance(params, args.t),
        "delta_mass_sim": localized_mass(dist),
        "delta_mass_theory": delta_mass(params),
        "moments": [
            {"r": r, "walk": moment(dist, r), "limit": limit_moment(params, r)}
            for r in args.moments
        ],
    }
    emit(report, args.format, args.out)
    return 0


def _figure_params(init: str, theta1: float, tau: int) -> WalkParams:
    alpha, beta = _SYMMETRIC if init == "symmetric" else _UP
    return WalkParams(theta=math.pi / 4, theta1=theta1, tau=tau,
                      alpha=alpha, beta=beta)


def _fig_distribution(init: str, theta1: float, tau: int,
                      schedule: Schedule, t: int):
    params = _figure_params(init, theta1, tau)
    dist = distribution(evolve(params, schedule, t))
    xs, ps = dist.as_arrays()
    return [{"x": int(x), "prob": float(p)} for x, p in zip(xs, ps)], None


def _fig_spacetime(init: str, theta1: float, tau: int,
                   schedule: Schedule, t_max: int = 100):
    params = _figure_params(init, theta1, tau)
    snapshots = _evolve_snapshots(params, schedule, range(t_max + 1))
    rows = []
    for t in range(t_max + 1):
        xs, ps = distribution(snapshots[t]).as_arrays()
        rows.extend({"t": t, "x": int(x), "prob": float(p)}
                    for x, p in zip(xs, ps))
    return rows, None


def _fig_mass_trace(positions: Sequence[int], parity: str, tau_max: int = 250):
    taus = range(tau_max + 1)
    offset = 1 if parity == "odd" else 2
    traces = {
        x: mass_trace(_figure_params("symmetric", 0.0, 0), x, parity, taus)
        for x in positions
    }
    rows = []
    for i, tau in enumerate(taus):
        for x in positions:
            rows.append({"tau": tau, "t": 2 * tau + offset, "x": x,
                         "prob": traces[x].values[i]})
    return rows, None


def _fig_density(init: str, points: int = 2001):
    params = _figure_params(init, 0.0, 0)
    dens = LimitDensity.from_params(params)
    lo, hi = dens.support
    xs = np.linspace(lo, hi, points + 2)[1:-1]
    fs = dens.density(xs)
    rows = [{"x": float(x), "f_ac": float(f)} for x, f in zip(xs, fs)]
    return rows, {"delta_mass": dens.delta}


_FIGURES: dict[str, Callable] = {
    "1a": lambda: _fig_distribution("symmetric", 0.0, 249, Schedule.half_time(), 500),
    "1b": lambda: _fig_distribution("up", 0.0, 249, Schedule.half_time(), 500),
    "2a": lambda: _fig_spacetime("symmetric", 0.0, 24, Schedule.half_time()),
    "2b": lambda: _fig_spacetime("up", 0.0, 24, Schedule.half_time()),
    "3a": lambda: _fig_distribution("symmetric", math.pi / 4, 0, Schedule.usual(), 500),
    "3b": lambda: _fig_distribution("up", math.pi / 4, 0, Schedule.usual(), 500),
    "4a": lambda: _fig_spacetime("symmetric", math.pi / 4, 0, Schedule.usual()),
    "4b": lambda: _fig_spacetime("up", math.pi / 4, 0, Schedule.usual()),
    "5a": lambda: _fig_mass_trace((-1, 1), "odd"),
    "5b": lambda: _fig_mass_trace((0,), "even"),
    "5c": lambda: _fig_mass_trace((-2, 2), "even"),
    "7a": lambda: _fig_density("symmetric"),
    "7b": lambda: _fig_density("up"),
}


def _cmd_figures(args) -> int:
    rows, meta = _FIGURES[args.paper_fig]()
    emit(rows, args.format, args.out, meta=meta)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler, help_text: str, walk: bool = True,
            with_tau: bool = True, default_format: str = "csv") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if walk:
            _add_walk_arguments(p, with_tau=with_tau)
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), default=default_format)
        p.set_defaults(func=handler)
        return p

    p = add("simulate", _cmd_simulate, "evolve the walk and emit the distribution")
    p.add_argument("--t", type=int, help="final time")
    p.add_argument("--times", type=_parse_int_list, metavar="T1,T2,...",
                   help="emit one file per listed time")

    p = add("spectral-check", _cmd_spectral_check,
            "compare position-space and Fourier-space evolutions")
    p.add_argument("--t", type=int, required=True, help="final time")
    p.add_argument("--n-grid", type=int, default=None,
                   help="wavenumber grid size (default 2t+2)")
    p.add_argument("--tol", type=float, default=SPECTRAL_CHECK_TOL,
                   help="max allowed entrywise deviation")

    p = add("eigen", _cmd_eigen, "tabulate the momentum-space eigenvalues",
            walk=False)
    p.add_argument("--theta", type=float, required=True,
                   help="coin angle of U in radians")
    p.add_argument("--k-samples", type=int, default=1000,
                   help="number of wavenumber samples on [-pi, pi)")

    p = add("limits", _cmd_limits, "tabulate stationary point masses",
            with_tau=False)
    p.add_argument("--parity", choices=("odd", "even"), required=True)
    p.add_argument("--xmax", type=int, default=50,
                   help="tabulate positions -xmax..xmax")

    p = add("density", _cmd_density, "sample the weak-limit density",
            with_tau=False)
    p.add_argument("--points", type=int, default=2001,
                   help="number of interior sample points")

    p = add("trace", _cmd_trace, "observable vs half-time trace")
    p.add_argument("--observable", choices=("mass", "ks", "moment"),
                   required=True)
    p.add_argument("--x", type=int, help="position for the mass observable")
    p.add_argument("--r", type=int, default=2,
                   help="moment order for the moment observable")
    p.add_argument("--parity", choices=("odd", "even"), default="odd",
                   help="measure at t=2*tau+1 (odd) or 2*tau+2 (even)")
    p.add_argument("--taus", type=_parse_int_list, required=True,
                   metavar="T1,T2,...")
    p.add_argument("--jobs", type=int, default=1,
                   help="parallel workers across taus")

    p = add("compare", _cmd_compare, "simulation vs limit-law report",
            default_format="json")
    p.add_argument("--t", type=int, required=True,
                   help="measurement time (2*tau+1 or 2*tau+2)")
    p.add_argument("--moments", type=_parse_int_list, default=(0, 1, 2),
                   metavar="R1,R2,...")

    p = add("figures", _cmd_figures, "emit data behind a published figure",
            walk=False)
    p.add_argument("--paper-fig", choices=sorted(_FIGURES), required=True)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
