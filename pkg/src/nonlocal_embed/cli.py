"""Command-line front end.

Subcommands: ``walker``, ``walker-direct``, ``stefan``, ``bench``, ``verify``.
Exit codes: 0 success, 1 failed verification, 2 configuration error,
3 solver divergence.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from ._backend import BACKEND
from .config import ConfigError, RunConfig, load_config
from .integrators import SolverDivergence

log = logging.getLogger("nonlocal_embed")

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_DIVERGED = 0, 1, 2, 3

# 10^4 steps at the default dt
BENCH_TFINAL = 100.0

SUBCOMMAND_MODELS = {"walker": "walker", "walker-direct": "walker_direct", "stefan": "stefan", "bench": "walker"}


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config (or a metadata.json from a previous run)")
    p.add_argument("--out", help="output directory")
    p.add_argument("--dt", type=float)
    p.add_argument("--steps", type=int, help="number of steps; sets tfinal = start + steps * dt")
    p.add_argument("--tfinal", type=float)
    p.add_argument("--nodes", type=int, metavar="M", help="quadrature parameter M (M + 1 nodes)")
    p.add_argument("--ktrunc", type=float, help="spectral truncation half-width (stefan)")
    p.add_argument("--c1", type=float)
    p.add_argument("--c2", type=float)
    p.add_argument("--x0", type=float)
    p.add_argument("--v0", type=float)
    p.add_argument("--t0", type=float, help="start time of the stefan run")
    p.add_argument("--snapshot", type=_float_list, metavar="t[,t...]")
    p.add_argument("--stride", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonlocal-embed", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in [("walker", "embedded walking-droplet run"),
                        ("walker-direct", "direct (full path memory) walker run"),
                        ("stefan", "embedded Stefan run from the similarity solution"),
                        ("bench", "per-step cost of embedded vs direct walker solvers")]:
        _add_run_flags(sub.add_parser(name, help=help_))
    pv = sub.add_parser("verify", help="run the invariant suite")
    pv.add_argument("-v", "--verbose", action="store_true")
    pv.add_argument("--perturb-weights", type=float, default=0.0, help=argparse.SUPPRESS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """Config file first, then flag overrides; returns a resolved, validated config."""
    model = SUBCOMMAND_MODELS[args.command]
    base = load_config(args.config) if args.config else RunConfig(model=model)
    base = base.merged(model=model)
    cfg = base.merged(out=args.out, dt=args.dt, tfinal=args.tfinal, nodes=args.nodes,
                      ktrunc=args.ktrunc, c1=args.c1, c2=args.c2, x0=args.x0, v0=args.v0,
                      t0=args.t0, snapshots=args.snapshot, stride=args.stride)
    if args.command == "bench" and cfg.tfinal is None and args.steps is None:
        cfg = cfg.merged(tfinal=BENCH_TFINAL)
    if args.steps is not None:
        if args.steps < 1:
            raise ConfigError("--steps must be >= 1")
        dt = cfg.dt if cfg.dt is not None else cfg.resolved().dt
        cfg = cfg.merged(tfinal=cfg.start_time + args.steps * dt)
    return cfg.resolved()


def _walker_params(cfg: RunConfig):
    from .walker import WalkerParams

    try:
        return WalkerParams(C1=cfg.c1, C2=cfg.c2, M=cfg.nodes, dt=cfg.dt, ic=(cfg.x0, cfg.v0))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def simulate(cfg: RunConfig):
    """Run the configured model; returns (trajectory, snapshots, extra metadata)."""
    if cfg.model == "walker":
        from .walker import simulate_walker, steady_speed

        run = simulate_walker(_walker_params(cfg), cfg.tfinal, stride=cfg.stride,
                              snapshot_times=cfg.snapshots)
        return run.trajectory, run.snapshots, {"steady_speed": steady_speed(cfg.c1, cfg.c2)}
    if cfg.model == "walker_direct":
        from .direct import simulate_walker_direct
        from .walker import steady_speed

        traj = simulate_walker_direct(_walker_params(cfg), cfg.tfinal, stride=cfg.stride)
        return traj, [], {"steady_speed": steady_speed(cfg.c1, cfg.c2)}
    from .stefan import SimilaritySolution, similarity_params, simulate_stefan

    sol = SimilaritySolution.create(cfg.t0)
    params = similarity_params(sol, K_trunc=cfg.ktrunc, M=cfg.nodes, dt=cfg.dt)
    run = simulate_stefan(params, cfg.tfinal, exact=sol, stride=cfg.stride,
                          snapshot_times=cfg.snapshots)
    return run.trajectory, run.snapshots, {"alpha": sol.alpha, "l0": sol.l0}


def cmd_run(cfg: RunConfig) -> int:
    from .records import write_snapshots

    tic = time.perf_counter()
    try:
        traj, snaps, extra = simulate(cfg)
    except SolverDivergence as exc:
        log.error("%s", exc)
        return EXIT_DIVERGED
    wall = time.perf_counter() - tic

    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    files = ["trajectory.csv"]
    traj.to_csv(out / "trajectory.csv")
    if snaps:
        write_snapshots(out / "snapshots.csv", snaps)
        files.append("snapshots.csv")
    meta = {
        "config": cfg.to_dict(),
        "model": cfg.model,
        "version": __version__,
        "backend": BACKEND,
        "wall_time_s": wall,
        "rows": len(traj),
        "files": files,
        **extra,
    }
    (out / "metadata.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"{cfg.model}: {len(traj)} rows -> {out}/ ({wall:.2f} s)")
    return EXIT_OK


def cmd_bench(cfg: RunConfig) -> int:
    from .bench import run_bench

    params = _walker_params(cfg)
    try:
        report = run_bench(params, cfg.tfinal)
    except SolverDivergence as exc:
        log.error("%s", exc)
        return EXIT_DIVERGED
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    rows = np.array(report.table())
    np.savetxt(out / "bench.csv", rows, fmt=["%d", "%.6e", "%.6e"], delimiter=",",
               header="decile,embedded_mean_step_s,direct_mean_step_s", comments="")
    print(f"steps={report.n_steps} dt={cfg.dt} T={cfg.tfinal} backend={BACKEND}")
    print(f"{'decile':>6s} {'embedded [s]':>14s} {'direct [s]':>14s}")
    for dec, e, d in report.table():
        print(f"{dec:>6d} {e:>14.3e} {d:>14.3e}")
    print(f"last/first decile ratio: embedded={report.embedded_ratio:.2f} direct={report.direct_ratio:.2f}")
    return EXIT_OK


def cmd_verify(verbose: bool, perturb_weights: float) -> int:
    from .verify import run_checks

    results = run_checks(perturb_weights=perturb_weights)
    for r in results:
        print(r.line(verbose))
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_OK if not failed else EXIT_VERIFY


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        return cmd_verify(args.verbose, args.perturb_weights)
    try:
        cfg = config_from_args(args)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    if args.command == "bench":
        return cmd_bench(cfg)
    return cmd_run(cfg)


if __name__ == "__main__":
    sys.exit(main())
