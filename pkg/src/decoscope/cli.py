"""Command-line front end.

Subcommands: dj and grover run algorithm traces, basis dumps the symmetrized
coefficient table, qfunc samples a Q map for a stored state, analyze scores a
stored state. Exit status: 0 on success, 2 on usage errors, 1 on runtime
errors (unreadable or malformed files, out-of-range sizes).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

import numpy as np

from . import coherent, metrics, symmetrized, traceio
from .algorithms import (BUILTIN_ORACLE_NAMES, GroverConfig, builtin_oracles,
                         default_grover_iterations, dj_run, grover_run,
                         oracle_from_file)

WORKERS_ENV = "DECOSCOPE_WORKERS"


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="decoscope",
        description="Algorithm traces with per-step collective T1/T2 "
                    "vulnerability scores, plus basis and Q-map utilities.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="reserved; no stochastic components")
    common.add_argument("--figures", metavar="DIR", default=None,
                        help="also render report figures into DIR")
    sub = parser.add_subparsers(dest="command", required=True)

    dj = sub.add_parser("dj", parents=[common],
                        help="Deutsch-Jozsa trace with unrolled oracle blocks")
    dj.add_argument("--n", type=int, required=True, help="register size")
    dj.add_argument("--oracle", required=True,
                    help="builtin name (%s) or truth-table file"
                         % ", ".join(BUILTIN_ORACLE_NAMES))
    dj.add_argument("--initial", type=int, default=0,
                    help="starting basis state (default 0)")
    dj.add_argument("--out", required=True, help="trace output path")
    dj.add_argument("--pjm", action="store_true",
                    help="include P(j,m) per step (json format only)")
    dj.add_argument("--format", choices=("json", "csv"), default="json")

    grover = sub.add_parser("grover", parents=[common],
                            help="Grover trace, four states per iteration")
    grover.add_argument("--n", type=int, required=True, help="register size")
    grover.add_argument("--target", type=int, required=True,
                        help="marked basis state tau")
    grover.add_argument("--start", type=int, default=0,
                        help="starting basis state gamma (default 0)")
    grover.add_argument("--iters", type=int, default=None,
                        help="iteration count (default round(pi/4*sqrt(2^n)))")
    grover.add_argument("--out", required=True, help="trace output path")
    grover.add_argument("--pjm", action="store_true",
                        help="include P(j,m) per step (json format only)")
    grover.add_argument("--format", choices=("json", "csv"), default="json")

    basis = sub.add_parser("basis", parents=[common],
                           help="dump the symmetrized coefficient table")
    basis.add_argument("--n", type=int, required=True, help="register size")
    basis.add_argument("--out", required=True, help="CSV output path")

    qfunc = sub.add_parser("qfunc", parents=[common],
                           help="Q map of a stored state")
    qfunc.add_argument("--state", required=True, help="state file ('re im' lines)")
    qfunc.add_argument("--out", required=True, help="CSV output path")
    qfunc.add_argument("--theta-nodes", type=int,
                       default=coherent.DEFAULT_THETA_NODES)
    qfunc.add_argument("--phi-nodes", type=int,
                       default=coherent.DEFAULT_PHI_NODES)
    qfunc.add_argument("--pgm", default=None,
                       help="also write a binary PGM image (Q=1 black)")

    analyze = sub.add_parser("analyze", parents=[common],
                             help="score a stored state (t1, t2, P(j,m))")
    analyze.add_argument("--state", required=True,
                         help="state file ('re im' lines)")
    analyze.add_argument("--out", required=True, help="report output path")
    analyze.add_argument("--format", choices=("json", "csv"), default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {"dj": _cmd_dj, "grover": _cmd_grover, "basis": _cmd_basis,
                "qfunc": _cmd_qfunc, "analyze": _cmd_analyze}
    try:
        handlers[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # domain and IO failures exit 1, not a traceback
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    sys.exit(main())


def _worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw is None:
        return metrics.default_workers()
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV}={raw!r} is not an integer") from None
    if value < 1:
        raise UsageError(f"{WORKERS_ENV} must be >= 1")
    return value


def _resolve_oracle(spec: str, n: int):
    if spec in BUILTIN_ORACLE_NAMES:
        return builtin_oracles(spec, n)
    if Path(spec).exists():
        return oracle_from_file(spec, n)
    raise UsageError(f"unknown oracle {spec!r}: not a builtin "
                     f"({', '.join(BUILTIN_ORACLE_NAMES)}) and no such file")


def _trace_for(steps, n: int, include_pjm: bool) -> metrics.StepTrace:
    labels = [label for label, _ in steps]
    states = [state for _, state in steps]
    basis = symmetrized.build_symmetrized_basis(n)
    return metrics.trace_metrics(states, basis, labels=labels,
                                 include_pjm=include_pjm,
                                 workers=_worker_count())


def _write_trace(trace: metrics.StepTrace, out: str, fmt: str) -> None:
    if fmt == "json":
        traceio.write_trace_json(trace, out)
    else:
        traceio.write_trace_csv(trace, out)


def _figure_path(figures_dir: str, out: str, suffix: str) -> Path:
    directory = Path(figures_dir)
    directory.mkdir(parents=True, exist_ok=True)
    return directory / (Path(out).stem + suffix)


def _render_trace_figures(trace: metrics.StepTrace, args) -> None:
    from . import plotting

    plotting.save_rate_figure(trace, _figure_path(args.figures, args.out,
                                                  "_rates.png"))
    if any(step.pjm is not None for step in trace.steps):
        picks = sorted({0, 1, len(trace.steps) // 2, len(trace.steps) - 1})
        panels = [(f"step {i}: {trace.steps[i].label}", trace.steps[i].pjm)
                  for i in picks if trace.steps[i].pjm is not None]
        plotting.save_pjm_figure(panels, _figure_path(args.figures, args.out,
                                                      "_pjm.png"))


def _cmd_dj(args) -> None:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    if not 0 <= args.initial < (1 << args.n):
        raise UsageError(f"--initial must be in [0, 2**{args.n})")
    oracle = _resolve_oracle(args.oracle, args.n)
    trace = _trace_for(dj_run(oracle, args.initial), args.n, args.pjm)
    _write_trace(trace, args.out, args.format)
    if args.figures:
        _render_trace_figures(trace, args)
    print(f"wrote {args.out} ({len(trace.steps)} steps, oracle kind: "
          f"{oracle.kind})")


def _cmd_grover(args) -> None:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    size = 1 << args.n
    if not 0 <= args.target < size:
        raise UsageError(f"--target must be in [0, 2**{args.n})")
    if not 0 <= args.start < size:
        raise UsageError(f"--start must be in [0, 2**{args.n})")
    iters = args.iters if args.iters is not None \
        else default_grover_iterations(args.n)
    if iters < 0:
        raise UsageError("--iters must be >= 0")
    config = GroverConfig(args.n, args.target, args.start, iters)
    steps = grover_run(config)
    trace = _trace_for(steps, args.n, args.pjm)
    _write_trace(trace, args.out, args.format)
    if args.figures:
        _render_trace_figures(trace, args)
    final = steps[-1][1]
    print(f"wrote {args.out} ({len(trace.steps)} steps, {iters} iterations, "
          f"P(target)={final.probability(args.target):.6f})")


def _cmd_basis(args) -> None:
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    basis = symmetrized.build_symmetrized_basis(args.n)
    traceio.write_basis_csv(basis, args.out)
    total = sum(d * round(2 * j + 1) for j, d in basis.degeneracy.items())
    print(f"wrote {args.out} ({total} basis vectors)")


def _cmd_qfunc(args) -> None:
    if args.theta_nodes < 2 or args.phi_nodes < 2:
        raise UsageError("--theta-nodes and --phi-nodes must be >= 2")
    state = traceio.read_state_file(args.state)
    thetas, phis = coherent.uniform_mesh(args.theta_nodes, args.phi_nodes)
    grid = coherent.q_function(state, thetas, phis)
    traceio.write_qgrid_csv(grid, args.out)
    if args.pgm:
        traceio.write_qgrid_pgm(grid, args.pgm)
    if args.figures:
        from . import plotting

        plotting.save_q_figure(grid, _figure_path(args.figures, args.out,
                                                  "_q.png"))
    print(f"wrote {args.out} ({grid.values.shape[0]}x{grid.values.shape[1]} "
          f"nodes, max Q={float(np.max(grid.values)):.6f})")


def _cmd_analyze(args) -> None:
    state = traceio.read_state_file(args.state)
    basis = symmetrized.build_symmetrized_basis(state.n)
    trace = metrics.trace_metrics([state], basis, labels=["input"],
                                  include_pjm=True, workers=1)
    _write_trace(trace, args.out, args.format)
    if args.figures:
        from . import plotting

        step = trace.steps[0]
        plotting.save_pjm_figure([(step.label, step.pjm)],
                                 _figure_path(args.figures, args.out,
                                              "_pjm.png"))
    step = trace.steps[0]
    print(f"wrote {args.out} (n={state.n}, t1={step.t1:.6f}, "
          f"t2={step.t2:.6f})")
