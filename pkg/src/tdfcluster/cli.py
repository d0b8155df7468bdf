"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 infeasible
embedding.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .compiler import (
    Schedule,
    compile_lattice_embedded,
    compile_layer_symmetric,
    compile_naive,
    minimize_delay_classes,
)
from .emulator import emulate, format_trace
from .errors import EmbeddingInfeasible, TdfError
from .noise import NoiseParams, damping_product_check, fidelity_estimate
from .reports import fidelity_text, table2_csv, table2_rows, verify_schedule
from .representation import ClusterGraph, Family, FamilySpec, build_family

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _target(args) -> tuple[ClusterGraph, FamilySpec | None]:
    if args.family and args.graph:
        raise InputError("give either --family or --graph, not both")
    if args.family:
        spec = FamilySpec.parse(args.family)
        return build_family(spec), spec
    if args.graph:
        return io.load_graph(args.graph), None
    raise InputError("one of --family or --graph is required")


def _compile(args) -> Schedule:
    graph, spec = _target(args)
    kind = args.pass_
    if kind in ("layer", "lattice"):
        if spec is None or spec.family is not Family.TCS:
            raise InputError(f"--pass {kind} needs a tree family, e.g. --family tcs:2,4")
        a, d = spec.params
        if kind == "layer":
            return compile_layer_symmetric(a, d)
        return compile_lattice_embedded(a, d, budget=args.budget or 200_000)
    if kind == "search":
        _, sched = minimize_delay_classes(graph, budget=args.budget or 20_000, seed=args.seed)
        return sched
    return compile_naive(graph)


def _summary(s: Schedule) -> str:
    return (
        f"n_slots={s.n_slots} excitations={len(s.excitation_set)} "
        f"native_gates={len(s.native_chain_gates)} blocks={s.n_tdf} "
        f"delays={s.delays()} delay_classes={s.n_delay_classes}\n"
    )


def cmd_generate(args) -> int:
    s = _compile(args)
    schedule_text = io.dumps_schedule(s)
    matrix_text = io.matrix_csv(s.distribution())
    dot_text = io.graph_dot(s.to_graph())
    if args.out:
        out = Path(args.out)
        io.write_atomic(out / "schedule.json", schedule_text)
        io.write_atomic(out / "matrix.csv", matrix_text)
        io.write_atomic(out / "graph.dot", dot_text)
        sys.stdout.write(_summary(s))
    else:
        sys.stdout.write({"text": schedule_text, "csv": matrix_text, "dot": dot_text}[args.format])
    return EXIT_OK


def cmd_verify(args) -> int:
    s = io.load_schedule(args.schedule)
    target, _ = _target(args)
    report = verify_schedule(s, target)
    sys.stdout.write(report.text())
    return EXIT_OK if report.ok else EXIT_VERIFY_FAILED


def cmd_emulate(args) -> int:
    s = io.load_schedule(args.schedule)
    trace = format_trace(emulate(s))
    if args.out:
        io.write_atomic(Path(args.out) / "trace.txt", trace)
    else:
        sys.stdout.write(trace)
    return EXIT_OK


def _noise(args, table2: bool = False) -> NoiseParams:
    damping = args.damping_factor
    if damping is None and table2 and args.gamma == 0.0:
        damping = 0.98
    return NoiseParams(args.fs, args.ft, args.gamma, damping)


def cmd_fidelity(args) -> int:
    params = _noise(args)
    s = io.load_schedule(args.schedule) if args.schedule else _compile(args)
    report = fidelity_estimate(s.distribution(), s.n_tdf, params)
    n = len(s.excitation_set)
    if args.format == "csv":
        sys.stdout.write("n_h,n_cz,n_damp_ops,f_c\n")
        sys.stdout.write(f"{report.n_h},{report.n_cz},{report.n_damp_ops},{report.f_c:.6e}\n")
    else:
        oracle = damping_product_check(n, params.gamma) if 2 <= n <= 6 else None
        sys.stdout.write(fidelity_text(report, oracle))
    return EXIT_OK


def cmd_table2(args) -> int:
    text = table2_csv(table2_rows(_noise(args, table2=True)))
    if args.out:
        io.write_atomic(Path(args.out) / "table2.csv", text)
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tdfcluster", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def target_opts(p, passes=True):
        p.add_argument("--family", help="linear:N, ccs:N, tcs:A,D or lattice:AxB")
        p.add_argument("--graph", help="graph spec file (YAML or JSON)")
        if passes:
            p.add_argument("--pass", dest="pass_", default="naive",
                           choices=["naive", "layer", "lattice", "search"])
            p.add_argument("--budget", type=int, default=None)
            p.add_argument("--seed", type=int, default=0)

    def noise_opts(p):
        p.add_argument("--fs", type=float, default=0.999)
        p.add_argument("--ft", type=float, default=0.996)
        p.add_argument("--gamma", type=float, default=0.0)
        p.add_argument("--damping-factor", type=float, default=None)

    for name, func in (("generate", cmd_generate), ("optimize", cmd_generate)):
        p = sub.add_parser(name)
        target_opts(p)
        p.add_argument("--out")
        p.add_argument("--format", choices=["text", "csv", "dot"], default="text")
        p.set_defaults(func=func)
        if name == "optimize":
            p.set_defaults(pass_="search")

    p = sub.add_parser("verify")
    p.add_argument("--schedule", required=True)
    target_opts(p, passes=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("emulate")
    p.add_argument("--schedule", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_emulate)

    p = sub.add_parser("fidelity")
    target_opts(p)
    p.add_argument("--schedule")
    noise_opts(p)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_fidelity)

    p = sub.add_parser("table2")
    noise_opts(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_table2)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except EmbeddingInfeasible as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (TdfError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
