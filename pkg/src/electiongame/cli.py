"""Command-line surface.

Subcommands: solve, reduce, verify, bench, oracle.  Exit codes follow a fixed
contract so shell harnesses need no output parsing: 0 = yes/ok, 1 = no/fail,
2 = error.
"""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys

from electiongame import bench, fileio, kernels
from electiongame.documents import ElectionDocument
from electiongame.graphs import GraphError
from electiongame.manipulate import (
    ManAnswer,
    SearchSpaceExceeded,
    solve_pd_man,
    solve_pv_man,
)
from electiongame.model import ModelError, Rule, scores
from electiongame.oracles import (
    OracleScaleError,
    dominating_set_exists,
    multicolored_clique_exists,
)
from electiongame.recount import solve_rec
from electiongame.reductions import (
    ReductionError,
    decode_witness,
    reduce_ds_to_pv_rec,
    reduce_mcc_to_pd_rec,
    reduce_mcc_to_pv_man,
)
from electiongame.verify import verify_witness

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _default_threads() -> int:
    env = os.environ.get("ELECTIONGAME_THREADS")
    return max(1, int(env)) if env else 1


def _print_scores(doc: ElectionDocument, label: str, profile):
    sc = scores(doc.problem.rule, profile, doc.instance.weights, doc.instance.tie)
    print(f"{label}:")
    for j, name in enumerate(doc.candidate_names):
        print(f"  {name}: {int(sc[j])}")


def _apply_overrides(doc: ElectionDocument, args) -> ElectionDocument:
    problem = doc.problem
    if args.rule:
        problem = dataclasses.replace(problem, rule=Rule(args.rule))
    if args.budget_d is not None:
        problem = dataclasses.replace(problem, budget_defender=args.budget_d)
    if args.budget_a is not None:
        if problem.kind != "man":
            raise ModelError("--budget-a only applies to man problems")
        problem = dataclasses.replace(problem, budget_attacker=args.budget_a)
    if args.defender_tie:
        problem = dataclasses.replace(problem, defender_tie=args.defender_tie)
    return dataclasses.replace(doc, problem=problem)


def _cmd_solve(args) -> int:
    doc = fileio.parse_election(_read(args.election))
    doc = _apply_overrides(doc, args)
    inst = doc.instance
    if doc.problem.kind == "rec":
        answer = solve_rec(doc.rec_problem(), kernel_name=args.kernel, threads=args.threads)
        print(f"problem: rec / {doc.problem.rule.value}")
        print(f"decision: {'yes' if answer.decision else 'no'}")
        if answer.decision:
            names = [doc.district_names[i] for i in sorted(answer.witness)]
            print(f"witness: recount {' '.join(names)}")
            if args.witness_out:
                _write(args.witness_out, fileio.emit_rec_witness(doc, answer.witness))
        print(f"nodes explored: {answer.nodes}")
        _print_scores(doc, "scores before recounting (manipulated)", inst.manipulated)
        if answer.decision:
            from electiongame.model import apply_recount
            from electiongame.recount import diff_districts
            u = apply_recount(inst.original, inst.manipulated,
                              diff_districts(inst), answer.witness)
            _print_scores(doc, "scores after recounting", u)
        return EXIT_YES if answer.decision else EXIT_NO

    problem = doc.man_problem()
    if doc.problem.rule is Rule.PV:
        answer: ManAnswer = solve_pv_man(
            problem, node_limit=args.limit_nodes,
            kernel_name=args.kernel, threads=args.threads,
        )
    else:
        answer = solve_pd_man(problem, node_limit=args.limit_nodes)
    print(f"problem: man / {doc.problem.rule.value}")
    print(f"decision: {'yes' if answer.decision else 'no'}")
    if answer.decision:
        names = [doc.district_names[i] for i in sorted(answer.witness.touched)]
        print(f"witness: touch {' '.join(names) if names else '(nothing)'}")
    print(f"nodes explored: {answer.nodes}")
    _print_scores(doc, "scores before manipulation (original)", inst.original)
    if answer.decision:
        _print_scores(doc, "scores after manipulation",
                      answer.witness.build_profile(inst))
        if args.witness_out:
            _write(args.witness_out, fileio.emit_man_witness(doc, answer.witness))
    return EXIT_YES if answer.decision else EXIT_NO


def _cmd_reduce(args) -> int:
    graph = fileio.parse_graph(_read(args.graph))
    if args.target == "pv-rec":
        if args.k is None:
            raise ModelError("--k (dominating set size bound) is required for pv-rec")
        doc, layout = reduce_ds_to_pv_rec(graph, args.k)
    elif args.target == "pv-man":
        doc, layout = reduce_mcc_to_pv_man(graph)
    else:
        doc, layout = reduce_mcc_to_pd_rec(graph)
    _write(args.output, fileio.emit_election(doc))
    _write(args.output + ".layout.json", fileio.emit_layout(layout))
    print(f"wrote {args.output} and {args.output}.layout.json")
    return EXIT_YES


def _cmd_verify(args) -> int:
    doc = fileio.parse_election(_read(args.election))
    witness = fileio.parse_witness(_read(args.witness))
    ok, message = verify_witness(doc, witness)
    print(("ok: " if ok else "fail: ") + message)
    return EXIT_YES if ok else EXIT_NO


def _cmd_oracle(args) -> int:
    graph = fileio.parse_graph(_read(args.graph))
    if args.problem == "ds":
        if args.k is None:
            raise ModelError("--k is required for the dominating set oracle")
        decision, witness = dominating_set_exists(graph, args.k)
        label = "dominating set"
    else:
        decision, witness = multicolored_clique_exists(graph)
        label = "multicolored clique"
    print(f"decision: {'yes' if decision else 'no'}")
    if decision:
        print(f"{label}: {' '.join(str(v + 1) for v in sorted(witness))}")
    return EXIT_YES if decision else EXIT_NO


def _cmd_decode(args) -> int:
    layout = fileio.parse_layout(_read(args.layout))
    witness = fileio.parse_witness(_read(args.witness))
    names = witness["recount"] if witness["kind"] == "rec" else witness["touched"]
    decoded = decode_witness(layout, names)
    print("vertices:", " ".join(str(v) for v in decoded["vertices"]))
    print("edges:", " ".join(f"{u}-{v}" for u, v in decoded["edges"]))
    return EXIT_YES


def _cmd_bench(args) -> int:
    if args.kernel == "both":
        names = kernels.available()
    elif args.kernel:
        names = (args.kernel,)
    else:
        names = (kernels.default_name(),)
    scales = tuple(int(s) for s in args.scales.split(","))
    rows = bench.rec_scaling_rows(
        range(args.k_min, args.k_max + 1),
        voters_scales=scales,
        kernel_names=names,
        repeats=args.repeats,
    )
    text = bench.rows_to_csv(rows)
    if args.out:
        _write(args.out, text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_YES


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="electiongame",
        description="Exact solvers for recounting/manipulation games on districted plurality elections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="decide an election problem file")
    solve.add_argument("election")
    solve.add_argument("--rule", choices=["pv", "pd"])
    solve.add_argument("--budget-a", type=int, dest="budget_a")
    solve.add_argument("--budget-d", type=int, dest="budget_d")
    solve.add_argument("--defender-tie", choices=["pessimistic", "optimistic"])
    solve.add_argument("--threads", type=int, default=_default_threads())
    solve.add_argument("--limit-nodes", type=int, default=1_000_000, dest="limit_nodes")
    solve.add_argument("--kernel", choices=["fast", "python"])
    solve.add_argument("--witness-out", dest="witness_out",
                       help="write a yes-witness to this file")
    solve.set_defaults(func=_cmd_solve)

    reduce_p = sub.add_parser("reduce", help="build an election instance from a graph")
    reduce_p.add_argument("graph")
    reduce_p.add_argument("--target", choices=["pv-rec", "pv-man", "pd-rec"], required=True)
    reduce_p.add_argument("-k", type=int, default=None)
    reduce_p.add_argument("-o", "--output", required=True)
    reduce_p.set_defaults(func=_cmd_reduce)

    verify_p = sub.add_parser("verify", help="re-check a claimed witness")
    verify_p.add_argument("election")
    verify_p.add_argument("witness")
    verify_p.set_defaults(func=_cmd_verify)

    oracle = sub.add_parser("oracle", help="brute-force graph oracle")
    oracle.add_argument("graph")
    oracle.add_argument("--problem", choices=["ds", "mcc"], required=True)
    oracle.add_argument("-k", type=int, default=None)
    oracle.set_defaults(func=_cmd_oracle)

    decode = sub.add_parser("decode", help="map an election witness back to the graph")
    decode.add_argument("layout")
    decode.add_argument("witness")
    decode.set_defaults(func=_cmd_decode)

    bench_p = sub.add_parser("bench", help="scaling benchmark, CSV output")
    bench_p.add_argument("--k-min", type=int, default=8, dest="k_min")
    bench_p.add_argument("--k-max", type=int, default=14, dest="k_max")
    bench_p.add_argument("--scales", default="1")
    bench_p.add_argument("--kernel", choices=["fast", "python", "both"])
    bench_p.add_argument("--repeats", type=int, default=3)
    bench_p.add_argument("--out")
    bench_p.set_defaults(func=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ModelError, GraphError, ReductionError, fileio.FormatError,
            OracleScaleError, SearchSpaceExceeded, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
