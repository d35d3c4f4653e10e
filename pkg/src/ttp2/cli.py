"""Command-line front end: gen | solve | validate | bounds | exact | bench.

Exit codes: 0 success, 1 infeasibility or assertion failure, 2 usage or
parse errors.  Reports are emitted as one JSON document per line.
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import travel_totals
from .construction import construct_schedule, read_timetable, write_timetable
from .errors import TTP2Error
from .exact import solve_exact
from .graph import min_weight_perfect_matching, minimum_spanning_tree, christofides_tour
from .instances import (
    EPS_TRI_DEFAULT,
    GENERATOR_KINDS,
    generate_instance,
    load_instance,
    serialize_instance,
)
from .numbering import assign_numbering, numbering_diagnostics
from .validation import validate_schedule

USAGE_EXIT = 2
FAIL_EXIT = 1


def _instance_from_args(args):
    if getattr(args, "instance", None):
        with open(args.instance, "r", encoding="utf-8") as fh:
            return load_instance(fh.read(), fmt=args.format, eps_tri=args.eps_tri)
    return generate_instance(args.kind, args.n, args.seed)


def _add_instance_args(p, require_n=False):
    p.add_argument("--instance", help="path to a distance-matrix file")
    p.add_argument("--format", default="auto", choices=["auto", "headered", "bare"],
                   help="instance file format (default: auto)")
    p.add_argument("--kind", default="euclidean", choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int, default=10 if not require_n else None, required=require_n)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--eps-tri", type=float, default=EPS_TRI_DEFAULT)


def _solve_report(dm, args) -> tuple[dict, str, int]:
    res = construct_schedule(dm)
    violations = validate_schedule(res.schedule, k=args.k)
    rep = travel_totals(res.schedule, dm, res.numbering, res.matching, res.tree)
    doc = {
        "n": dm.n,
        "seed": getattr(args, "seed", None),
        "kind": getattr(args, "kind", None) if not getattr(args, "instance", None) else "file",
        "total": rep.total,
        "lb1": rep.lb1,
        "lb2": rep.lb2,
        "ratio": rep.ratio_lb1,
        "target": rep.target_ratio,
        "analytic_upper": rep.analytic_upper,
        "ineq4_holds": rep.ineq4_holds,
        "violations": len(violations),
    }
    return doc, write_timetable(res.schedule), len(violations)


def cmd_gen(args) -> int:
    dm = generate_instance(args.kind, args.n, args.seed)
    text = serialize_instance(dm)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_solve(args) -> int:
    dm = _instance_from_args(args)
    doc, timetable, nviol = _solve_report(dm, args)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(timetable)
    else:
        sys.stdout.write(timetable)
    print(json.dumps(doc))
    return FAIL_EXIT if nviol else 0


def cmd_validate(args) -> int:
    with open(args.timetable, "r", encoding="utf-8") as fh:
        schedule = read_timetable(fh.read())
    violations = validate_schedule(schedule, k=args.k, expected_days=args.days)
    for v in violations:
        print(f"{v.kind} teams={v.teams} days={v.days}: {v.detail}")
    print(json.dumps({"n": schedule.n, "violations": len(violations)}))
    return FAIL_EXIT if violations else 0


def cmd_bounds(args) -> int:
    dm = _instance_from_args(args)
    matching = min_weight_perfect_matching(dm)
    tree = minimum_spanning_tree(dm)
    tour = christofides_tour(dm)
    numbering = assign_numbering(dm, matching, tour)
    from .analysis import analytic_upper_bound, lower_bounds

    doc = lower_bounds(dm, matching, tree)
    doc["analytic_upper"] = analytic_upper_bound(dm, numbering, matching, tree)
    doc.update(numbering_diagnostics(numbering, dm, matching, tree, tour))
    print(json.dumps(doc))
    return 0


def cmd_exact(args) -> int:
    dm = _instance_from_args(args)
    result = solve_exact(dm, k=args.k, node_limit=args.node_limit)
    violations = validate_schedule(result.schedule, k=args.k)
    print(
        json.dumps(
            {
                "n": dm.n,
                "optimum": result.optimum,
                "nodes": result.nodes_explored,
                "violations": len(violations),
            }
        )
    )
    return FAIL_EXIT if violations else 0


def cmd_bench(args) -> int:
    failed = 0
    for n in range(args.n_start, args.n_end + 1, args.n_step):
        for seed in range(1, args.seeds + 1):
            dm = generate_instance(args.kind, n, seed)
            ns = argparse.Namespace(k=args.k, seed=seed, kind=args.kind, instance=None)
            doc, _, nviol = _solve_report(dm, ns)
            print(json.dumps(doc))
            if nviol or (doc["ineq4_holds"] and doc["ratio"] > doc["target"] * (1 + 1e-9)):
                failed += 1
    return FAIL_EXIT if failed else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ttp2", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a generated instance")
    p.add_argument("--kind", default="euclidean", choices=GENERATOR_KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("solve", help="construct a schedule and report travel")
    _add_instance_args(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--out", help="write the timetable here instead of stdout")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("validate", help="check a timetable file")
    p.add_argument("--timetable", required=True)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--days", type=int, default=None)
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("bounds", help="print lb1/lb2/analytic upper bound")
    _add_instance_args(p)
    p.set_defaults(fn=cmd_bounds)

    p = sub.add_parser("exact", help="optimal solver for n <= 8")
    _add_instance_args(p)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--node-limit", type=int, default=500_000_000)
    p.set_defaults(fn=cmd_exact)

    p = sub.add_parser("bench", help="sweep n and seeds, one report line each")
    p.add_argument("--kind", default="euclidean", choices=GENERATOR_KINDS)
    p.add_argument("--n-start", type=int, default=10)
    p.add_argument("--n-end", type=int, default=50)
    p.add_argument("--n-step", type=int, default=4)
    p.add_argument("--seeds", type=int, default=20)
    p.add_argument("--k", type=int, default=2)
    p.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code else 0
    try:
        return args.fn(args)
    except TTP2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
