"""Command-line entry point.

Exit codes: 0 found or stable, 1 none or unstable, 2 aborted, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import generators as gen
from .dispatch import SOLVERS
from .exact import DEFAULT_BUDGET, Status, brute_force_search
from .game import ValidationError, classify_preferences
from .io import (InstanceError, allocation_to_dict, check_document, emit_result, game_to_dict,
                 load_allocation, load_game, result_document, save_game)
from .parameterized import kernelize_by_vc
from .stability import Notion, is_stable
from .structured import ShapeError, is_clique, star_center

EXIT_OK, EXIT_NONE, EXIT_ABORTED, EXIT_INPUT = 0, 1, 2, 3
_EXIT = {Status.FOUND: EXIT_OK, Status.NONE: EXIT_NONE, Status.ABORTED: EXIT_ABORTED}


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _edges(text: str) -> list[tuple[int, int]]:
    """``"0-1 1-2"`` or ``"0-1,1-2"``."""
    out = []
    for tok in text.replace(",", " ").split():
        u, v = tok.split("-")
        out.append((int(u), int(v)))
    return out


def _write(doc: dict, path: str | None) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    game = load_game(args.file)
    if args.solver == "brute":
        run = lambda: SOLVERS["brute"](game, args.notion, args.budget,  # noqa: E731
                                       deterministic=args.deterministic, workers=args.workers)
    else:
        run = lambda: SOLVERS[args.solver](game, args.notion, args.budget)  # noqa: E731
    t0 = time.perf_counter()
    out = run()
    doc = result_document(game, out, args.notion, time.perf_counter() - t0)
    print(emit_result(doc, args.format))
    return _EXIT[out.status]


def cmd_check(args) -> int:
    game = load_game(args.file)
    alloc = load_allocation(args.allocation, game)
    doc = check_document(game, alloc)
    doc["notion"] = args.notion
    doc["stable"] = is_stable(game, alloc, args.notion)
    print(emit_result(doc, args.format))
    if args.format == "human":
        print(f"stable under {args.notion}: {doc['stable']}")
    return EXIT_OK if doc["stable"] else EXIT_NONE


def _generate(args):
    fam = args.family
    if fam.startswith("3partition"):
        build = {"3partition-clique": gen.gen_from_3partition, "3partition-tree": gen.gen_3partition_tree,
                 "3partition-path": gen.gen_3partition_path}[fam]
        art = build(_ints(args.elements), args.N, args.B)
        return art.game, {"kind": art.kind, "N": args.N, "B": args.B, "elements": _ints(args.elements)}, None
    if fam == "cubic-bisection":
        art = gen.gen_from_cubic_bisection(args.n, _edges(args.edges), args.k)
        return art.game, {"kind": art.kind, "k": args.k}, None
    if fam == "cnf":
        if args.dimacs:
            clauses = gen.parse_dimacs(Path(args.dimacs).read_text())
        else:
            clauses = [tuple(_ints(c)) for c in (args.clauses or "").split(";") if c.strip()]
        art = gen.gen_from_cnf(clauses)
        return art.game, {"kind": art.kind, "clauses": [list(c) for c in clauses]}, None
    if fam == "clique":
        art = gen.gen_from_clique(args.n, _edges(args.edges or ""), args.k)
        return art.game, {"kind": art.kind, "k": args.k}, None
    if fam in gen.COUNTEREXAMPLES:
        ce = gen.gen_counterexample(fam, n_agents=args.agents or 3, path_length=args.length)
        return ce.game, {"kind": fam}, ce.allocation
    if fam == "random":
        g = gen.gen_random(args.n, args.edge_density, args.agents or 0, args.pref_density, args.max_ideal,
                           args.shape, args.seed, args.topology)
        return g, {"kind": "random", "seed": args.seed, "shape": args.shape}, None
    raise InstanceError(f"unknown family {fam!r}")


def cmd_generate(args) -> int:
    game, meta, alloc = _generate(args)
    _write(game_to_dict(game, meta), args.output)
    if alloc is not None and args.allocation_out:
        _write(allocation_to_dict(game, alloc), args.allocation_out)
    return EXIT_OK


def cmd_kernelize(args) -> int:
    game = load_game(args.file)
    kern = kernelize_by_vc(game)
    names = [game.topology.name(v) for v in kern.back_map]
    meta = {"kind": "vc-kernel", "cover": sorted(game.topology.name(kern.back_map[v]) for v in kern.cover),
            "kept_vertices": names}
    save_game(kern.game, args.output, meta)
    print(f"kernel: {kern.game.n_vertices} of {game.n_vertices} vertices kept, cover size {len(kern.cover)}")
    return EXIT_OK


def _applicable(game) -> list[str]:
    shape = classify_preferences(game)
    out = ["auto", "nd", "vc", "diameter", "fixed-interested"]
    if is_clique(game) or star_center(game) is not None:
        out.append("clique-star")
    if shape.in_star:
        out.append("in-star")
    if shape.out_star:
        out.append("out-star")
    return out


def bench_instance(path: str, oracle: bool, budget: int) -> dict:
    """Run every applicable EF solver on one instance and compare statuses."""
    game = load_game(path)
    row = {"instance": Path(path).name, "runs": {}}
    for name in _applicable(game):
        t0 = time.perf_counter()
        out = SOLVERS[name](game, Notion.EF, budget)
        row["runs"][name] = {"status": out.status.value, "time_s": round(time.perf_counter() - t0, 6)}
    statuses = {r["status"] for r in row["runs"].values() if r["status"] != "aborted"}
    if oracle:
        t0 = time.perf_counter()
        ref = brute_force_search(game, Notion.EF, budget=budget)
        row["oracle"] = {"status": ref.status.value, "time_s": round(time.perf_counter() - t0, 6)}
        if ref.status is not Status.ABORTED:
            statuses.add(ref.status.value)
    row["agree"] = len(statuses) <= 1
    return row


def cmd_bench(args) -> int:
    files = sorted(str(p) for p in Path(args.dir).glob("*.json")
                   if not p.name.endswith(".alloc.json"))
    if not files:
        raise InstanceError(f"{args.dir}: no instance files")
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        rows = list(pool.map(bench_instance, files, [args.oracle] * len(files), [args.budget] * len(files)))
    if args.format == "machine":
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for r in rows:
            runs = "  ".join(f"{k}={v['status']}({v['time_s']:.3f}s)" for k, v in r["runs"].items())
            ref = f"  oracle={r['oracle']['status']}" if "oracle" in r else ""
            print(f"{'ok ' if r['agree'] else 'BAD'} {r['instance']}: {runs}{ref}")
    return EXIT_OK if all(r["agree"] for r in rows) else EXIT_NONE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dpgame", description="Stable allocations in distance preservation games")
    sub = p.add_subparsers(dest="command", required=True)
    notions = [n.value for n in Notion]

    s = sub.add_parser("solve", help="find a stable allocation")
    s.add_argument("file")
    s.add_argument("--notion", choices=notions, default="ef")
    s.add_argument("--solver", choices=sorted(SOLVERS), default="auto")
    s.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--format", choices=["human", "machine"], default="human")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="verify an allocation")
    c.add_argument("file")
    c.add_argument("--allocation", required=True)
    c.add_argument("--notion", choices=notions, default="ef")
    c.add_argument("--format", choices=["human", "machine"], default="human")
    c.set_defaults(func=cmd_check)

    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("family", choices=["3partition-clique", "3partition-tree", "3partition-path",
                                      "cubic-bisection", "cnf", "clique", "random", *gen.COUNTEREXAMPLES])
    g.add_argument("-o", "--output")
    g.add_argument("--allocation-out", help="bundled allocation (swap-not-ef)")
    g.add_argument("--elements", default="4,4,4,4,4,4")
    g.add_argument("--N", type=int, default=2)
    g.add_argument("--B", type=int, default=12)
    g.add_argument("--n", type=int, default=6)
    g.add_argument("--edges", help="edge list like '0-1,1-2'")
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--clauses", help="clauses like '1 2 3; -1 -2 -3'")
    g.add_argument("--dimacs", help="DIMACS CNF file")
    g.add_argument("--agents", type=int)
    g.add_argument("--length", type=int, default=4)
    g.add_argument("--edge-density", type=float, default=0.3)
    g.add_argument("--pref-density", type=float, default=0.5)
    g.add_argument("--max-ideal", type=int, default=3)
    g.add_argument("--shape", choices=gen.SHAPES, default="generic")
    g.add_argument("--topology", choices=gen.TOPOLOGIES, default="random")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_generate)

    k = sub.add_parser("kernelize", help="vertex-cover kernel of an instance")
    k.add_argument("file")
    k.add_argument("-o", "--output", required=True)
    k.set_defaults(func=cmd_kernelize)

    b = sub.add_parser("bench", help="run all applicable solvers on a directory of instances")
    b.add_argument("dir")
    b.add_argument("--oracle", action="store_true", help="also run exhaustive search and cross-check")
    b.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--format", choices=["human", "machine"], default="human")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InstanceError, ValidationError, ShapeError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
