"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--quick] [--json out.json]

Each workload runs the exhaustive search on a fixed set of seeded games with
both backends, checks that they return identical results, and reports the
median wall time over the repeats.
"""
import argparse
import json
import statistics
import sys
import time

from dpgame import kernels
from dpgame.generators import gen_counterexample, gen_from_cnf, gen_random


def workloads(quick):
    count = 5 if quick else 20
    n = 8 if quick else 9
    yield "ef random", kernels.EF, [gen_random(n, 0.3, 5, 0.8, 4, "generic", s) for s in range(count)]
    yield "swap random", kernels.SWAP, [gen_random(n, 0.3, 5, 0.8, 4, "generic", s) for s in range(count)]
    yield "jump random", kernels.JUMP, [gen_random(n, 0.3, 4, 0.8, 4, "generic", s) for s in range(count)]
    # exhausts the whole tree: no envy-free allocation exists
    yield "ef cycle (none)", kernels.EF, [gen_counterexample("no-ef-cycle", n_agents=5 if quick else 6).game]
    if not quick:
        yield "ef cnf unsat", kernels.EF, [gen_from_cnf([(1, 1, 1), (-1, -1, -1)]).game]


def time_backend(games, notion, impl, repeats):
    results, times = None, []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = [kernels.search(g, notion, impl=impl) for g in games]
        times.append(time.perf_counter() - t0)
        results = [(s, None if w is None else list(w), nodes) for s, w, nodes in out]
    return statistics.median(times), results


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--quick", action="store_true", help="small workloads, single repeat")
    p.add_argument("--repeats", type=int, default=None)
    p.add_argument("--json", help="also write the rows to this file")
    args = p.parse_args(argv)
    impls = kernels.backends()
    if "cython" not in impls:
        print("compiled extension not built; only the Python backend is available", file=sys.stderr)
    repeats = args.repeats or (1 if args.quick else 3)
    rows = []
    print(f"{'workload':<18}{'games':>6}{'nodes':>12}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, notion, games in workloads(args.quick):
        row = {"workload": name, "games": len(games)}
        ref = None
        for label, impl in impls.items():
            secs, res = time_backend(games, notion, impl, repeats)
            row[label] = secs
            if ref is None:
                ref = res
            elif res != ref:
                raise SystemExit(f"backends disagree on {name}")
        row["nodes"] = sum(r[2] for r in ref)
        row["speedup"] = row["python"] / row["cython"] if "cython" in row and row["cython"] > 0 else None
        rows.append(row)
        cy = f"{row['cython']:.3f}" if "cython" in row else "-"
        sp = f"{row['speedup']:.1f}x" if row["speedup"] else "-"
        print(f"{name:<18}{len(games):>6}{row['nodes']:>12}{row['python']:>11.3f}{cy:>11}{sp:>9}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
