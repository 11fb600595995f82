#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Times one refinement sweep over a synthetic dataset and the size-4 census on
dense graphs, then prints per-backend rates and the speedup. Verifies on the
fly that both backends produce identical results.

    python benchmarks/bench_kernels.py [--seed N] [--graphs N] [--nodes N]
"""

import argparse
import random
import time

import numpy as np

from wlaudit import build_graph
from wlaudit import _pykernels

try:
    from wlaudit import _ckernels
except ImportError:
    _ckernels = None


def synthetic_graphs(rng, count, n, p):
    graphs = []
    for _ in range(count):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)
                 if rng.random() < p]
        graphs.append(build_graph(n, edges))
    return graphs


def bench_refine(impl, graphs, iterations=3):
    interner = {}
    next_id = 1
    colors = [np.zeros(g.node_count, dtype=np.int64) for g in graphs]
    start = time.perf_counter()
    for _ in range(iterations):
        for i, g in enumerate(graphs):
            colors[i], next_id = impl.refine_pass(
                g.indptr, g.indices, colors[i], interner, next_id)
    elapsed = time.perf_counter() - start
    return elapsed, colors


def bench_census(impl, graphs):
    results = []
    start = time.perf_counter()
    for g in graphs:
        results.append(impl.motif_census(g.indptr, g.indices, g.node_count,
                                         4, 10**10))
    elapsed = time.perf_counter() - start
    return elapsed, results


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--graphs", type=int, default=200,
                        help="graphs in the refinement benchmark")
    parser.add_argument("--nodes", type=int, default=300,
                        help="nodes per refinement graph")
    parser.add_argument("--census-graphs", type=int, default=30)
    parser.add_argument("--census-nodes", type=int, default=45)
    args = parser.parse_args()

    if _ckernels is None:
        print("compiled kernels unavailable; build with "
              "`python setup.py build_ext --inplace` or `pip install -e .`")

    rng = random.Random(args.seed)
    sparse = synthetic_graphs(rng, args.graphs, args.nodes, 4.0 / args.nodes)
    dense = synthetic_graphs(rng, args.census_graphs, args.census_nodes, 0.35)
    total_nodes = sum(g.node_count for g in sparse)
    subgraphs = None

    print(f"refinement: {args.graphs} graphs x {args.nodes} nodes, 3 sweeps")
    t_pure, col_pure = bench_refine(_pykernels, sparse)
    rate = 3 * total_nodes / t_pure
    print(f"  pure      {t_pure:8.3f}s   {rate/1e6:6.2f} M node-updates/s")
    if _ckernels is not None:
        t_comp, col_comp = bench_refine(_ckernels, sparse)
        rate = 3 * total_nodes / t_comp
        print(f"  compiled  {t_comp:8.3f}s   {rate/1e6:6.2f} M node-updates/s"
              f"   ({t_pure / t_comp:.1f}x)")
        assert all((a == b).all() for a, b in zip(col_pure, col_comp)), \
            "backends disagree on refinement ids"

    print(f"census: {args.census_graphs} graphs x {args.census_nodes} nodes, "
          f"p=0.35, sizes up to 4")
    t_pure, res_pure = bench_census(_pykernels, dense)
    subgraphs = sum(r[0] for r in res_pure)
    print(f"  pure      {t_pure:8.3f}s   {subgraphs/t_pure/1e6:6.2f} M subgraphs/s")
    if _ckernels is not None:
        t_comp, res_comp = bench_census(_ckernels, dense)
        print(f"  compiled  {t_comp:8.3f}s   {subgraphs/t_comp/1e6:6.2f} M subgraphs/s"
              f"   ({t_pure / t_comp:.1f}x)")
        assert res_pure == res_comp, "backends disagree on census counts"
    print(f"  ({subgraphs} connected subgraphs enumerated per run)")


if __name__ == "__main__":
    main()
