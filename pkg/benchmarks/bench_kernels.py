"""Benchmark the numba lane against the pure-numpy lane on the hot kernels.

Times, per lane and size: the raw edge-sampling kernel, the component
analysis, and the end-to-end sampler (kernel + canonical sort + graph
validation, which is shared numpy work on both lanes). Lanes emit
bit-identical graphs, so the comparison is purely about speed.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 10000 100000 --repeat 5
"""

import argparse
import os
import time


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_lane(sizes, c, repeat, seed):
    from supergraph import kernels
    from supergraph.config import SizeConfiguration
    from supergraph.graph import connected_components
    from supergraph.sampler import resolve_p, sample_direct

    kernels.warmup()
    rows = []
    for n in sizes:
        cfg = SizeConfiguration({1: n // 2, 2: n // 4})  # mixed sizes, N = 3n/4
        params = resolve_p("sparse", c, cfg)
        class_arrays = cfg.size_classes()
        graph = sample_direct(cfg, params, seed)  # warm
        t_kernel = best_of(
            lambda: kernels.sample_edges(*class_arrays, params.p, seed), repeat)
        t_comp = best_of(lambda: connected_components(graph), repeat)
        t_end = best_of(lambda: sample_direct(cfg, params, seed), repeat)
        rows.append((cfg.num_super, graph.edge_count, t_kernel, t_comp, t_end))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[10_000, 100_000, 1_000_000],
                        help="underlying vertex counts to benchmark")
    parser.add_argument("--c", type=float, default=1.5, help="sparse-regime c (p = c/n)")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    results = {}
    for lane, flag in (("numba", "1"), ("numpy", "0")):
        os.environ["SUPERGRAPH_NUMBA"] = flag
        results[lane] = bench_lane(args.sizes, args.c, args.repeat, args.seed)

    header = (f"{'N':>9} {'edges':>9} | {'kernel nb':>10} {'kernel np':>10} {'x':>5} | "
              f"{'comps nb':>10} {'comps np':>10} {'x':>5} | "
              f"{'e2e nb':>9} {'e2e np':>9} {'x':>5}")
    print(header)
    print("-" * len(header))
    for (n, m, k_nb, c_nb, e_nb), (_, m2, k_np, c_np, e_np) in zip(
            results["numba"], results["numpy"]):
        assert m == m2, "lanes disagree; run the test suite"
        print(f"{n:>9} {m:>9} | {1e3 * k_nb:>8.2f}ms {1e3 * k_np:>8.2f}ms {k_np / k_nb:>4.1f}x | "
              f"{1e3 * c_nb:>8.2f}ms {1e3 * c_np:>8.2f}ms {c_np / c_nb:>4.1f}x | "
              f"{1e3 * e_nb:>7.1f}ms {1e3 * e_np:>7.1f}ms {e_np / e_nb:>4.1f}x")


if __name__ == "__main__":
    main()
