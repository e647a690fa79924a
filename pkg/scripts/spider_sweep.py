"""Check the spider lemma on every spanning tree of K_n with congestion <= n - 1.

    python scripts/spider_sweep.py 6 7
"""

import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from stclab.exact import check_spider_lemma, iter_spanning_trees
from stclab.graph import complete_graph, tree_congestion


@dataclass
class SweepConfig:
    n: int
    rho1: Fraction = Fraction(1)
    rho2: Fraction = Fraction(1, 2)


def sweep(cfg: SweepConfig) -> dict:
    G = complete_graph(cfg.n)
    k = cfg.n - 1
    trees = qualifying = counterexamples = 0
    for T in iter_spanning_trees(G):
        trees += 1
        if tree_congestion(G, T).max > k:
            continue
        qualifying += 1
        v = check_spider_lemma(G, T, range(cfg.n), cfg.rho1, cfg.rho2, k)
        counterexamples += v.counterexample
    return {"n": cfg.n, "trees": trees, "congestion_le_k": qualifying, "counterexamples": counterexamples}


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("sizes", nargs="*", type=int, default=[6, 7])
    args = p.parse_args()
    for n in args.sizes:
        start = time.perf_counter()
        row = sweep(SweepConfig(n))
        print(f"K_{n}: {row['trees']} trees, {row['congestion_le_k']} with congestion <= {n - 1}, "
              f"{row['counterexamples']} counterexamples ({time.perf_counter() - start:.2f}s)")


if __name__ == "__main__":
    main()
