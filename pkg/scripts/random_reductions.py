"""Audit and round-trip the reduction on randomly generated instances.

    python scripts/random_reductions.py --count 20 --m 2 --seed 1
"""

import argparse
import random
import time
from dataclasses import dataclass

from stclab.classify import find_claw, is_proper_interval_ordering
from stclab.graph import tree_congestion
from stclab.reduction import audit_construction, build_reduction, build_witness_tree, extract_partition
from stclab.threepart import normalize_instance, random_instance, solve_3partition_bruteforce


@dataclass
class Config:
    count: int = 10
    m: int = 2
    B_low: int = 13
    B_high: int = 60
    seed: int = 1


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--count", type=int, default=Config.count)
    p.add_argument("--m", type=int, default=Config.m)
    p.add_argument("--seed", type=int, default=Config.seed)
    args = p.parse_args()
    cfg = Config(count=args.count, m=args.m, seed=args.seed)
    rng = random.Random(cfg.seed)
    failures = 0
    for run in range(cfg.count):
        start = time.perf_counter()
        inst = random_instance(rng, cfg.m, rng.randint(cfg.B_low, cfg.B_high), planted=rng.random() < 0.5)
        norm = normalize_instance(inst)
        R = build_reduction(norm, check=False)
        ok = all(i.ok for i in audit_construction(R))
        ok &= is_proper_interval_ordering(R.graph, R.canonical_order).valid and find_claw(R.graph) is None
        P = solve_3partition_bruteforce(norm.base)
        note = "no"
        if P is not None:
            T = build_witness_tree(R, P)
            ok &= tree_congestion(R.graph, T).max == R.k and extract_partition(R, T) == P
            note = "yes"
        failures += not ok
        print(f"{run:3d} a={list(inst.a)} B={inst.B} scale={norm.scale} n={R.graph.n} k={R.k} "
              f"{note} {'ok' if ok else 'FAIL'} ({time.perf_counter() - start:.2f}s)")
    print(f"{cfg.count - failures}/{cfg.count} passed")


if __name__ == "__main__":
    main()
