"""Star-family congestion survey on one 3-Partition instance.

Builds the reduction graph, then hangs X on Y in every triple split (small
instances) and in random placements, comparing the closed form with direct
cut counts and recording how many placements stay within k.

    python scripts/star_family_suite.py data/no2.json --samples 500
"""

import argparse
import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from stclab.graph import tree_congestion
from stclab.reduction import (
    build_reduction,
    direct_star_congestion,
    random_assignment,
    star_family_congestion,
    triple_assignments,
)
from stclab.threepart import instance_from_json, normalize_instance, solve_3partition_bruteforce


@dataclass
class SuiteConfig:
    instance: str
    samples: int = 200
    seed: int = 0
    high_bias: float = 0.25


def run(cfg: SuiteConfig) -> dict:
    norm = normalize_instance(instance_from_json(json.loads(Path(cfg.instance).read_text())))
    R = build_reduction(norm)
    rng = random.Random(cfg.seed)
    placements = list(triple_assignments(R)) if R.size_x <= 9 else []
    n_splits = len(placements)
    placements += [random_assignment(R, rng, cfg.high_bias) for _ in range(cfg.samples)]
    within_k = mismatches = 0
    for assign in placements:
        fam = star_family_congestion(R, assign)
        mismatches += fam.congestion != direct_star_congestion(R, fam.tree)
        within_k += tree_congestion(R.graph, fam.tree).max <= R.k
    return {
        "config": asdict(cfg), "k": R.k, "n": R.graph.n,
        "yes_instance": solve_3partition_bruteforce(norm.base) is not None,
        "triple_splits": n_splits, "placements": len(placements),
        "within_k": within_k, "closed_form_mismatches": mismatches,
    }


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("instance")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()
    print(json.dumps(run(SuiteConfig(args.instance, args.samples, args.seed)), indent=2))


if __name__ == "__main__":
    main()
