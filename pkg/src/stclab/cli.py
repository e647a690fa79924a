"""``stc-lab`` command line.

Every subcommand prints one JSON report on stdout. Exit status: 0 pass,
1 a checked property failed, 2 usage, input or size error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
import time
from pathlib import Path

from . import io
from .classify import clique_cover_3, find_claw, is_proper_interval_ordering
from .exact import InfeasibleError, resolve_budget, stc_decide, stc_exact
from .graph import GraphError, tree_congestion
from .reduction import (
    HypothesisViolation,
    LemmaContradiction,
    ReductionArtifact,
    audit_construction,
    build_reduction,
    build_witness_tree,
    direct_star_congestion,
    extract_partition,
    gamma_profile,
    labels_lines,
    random_assignment,
    star_family_congestion,
    triple_assignments,
)
from .threepart import (
    MAX_BRUTEFORCE_ITEMS,
    InstanceError,
    NormalizedInstance,
    instance_from_json,
    is_normalized,
    normalize_instance,
    solve_3partition_bruteforce,
    validate_instance,
    verify_partition,
)

log = logging.getLogger("stclab")

DEFAULT_SEED = 20250101
EXHAUSTIVE_SPLIT_LIMIT = 9


class UsageError(Exception):
    """Bad input: exit status 2."""


class CheckFailed(Exception):
    """A checked property failed: exit status 1."""


def _load_instance(path) -> NormalizedInstance:
    try:
        return normalize_instance(instance_from_json(io.read_json(path)))
    except InstanceError as exc:
        raise UsageError(f"{path}: invalid instance: {exc}") from None


def _artifact(graph_path, labels_path, instance_path=None) -> ReductionArtifact:
    """Rebuild the artifact around a graph read from disk.

    The instance comes from ``instance_path`` when given, otherwise it is
    read back from the degrees of the X vertices and the labels metadata.
    """
    G = io.read_graph(graph_path)
    labels = io.read_labels(labels_path)
    if len(labels.roles) != G.n:
        raise UsageError(f"labels cover {len(labels.roles)} vertices, graph has {G.n}")
    n_x = sum(1 for r, _ in labels.roles if r == "X")
    if n_x == 0 or n_x % 3:
        raise UsageError(f"labels give |X| = {n_x}, not a positive multiple of 3")
    m = n_x // 3
    if instance_path is not None:
        inst = _load_instance(instance_path)
    else:
        a = tuple(G.degree(v) - 3 * m + 1 for v in range(n_x))
        try:
            base = validate_instance(m, sum(a) // m, a)
        except InstanceError as exc:
            raise UsageError(f"cannot read an instance back from the graph: {exc}") from None
        scale = int(labels.meta.get("scale", "1"))
        perm = labels.perm or tuple(range(n_x))
        inst = NormalizedInstance(base, scale, perm)
    k = 3 * inst.B
    if labels.k is not None and labels.k != k:
        raise UsageError(f"labels say k={labels.k}, instance gives k={k}")
    sy = inst.a[-1]
    roles = tuple(
        [("X", i) for i in range(1, 3 * m + 1)]
        + [("Y", i) for i in range(1, sy + 1)]
        + [("Z", i) for i in range(1, k - sy + 2)]
    )
    if tuple(labels.roles) != roles:
        raise UsageError("labels do not follow the canonical x, y, z layout for this instance")
    return ReductionArtifact(G, k, roles, inst, gamma_profile(inst), tuple(range(G.n)))


def _classify_items(R: ReductionArtifact) -> list[dict]:
    G = R.graph
    order = is_proper_interval_ordering(G, R.canonical_order)
    claw = find_claw(G)
    cover = clique_cover_3(G, [R.part(p) for p in "XYZ"])
    return [
        {"name": "proper_interval_ordering", "ok": order.valid, "detail": order.to_json()},
        {"name": "claw_free", "ok": claw is None,
         "detail": None if claw is None else {"center": claw[0], "leaves": list(claw[1])}},
        {"name": "clique_cover_3", "ok": cover, "detail": ""},
    ]


def _audit_payload(R: ReductionArtifact) -> tuple[bool, dict]:
    audit = [item.to_json() for item in audit_construction(R)]
    classify = _classify_items(R)
    ok = all(i["ok"] for i in audit) and all(i["ok"] for i in classify)
    return ok, {"k": R.k, "n": R.graph.n, "m_edges": R.graph.m, "audit": audit, "classify": classify}


def cmd_gen(args) -> tuple[bool, dict]:
    if args.no_normalize:
        try:
            inst = instance_from_json(io.read_json(args.instance))
        except InstanceError as exc:
            raise UsageError(f"{args.instance}: invalid instance: {exc}") from None
        if not is_normalized(inst):
            raise UsageError("--no-normalize needs a sorted instance with every value >= 8m")
        norm = NormalizedInstance(inst, 1, tuple(range(len(inst.a))))
    else:
        norm = _load_instance(args.instance)
    R = build_reduction(norm)
    io.write_graph(args.out, R.graph, (f"k {R.k}",))
    io.write_labels(args.labels, labels_lines(R, str(args.instance)))
    if args.order:
        Path(args.order).write_text(io.format_order(R.canonical_order))
    return True, {
        "k": R.k, "n": R.graph.n, "m_edges": R.graph.m, "scale": norm.scale,
        "instance": norm.base.to_json(), "sizes": {"X": R.size_x, "Y": R.size_y, "Z": R.size_z},
    }


def cmd_audit(args):
    return _audit_payload(_artifact(args.graph, args.labels, args.instance))


def cmd_witness(args):
    R = _artifact(args.graph, args.labels)
    P = io.read_partition(args.partition)
    try:
        P = R.instance.from_original(P)
        T = build_witness_tree(R, P)
    except (KeyError, ValueError) as exc:
        raise UsageError(f"partition rejected: {exc}") from None
    io.write_tree(args.out, T)
    report = tree_congestion(R.graph, T)
    return report.max <= R.k, {"k": R.k, "congestion": report.max, "argmax_edge": _edge1(report.argmax_edge)}


def cmd_extract(args):
    R = _artifact(args.graph, args.labels)
    T = io.read_tree(args.tree, R.graph)
    try:
        P = extract_partition(R, T)
    except (HypothesisViolation, LemmaContradiction) as exc:
        raise CheckFailed(str(exc)) from None
    original = R.instance.to_original(P)
    if args.out:
        Path(args.out).write_text(io.dump_json(original.to_json()))
    return True, {"partition": original.to_json(), "sorted_partition": P.to_json()}


def cmd_eval_tree(args):
    G = io.read_graph(args.graph)
    T = io.read_tree(args.tree, G)
    report = tree_congestion(G, T)
    payload = report.to_json()
    payload["argmax_edge"] = _edge1(report.argmax_edge)
    payload["per_edge"] = [[u + 1, v + 1, c] for u, v, c in payload["per_edge"]]
    return True, payload


def cmd_solve(args):
    G = io.read_graph(args.graph)
    res = stc_exact(G, resolve_budget(args.budget))
    return True, {
        "stc": res.value, "witness": [_edge1(e) for e in res.witness.edges],
        "trees_examined": res.trees_examined, "tree_count": res.tree_count,
    }


def cmd_decide(args):
    G = io.read_graph(args.graph)
    ok, tree = stc_decide(G, args.k, resolve_budget(args.budget))
    return True, {"k": args.k, "answer": ok,
                  "witness": [_edge1(e) for e in tree.edges] if tree else None}


def cmd_check_pio(args):
    G = io.read_graph(args.graph)
    order = io.read_order(args.order, G.n)
    w = is_proper_interval_ordering(G, order)
    violation = [v + 1 for v in w.violation] if w.violation else None
    return w.valid, {"valid": w.valid, "violation": violation}


def cmd_3part(args):
    try:
        inst = instance_from_json(io.read_json(args.instance))
    except InstanceError as exc:
        raise UsageError(f"{args.instance}: invalid instance: {exc}") from None
    if len(inst.a) > MAX_BRUTEFORCE_ITEMS:
        raise UsageError(f"brute force is limited to {MAX_BRUTEFORCE_ITEMS} values")
    P = solve_3partition_bruteforce(inst)
    if P is None:
        return True, {"answer": False, "partition": None}
    return bool(verify_partition(inst, P)), {"answer": True, "partition": P.to_json()}


def cmd_roundtrip(args):
    norm = _load_instance(args.instance)
    R = build_reduction(norm, check=False)
    checks: dict[str, bool] = {}
    audit_ok, audit = _audit_payload(R)
    checks["audit"] = audit_ok
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        io.write_graph(out / "graph.txt", R.graph, (f"k {R.k}",))
        io.write_labels(out / "labels.txt", labels_lines(R, str(args.instance)))
    if len(norm.a) > MAX_BRUTEFORCE_ITEMS:
        raise UsageError(f"brute force is limited to {MAX_BRUTEFORCE_ITEMS} values")
    P = solve_3partition_bruteforce(norm.base)
    payload = {"k": R.k, "n": R.graph.n, "m_edges": R.graph.m, "audit": audit, "yes_instance": P is not None}
    if P is not None:
        checks["solution_verifies"] = bool(verify_partition(norm.base, P))
        T = build_witness_tree(R, P)
        report = tree_congestion(R.graph, T)
        checks["witness_congestion_is_k"] = report.max == R.k
        try:
            Q = extract_partition(R, T)
            checks["extract_matches"] = Q == P and bool(verify_partition(norm.base, Q))
        except (HypothesisViolation, LemmaContradiction) as exc:
            log.error("extraction failed: %s", exc)
            checks["extract_matches"] = False
        if args.out_dir:
            io.write_tree(Path(args.out_dir) / "witness.txt", T)
        payload.update(
            partition=norm.to_original(P).to_json(),
            witness_congestion=report.max,
            witness_argmax_edge=_edge1(report.argmax_edge),
        )
    else:
        payload["star_family"] = _star_family_suite(R, args.seed, args.samples)
        checks["star_family_exceeds_k"] = payload["star_family"]["all_exceed_k"]
        checks["closed_form_matches_direct"] = payload["star_family"]["closed_form_matches"]
    payload["checks"] = checks
    return all(checks.values()), payload


def _star_family_suite(R: ReductionArtifact, seed: int, samples: int) -> dict:
    assignments = []
    exhaustive = R.size_x <= EXHAUSTIVE_SPLIT_LIMIT
    if exhaustive:
        assignments += list(triple_assignments(R))
    rng = random.Random(seed)
    assignments += [random_assignment(R, rng) for _ in range(samples)]
    exceed = matches = 0
    for assign in assignments:
        fam = star_family_congestion(R, assign)
        direct = direct_star_congestion(R, fam.tree)
        matches += direct == fam.congestion
        exceed += tree_congestion(R.graph, fam.tree).max > R.k and fam.max_inner > R.k
    return {
        "exhaustive_triple_splits": exhaustive, "assignments": len(assignments),
        "exceeding_k": exceed, "all_exceed_k": exceed == len(assignments),
        "closed_form_matches": matches == len(assignments), "seed": seed,
    }


def _edge1(e):
    return None if e is None else [e[0] + 1, e[1] + 1]


COMMANDS = {
    "gen": (cmd_gen, ["instance"]),
    "audit": (cmd_audit, ["graph", "labels", "instance"]),
    "witness": (cmd_witness, ["graph", "labels", "partition"]),
    "extract": (cmd_extract, ["graph", "labels", "tree"]),
    "eval-tree": (cmd_eval_tree, ["graph", "tree"]),
    "solve": (cmd_solve, ["graph"]),
    "decide": (cmd_decide, ["graph"]),
    "check-pio": (cmd_check_pio, ["graph", "order"]),
    "3part": (cmd_3part, ["instance"]),
    "roundtrip": (cmd_roundtrip, ["instance"]),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stc-lab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="build the reduction graph for a 3-Partition instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--order", help="also write the canonical vertex order")
    s.add_argument("--no-normalize", action="store_true")

    s = sub.add_parser("audit", help="check a generated graph against the construction")
    s.add_argument("--graph", required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--instance", required=True)

    s = sub.add_parser("witness", help="spanning tree of congestion k from a partition")
    s.add_argument("--graph", required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--partition", required=True)
    s.add_argument("--out", required=True)

    s = sub.add_parser("extract", help="partition from a tree of congestion at most k")
    s.add_argument("--graph", required=True)
    s.add_argument("--labels", required=True)
    s.add_argument("--tree", required=True)
    s.add_argument("--out", help="write the partition JSON here")

    s = sub.add_parser("eval-tree", help="congestion report of a spanning tree")
    s.add_argument("--graph", required=True)
    s.add_argument("--tree", required=True)

    s = sub.add_parser("solve", help="exact spanning tree congestion")
    s.add_argument("--graph", required=True)
    s.add_argument("--budget", type=int)

    s = sub.add_parser("decide", help="is stc(G) <= k?")
    s.add_argument("--graph", required=True)
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--budget", type=int)

    s = sub.add_parser("check-pio", help="verify a proper interval ordering")
    s.add_argument("--graph", required=True)
    s.add_argument("--order", required=True)

    s = sub.add_parser("3part", help="brute-force 3-Partition")
    s.add_argument("--instance", required=True)

    s = sub.add_parser("roundtrip", help="full reduction pipeline on one instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--out-dir")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--samples", type=int, default=200)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    func, file_flags = COMMANDS[args.command]
    flags = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "verbose")}
    report = {"command": {"name": args.command, "flags": flags}}
    start = time.perf_counter()
    code = 0
    try:
        inputs = {f: io.digest(flags[f]) for f in file_flags if flags.get(f)}
        report["inputs"] = inputs
        ok, payload = func(args)
        report["status"] = "pass" if ok else "fail"
        report["payload"] = payload
        code = 0 if ok else 1
    except CheckFailed as exc:
        report.update(status="fail", error=str(exc))
        code = 1
    except (UsageError, io.FormatError, GraphError, InstanceError, InfeasibleError, OSError) as exc:
        report.update(status="fail", error=f"{type(exc).__name__}: {exc}")
        code = 2
    if code:
        print(f"stc-lab {args.command}: {report.get('error', 'checks failed')}", file=sys.stderr)
    report["timing"] = {"wall_seconds": round(time.perf_counter() - start, 6)}
    sys.stdout.write(io.dump_json(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
