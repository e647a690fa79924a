"""Exit criteria. Each test prints one PASS/FAIL line in the summary section."""

import json
import random
import time
from fractions import Fraction

import pytest

from stclab.classify import clique_cover_3, find_claw, is_proper_interval_ordering
from stclab.cli import main
from stclab.exact import check_spider_lemma, iter_spanning_trees, stc_exact, stc_unpruned
from stclab.graph import (
    build_graph,
    complete_graph,
    cycle_graph,
    edge_congestion,
    tree_congestion,
)
from stclab.reduction import (
    audit_construction,
    build_reduction,
    build_witness_tree,
    direct_star_congestion,
    expected_degree,
    extract_partition,
    inject_remove_edge,
    random_assignment,
    star_family_congestion,
    star_family_tree,
    triple_assignments,
)
from stclab.threepart import normalize_instance, solve_3partition_bruteforce, validate_instance, verify_partition

from conftest import D1, NO2, YES2


def reduction(params):
    return build_reduction(normalize_instance(validate_instance(*params)))


@pytest.mark.acceptance(1)
def test_worked_example(tmp_path, capsys):
    start = time.perf_counter()
    R = reduction(D1)
    G = R.graph
    assert (G.n, G.m, R.k) == (94, 4074, 90)
    assert len(R.part("Y")) + len(R.part("Z")) == 91 == R.k + 1
    assert all(G.degree(v) == expected_degree(R, v) for v in range(G.n))
    assert G.degree(R.x(1)) == 11 and G.degree(R.y(1)) == 66 and G.degree(R.z(80)) == 79
    assert all(G.degree(R.y(i)) == 90 for i in range(2, 12)) and G.degree(R.z(1)) == 90
    delta = G.induced_min_degree(set(R.part("Y")) | set(R.part("Z")))
    assert delta == 63 and 2 * delta >= 91 + 2
    assert all(item.ok for item in audit_construction(R))

    inst = tmp_path / "d1.json"
    inst.write_text(json.dumps({"m": 1, "B": 30, "a": [9, 10, 11]}))
    g, l = tmp_path / "g.txt", tmp_path / "l.txt"
    assert main(["gen", "--instance", str(inst), "--out", str(g), "--labels", str(l)]) == 0
    assert main(["audit", "--graph", str(g), "--labels", str(l), "--instance", str(inst)]) == 0
    capsys.readouterr()
    assert time.perf_counter() - start < 1.0


def _check_witness(R):
    P = solve_3partition_bruteforce(R.instance.base)
    T = build_witness_tree(R, P)
    report = tree_congestion(R.graph, T)
    assert report.max == R.k
    z1 = R.z(1)
    inner = {tuple(sorted((z1, R.y(i)))) for i in range(1, R.m + 1)}
    for e, c in report.per_edge.items():
        if c != R.k:
            continue
        leaf = [v for v in e if T.degree(v) == 1]
        assert e in inner or (leaf and R.graph.degree(leaf[0]) == R.k)
    return P, T


@pytest.mark.acceptance(2)
def test_witness_congestion_exact():
    start = time.perf_counter()
    for params, k in ((D1, 90), (YES2, 180)):
        R = reduction(params)
        assert R.k == k
        _check_witness(R)
    assert time.perf_counter() - start < 5.0


@pytest.mark.acceptance(3)
def test_roundtrip():
    for params in (D1, YES2):
        R = reduction(params)
        P, T = _check_witness(R)
        assert verify_partition(R.instance.base, P)
        Q = extract_partition(R, T)
        assert Q == P and verify_partition(R.instance.base, Q)


@pytest.mark.acceptance(4)
def test_no_instance_star_families():
    start = time.perf_counter()
    R = reduction(NO2)
    assert solve_3partition_bruteforce(R.instance.base) is None
    k = R.k
    splits = list(triple_assignments(R))
    assert len(splits) == 10
    for assign in splits:
        fam = star_family_congestion(R, assign)
        direct = direct_star_congestion(R, fam.tree)
        assert fam.congestion == direct
        assert max(fam.congestion[i] for i in range(1, R.m + 1)) > k
        assert max(direct[i] for i in range(1, R.m + 1)) > k

    rng = random.Random(2024)
    unbalanced = high = 0
    for _ in range(200):
        assign = random_assignment(R, rng, high_bias=0.3)
        sizes = [sum(1 for y in assign.values() if y == i) for i in range(1, R.m + 1)]
        unbalanced += any(s != 3 for s in sizes)
        high += any(y > R.m for y in assign.values())
        T = star_family_tree(R, assign)
        assert tree_congestion(R.graph, T).max > k
        assert max(direct_star_congestion(R, T).values()) > k
    assert unbalanced > 0 and high > 0
    assert time.perf_counter() - start < 30.0


def _random_connected(rng, n):
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    p = rng.uniform(0.2, 0.9)
    edges += [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return build_graph(n, edges)


@pytest.mark.acceptance(5)
def test_exact_solver_oracle():
    start = time.perf_counter()
    rng = random.Random(5)
    for _ in range(100):
        G = _random_connected(rng, rng.randint(2, 7))
        assert stc_exact(G).value == stc_unpruned(G).value
    for n in range(3, 8):
        res = stc_exact(complete_graph(n))
        assert res.value == n - 1
        # a star: one vertex adjacent to all others in the tree
        assert max(res.witness.degree(v) for v in range(n)) == n - 1
    for n in range(4, 9):
        assert stc_exact(cycle_graph(n)).value == 2
    for _ in range(50):
        n = rng.randint(2, 12)
        tree = build_graph(n, [(rng.randrange(v), v) for v in range(1, n)])
        assert stc_exact(tree).value == 1
    assert time.perf_counter() - start < 120.0


@pytest.mark.acceptance(6)
def test_spider_lemma_sweep():
    start = time.perf_counter()
    for n, total in ((6, 1296), (7, 16807)):
        G = complete_graph(n)
        seen = qualifying = 0
        for T in iter_spanning_trees(G):
            seen += 1
            if tree_congestion(G, T).max <= n - 1:
                qualifying += 1
                verdict = check_spider_lemma(G, T, range(n), 1, Fraction(1, 2), n - 1)
                assert verdict.premises_hold
                assert verdict.conclusion_holds and not verdict.counterexample
                assert verdict.offending_vertex is None and verdict.branch_degree >= n - 1
        assert seen == total and qualifying > 0
    assert time.perf_counter() - start < 60.0


@pytest.mark.acceptance(7)
def test_classification():
    start = time.perf_counter()
    for params in (D1, YES2, NO2):
        R = reduction(params)
        assert is_proper_interval_ordering(R.graph, R.canonical_order).valid
        assert find_claw(R.graph) is None
        assert clique_cover_3(R.graph, [R.part(p) for p in "XYZ"])
        broken = inject_remove_edge(R, R.y(R.m + 1), R.z(2))
        failed = [i.name for i in audit_construction(broken) if not i.ok]
        assert failed
    assert time.perf_counter() - start < 10.0


@pytest.mark.acceptance(8)
def test_closed_form_consistency():
    start = time.perf_counter()
    rng = random.Random(8)
    for params in (D1, YES2, NO2):
        R = reduction(params)
        z1 = R.z(1)
        for _ in range(1000):
            fam = star_family_congestion(R, random_assignment(R, rng))
            for i, value in fam.congestion.items():
                assert value == edge_congestion(R.graph, fam.tree, (z1, R.y(i)))
    assert time.perf_counter() - start < 60.0
