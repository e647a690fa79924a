"""3-Partition to spanning tree congestion on proper interval graphs.

The graph has three cliques X, Y, Z with ``k = 3B``:

* ``x_i`` (one per value) is adjacent to ``y_1 .. y_{a_i}``;
* ``y_i`` with ``i <= m`` is adjacent to ``z_1 .. z_{|Z| - B - 12m + 15}``;
* ``y_i`` with ``i > m`` is adjacent to ``z_1 .. z_{|Z| - gamma_i}``;
* X and Z are not adjacent.

Role indices are 1-based, matching the usual write-up of the construction.
Vertex ids follow the canonical order ``x_1..x_3m, y_1..y_|Y|, z_1..z_|Z|``.
Partitions are 0-based positions in the sorted (normalized) instance.
"""

from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator

from .graph import (
    Graph,
    GraphError,
    SpanningTree,
    build_graph,
    classify_tree_shape,
    cut_by_degree_sum,
    edge_congestion,
    minimal_spanning_subtree,
    tree_congestion,
)
from .threepart import NormalizedInstance, Partition, is_normalized, verify_partition


class ConstructionError(RuntimeError):
    """Generated graph does not satisfy the construction's invariants."""


class HypothesisViolation(ValueError):
    """Tree congestion exceeds k, so partition extraction does not apply."""


class LemmaContradiction(RuntimeError):
    """A structural claim failed on a tree of congestion at most k."""


@dataclass(frozen=True)
class GammaProfile:
    """``values[i-1]`` is the number of values ``a_j >= i``."""

    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def gamma(self, i: int) -> int:
        return self.values[i - 1]

    def Gamma(self, i: int, n_items: int) -> range:
        """1-based indices ``j`` with ``a_j >= i`` (a suffix, by sortedness)."""
        return range(n_items - self.gamma(i) + 1, n_items + 1)


def gamma_profile(inst: NormalizedInstance) -> GammaProfile:
    a = inst.a
    top = max(a)
    counts = [0] * (top + 2)
    for x in a:
        counts[x] += 1
    values = []
    running = 0
    for i in range(top, 0, -1):
        running += counts[i]
        values.append(running)
    return GammaProfile(tuple(reversed(values)))


@dataclass(frozen=True)
class ReductionArtifact:
    graph: Graph
    k: int
    roles: tuple[tuple[str, int], ...]
    instance: NormalizedInstance
    gamma: GammaProfile
    canonical_order: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.instance.m

    @property
    def B(self) -> int:
        return self.instance.B

    @property
    def size_x(self) -> int:
        return 3 * self.instance.m

    @property
    def size_y(self) -> int:
        return self.instance.a[-1]

    @property
    def size_z(self) -> int:
        return self.k - self.size_y + 1

    def x(self, i: int) -> int:
        return i - 1

    def y(self, i: int) -> int:
        return self.size_x + i - 1

    def z(self, i: int) -> int:
        return self.size_x + self.size_y + i - 1

    def part(self, name: str) -> range:
        sx, sy, sz = self.size_x, self.size_y, self.size_z
        return {"X": range(0, sx), "Y": range(sx, sx + sy), "Z": range(sx + sy, sx + sy + sz)}[name]

    def role(self, v: int) -> tuple[str, int]:
        return self.roles[v]

    @property
    def low_y_reach(self) -> int:
        """Number of Z neighbours of ``y_i`` for ``i <= m``."""
        return self.size_z - self.B - 12 * self.m + 15

    def y_reach(self, i: int) -> int:
        """``y_i`` is adjacent exactly to ``z_1 .. z_{y_reach(i)}``."""
        if i <= self.m:
            return self.low_y_reach
        return self.size_z - self.gamma.gamma(i)


def build_reduction(inst: NormalizedInstance, check: bool = True) -> ReductionArtifact:
    base = inst.base
    if not is_normalized(base):
        raise ValueError("instance must be sorted with every value at least 8m")
    m, B, a = base.m, base.B, base.a
    k = 3 * B
    gamma = gamma_profile(inst)
    sx, sy = 3 * m, a[-1]
    sz = k - sy + 1
    xv = lambda i: i - 1
    yv = lambda i: sx + i - 1
    zv = lambda i: sx + sy + i - 1
    n = sx + sy + sz

    edges: list[tuple[int, int]] = []
    for lo, size in ((0, sx), (sx, sy), (sx + sy, sz)):
        edges.extend(combinations(range(lo, lo + size), 2))
    for i in range(1, sx + 1):
        edges.extend((xv(i), yv(j)) for j in range(1, a[i - 1] + 1))
    low_reach = sz - B - 12 * m + 15
    for i in range(1, sy + 1):
        reach = low_reach if i <= m else sz - gamma.gamma(i)
        edges.extend((yv(i), zv(j)) for j in range(1, reach + 1))

    roles = tuple(
        [("X", i) for i in range(1, sx + 1)]
        + [("Y", i) for i in range(1, sy + 1)]
        + [("Z", i) for i in range(1, sz + 1)]
    )
    R = ReductionArtifact(build_graph(n, edges), k, roles, inst, gamma, tuple(range(n)))
    if check:
        failed = [item for item in audit_construction(R) if not item.ok]
        if failed:
            raise ConstructionError("; ".join(f"{f.name}: {f.detail}" for f in failed))
    return R


def expected_degree(R: ReductionArtifact, v: int) -> int:
    if not 0 <= v < R.graph.n:
        raise GraphError(f"unknown vertex {v}")
    role, i = R.roles[v]
    m, B, k = R.m, R.B, R.k
    if role == "X":
        return R.instance.a[i - 1] + 3 * m - 1
    if role == "Y":
        return k - B - 9 * m + 15 if i <= m else k
    ys = sum(1 for j in range(1, R.size_y + 1) if i <= R.y_reach(j))
    return R.size_z - 1 + ys


@dataclass(frozen=True)
class AuditItem:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _is_clique(G: Graph, vs) -> bool:
    vs = list(vs)
    want = len(vs) - 1
    s = set(vs)
    return all(len(G.adjacency[v] & s) == want for v in vs)


def audit_construction(R: ReductionArtifact) -> list[AuditItem]:
    """Check the graph against every closed form of the construction."""
    G, k, m, B = R.graph, R.k, R.m, R.B
    X, Y, Z = (set(R.part(p)) for p in "XYZ")
    items: list[AuditItem] = []

    def add(name: str, ok: bool, detail: str = ""):
        items.append(AuditItem(name, bool(ok), detail))

    add("sizes", len(X) == 3 * m and len(Y) == R.instance.a[-1] and len(Z) == k - len(Y) + 1,
        f"|X|={len(X)} |Y|={len(Y)} |Z|={len(Z)}")
    add("YZ_size", len(Y | Z) == k + 1, f"|Y u Z|={len(Y | Z)} k+1={k + 1}")

    bad = [v for v in range(G.n) if G.degree(v) != expected_degree(R, v)]
    detail = ""
    if bad:
        v = bad[0]
        detail = f"{len(bad)} mismatches, first {R.roles[v]}: actual {G.degree(v)} expected {expected_degree(R, v)}"
    add("degrees", not bad, detail)

    delta = G.induced_min_degree(Y | Z)
    want = k - B - 12 * m + 15
    add("delta_YZ_value", delta == want, f"delta(G[Y u Z])={delta} expected {want}")
    add("delta_YZ_dense", Fraction(delta) >= Fraction(k + 1, 2) + 1,
        f"2*{delta} >= {k + 1}+2 is {2 * delta >= k + 3}")
    add("max_degree", G.max_degree() == k, f"Delta(G)={G.max_degree()} k={k}")

    nest_bad = None
    zsets = [G.adjacency[R.y(i)] & Z for i in range(1, R.size_y + 1)]
    for i in range(len(zsets) - 1):
        if not zsets[i] <= zsets[i + 1]:
            nest_bad = i + 1
            break
    add("nesting", nest_bad is None,
        "" if nest_bad is None else f"N(y_{nest_bad}) n Z not within N(y_{nest_bad + 1}) n Z")

    for name, part in (("X", X), ("Y", Y), ("Z", Z)):
        add(f"clique_{name}", _is_clique(G, part))
    xz = sum(len(G.adjacency[v] & Z) for v in X)
    add("no_XZ_edges", xz == 0, f"{xz} X-Z edges")
    return items


def inject_remove_edge(R: ReductionArtifact, u: int, v: int) -> ReductionArtifact:
    """Copy of ``R`` with one edge deleted (no invariant check)."""
    if not R.graph.has_edge(u, v):
        raise GraphError(f"{(u, v)} is not an edge")
    e = (min(u, v), max(u, v))
    G = build_graph(R.graph.n, [f for f in R.graph.edges if f != e])
    return dataclasses.replace(R, graph=G)


def inject_add_edge(R: ReductionArtifact, u: int, v: int) -> ReductionArtifact:
    """Copy of ``R`` with one extra edge (no invariant check)."""
    if R.graph.has_edge(u, v):
        raise GraphError(f"{(u, v)} is already an edge")
    G = build_graph(R.graph.n, list(R.graph.edges) + [(u, v)])
    return dataclasses.replace(R, graph=G)


def build_witness_tree(R: ReductionArtifact, P: Partition) -> SpanningTree:
    """Star at ``z_1`` over Y and Z, with group ``i`` hung below ``y_{i+1}``."""
    if any(len(g) != 3 for g in P.groups):
        raise ValueError("every group must have exactly three elements")
    check = verify_partition(R.instance.base, P)
    if not check:
        raise ValueError(f"invalid partition: {check.reason}")
    z1 = R.z(1)
    edges = [(z1, w) for w in list(R.part("Y")) + list(R.part("Z")) if w != z1]
    for i, group in enumerate(P.groups, start=1):
        edges.extend((R.y(i), R.x(j + 1)) for j in group)
    return SpanningTree(R.graph, tuple(edges))


def extract_partition(R: ReductionArtifact, T: SpanningTree) -> Partition:
    """Recover a 3-Partition solution from a tree of congestion at most k."""
    G, k, m = R.graph, R.k, R.m
    cong = tree_congestion(G, T).max
    if cong > k:
        raise HypothesisViolation(f"tree congestion {cong} exceeds k={k}")

    def fail(msg: str):
        raise LemmaContradiction(f"{msg} (tree congestion {cong} <= k={k})")

    YZ = set(R.part("Y")) | set(R.part("Z"))
    shape = classify_tree_shape(minimal_spanning_subtree(T, YZ))
    if shape.kind != "star" or R.roles[shape.center][0] != "Z":
        fail(f"subtree over Y u Z is a {shape.kind}, not a star centred in Z")
    center = shape.center
    for z in R.part("Z"):
        if z != center and T.degree(z) != 1:
            fail(f"z_{R.roles[z][1]} is not a leaf")
    for i in range(m + 1, R.size_y + 1):
        if T.degree(R.y(i)) != 1:
            fail(f"y_{i} is not a leaf")

    order, parent = T.rooted(center)
    owner = {}
    for v in order:
        if v == center:
            continue
        p = parent[v]
        owner[v] = v if p == center else owner[p]
    groups = [[] for _ in range(m)]
    for v in R.part("X"):
        role, i = R.roles[owner[v]]
        if role != "Y" or i > m:
            fail(f"x_{R.roles[v][1]} does not descend from y_1..y_{m}")
        groups[i - 1].append(R.roles[v][1] - 1)
    for i, g in enumerate(groups, start=1):
        s = sum(R.instance.a[j] for j in g)
        if s != R.B:
            fail(f"descendants of y_{i} sum to {s} != B={R.B}")
    return Partition.of(groups)


@dataclass(frozen=True)
class StarFamily:
    """Closed-form congestion of each ``{z_1, y_i}`` plus the induced tree."""

    congestion: dict[int, int]
    tree: SpanningTree

    @property
    def max_inner(self) -> int:
        return max(self.congestion.values())


def star_family_tree(R: ReductionArtifact, assign: dict[int, int]) -> SpanningTree:
    z1 = R.z(1)
    edges = [(z1, w) for w in list(R.part("Y")) + list(R.part("Z")) if w != z1]
    for xi in range(1, R.size_x + 1):
        yi = assign[xi]
        if not R.graph.has_edge(R.x(xi), R.y(yi)):
            raise GraphError(f"x_{xi} is not adjacent to y_{yi}")
        edges.append((R.y(yi), R.x(xi)))
    return SpanningTree(R.graph, tuple(edges))


def star_family_congestion(R: ReductionArtifact, assign: dict[int, int]) -> StarFamily:
    """Closed-form congestion of ``{z_1, y_i}`` when ``x_j`` hangs on ``y_{assign[j]}``.

    ``assign`` maps 1-based x indices to 1-based y indices. The closed form
    ignores x vertices missing from ``assign``; the induced tree is only
    built when every x is placed. Since ``X_i + y_i`` is a clique the cut is
    ``deg(y_i) + sum deg(x_j) - |X_i|(|X_i| + 1)``.
    """
    m, B, k = R.m, R.B, R.k
    a = R.instance.a
    hung: dict[int, list[int]] = {i: [] for i in range(1, R.size_y + 1)}
    for xi, yi in assign.items():
        if not 1 <= yi <= R.size_y or not R.graph.has_edge(R.x(xi), R.y(yi)):
            raise GraphError(f"x_{xi} is not adjacent to y_{yi}")
        hung[yi].append(xi)
    out = {}
    for i, xs in hung.items():
        t = len(xs)
        sa = sum(a[j - 1] for j in xs)
        if i <= m:
            out[i] = (k - B - 9 * m + 15) + sa + t * ((3 * m - 2) - t)
        else:
            out[i] = k + sum((a[j - 1] + 3 * m - 1) - (t + 1) for j in xs)
    tree = star_family_tree(R, assign) if len(assign) == R.size_x else None
    return StarFamily(out, tree)


def direct_star_congestion(R: ReductionArtifact, T: SpanningTree) -> dict[int, int]:
    """Congestion of each ``{z_1, y_i}`` by fundamental-cut traversal."""
    z1 = R.z(1)
    return {i: edge_congestion(R.graph, T, (z1, R.y(i))) for i in range(1, R.size_y + 1)}


def degree_sum_star_congestion(R: ReductionArtifact, T: SpanningTree) -> dict[int, int]:
    """Same quantities through the identity ``sum deg - 2|E(G[C])|``."""
    z1 = R.z(1)
    out = {}
    for i in range(1, R.size_y + 1):
        side = T.side((z1, R.y(i)))
        if z1 in side:
            side = frozenset(range(R.graph.n)) - side
        out[i] = cut_by_degree_sum(R.graph, side)
    return out


def triple_assignments(R: ReductionArtifact) -> Iterator[dict[int, int]]:
    """Every split of X into m triples, the i-th triple hung on ``y_i``.

    Triples are listed in order of their smallest member, so each unordered
    split appears once.
    """
    n = R.size_x

    def rec(left: list[int], groups: list[tuple[int, ...]]):
        if not left:
            yield {x: i for i, g in enumerate(groups, start=1) for x in g}
            return
        first, rest = left[0], left[1:]
        for pair in combinations(rest, 2):
            remaining = [x for x in rest if x not in pair]
            yield from rec(remaining, groups + [(first, *pair)])

    yield from rec(list(range(1, n + 1)), [])


def random_assignment(R: ReductionArtifact, rng: random.Random, high_bias: float = 0.25) -> dict[int, int]:
    """Random star-family placement of X.

    Each ``x_j`` goes to a uniform ``y_i`` with ``i <= m``, or with
    probability ``high_bias`` to any adjacent ``y_i`` (``i <= a_j``).
    """
    a = R.instance.a
    out = {}
    for j in range(1, R.size_x + 1):
        if rng.random() < high_bias:
            out[j] = rng.randint(1, a[j - 1])
        else:
            out[j] = rng.randint(1, R.m)
    return out


def labels_lines(R: ReductionArtifact, instance_path: str | None = None) -> list[str]:
    lines = [f"c k {R.k}"]
    if instance_path is not None:
        lines.append(f"c instance {instance_path}")
    lines.append(f"c scale {R.instance.scale}")
    lines.append("c perm " + " ".join(str(p) for p in R.instance.perm))
    for v, (role, i) in enumerate(R.roles):
        lines.append(f"v {v + 1} {role} {i}")
    return lines
