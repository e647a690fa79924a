"""Exact spanning tree congestion by exhaustive enumeration.

Spanning trees are generated by an include/exclude recursion over the
canonical edge order. An edge whose endpoints are already joined by chosen
edges is skipped, and an edge is only excluded when the graph stays
connected without it (bridges are forced), so every branch of the recursion
ends in exactly one spanning tree.
"""

from __future__ import annotations

import logging
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator

from .graph import (
    Graph,
    GraphError,
    SpanningTree,
    TreeShape,
    classify_tree_shape,
    minimal_spanning_subtree,
    tree_congestion,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "STC_LAB_BUDGET"


class InfeasibleError(RuntimeError):
    """The spanning-tree count is above the enumeration budget."""

    def __init__(self, tree_count: int, budget: int):
        super().__init__(
            f"infeasible at desk scale: {tree_count} spanning trees exceed budget {budget}"
        )
        self.tree_count = tree_count
        self.budget = budget


class LemmaWarning(UserWarning):
    """The spider lemma's premises hold but its conclusion does not."""


def count_spanning_trees(G: Graph) -> int:
    """Number of spanning trees via the matrix-tree theorem.

    The reduced Laplacian determinant is computed with Bareiss fraction-free
    elimination, so the count is exact.
    """
    n = G.n
    if n <= 1:
        return 1
    size = n - 1
    M = [[0] * size for _ in range(size)]
    for v in range(1, n):
        M[v - 1][v - 1] = G.degree(v)
    for u, v in G.edges:
        if u and v:
            M[u - 1][v - 1] -= 1
            M[v - 1][u - 1] -= 1
    sign, prev = 1, 1
    for k in range(size - 1):
        if M[k][k] == 0:
            pivot = next((r for r in range(k + 1, size) if M[r][k]), None)
            if pivot is None:
                return 0
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        pk = M[k][k]
        row_k = M[k]
        for i in range(k + 1, size):
            row_i = M[i]
            mik = row_i[k]
            for j in range(k + 1, size):
                row_i[j] = (pk * row_i[j] - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pk
    return sign * M[size - 1][size - 1]


def resolve_budget(budget: int | None) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


def _require_connected(G: Graph) -> None:
    if not G.is_connected():
        raise GraphError("graph is disconnected; it has no spanning tree")


class _Search:
    """Shared state of the include/exclude recursion."""

    def __init__(self, G: Graph):
        self.G = G
        self.edges = G.edges
        self.incident: list[list[int]] = [[] for _ in range(G.n)]
        for i, (u, v) in enumerate(self.edges):
            self.incident[u].append(i)
            self.incident[v].append(i)
        self.excluded = [False] * len(self.edges)
        self.uf = list(range(G.n))
        self.size = [1] * G.n
        self.chosen: list[int] = []
        self.forest: list[set[int]] = [set() for _ in range(G.n)]

    def find(self, v: int) -> int:
        while self.uf[v] != v:
            v = self.uf[v]
        return v

    def union(self, a: int, b: int) -> int:
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.uf[b] = a
        self.size[a] += self.size[b]
        return b

    def undo(self, b: int) -> None:
        a = self.uf[b]
        self.size[a] -= self.size[b]
        self.uf[b] = b

    def joined_without(self, i: int) -> bool:
        """Whether the endpoints of edge ``i`` stay connected once it is excluded."""
        u, target = self.edges[i]
        seen = {u}
        stack = [u]
        while stack:
            a = stack.pop()
            for j in self.incident[a]:
                if j == i or self.excluded[j]:
                    continue
                x, y = self.edges[j]
                b = y if x == a else x
                if b == target:
                    return True
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return False

    def include(self, i: int) -> int:
        u, v = self.edges[i]
        b = self.union(self.find(u), self.find(v))
        self.chosen.append(i)
        self.forest[u].add(v)
        self.forest[v].add(u)
        return b

    def drop(self, i: int, b: int) -> None:
        u, v = self.edges[i]
        self.forest[u].discard(v)
        self.forest[v].discard(u)
        self.chosen.pop()
        self.undo(b)

    def component_congestion(self, start: int) -> int:
        """Max congestion of the forest component at ``start`` within its induced subgraph.

        Final sides of each forest edge contain the current sides, so this
        never exceeds the congestion of any completion.
        """
        adj = self.G.adjacency
        parent = {start: start}
        order = [start]
        for a in order:
            for b in self.forest[a]:
                if b not in parent:
                    parent[b] = a
                    order.append(b)
        depth = {start: 0}
        for v in order[1:]:
            depth[v] = depth[parent[v]] + 1
        charge = dict.fromkeys(order, 0)
        for u in order:
            for v in adj[u]:
                if v > u and v in parent:
                    charge[u] += 1
                    charge[v] += 1
                    a, b = u, v
                    while depth[a] > depth[b]:
                        a = parent[a]
                    while depth[b] > depth[a]:
                        b = parent[b]
                    while a != b:
                        a, b = parent[a], parent[b]
                    charge[a] -= 2
        best = 0
        for v in reversed(order[1:]):
            charge[parent[v]] += charge[v]
            if charge[v] > best:
                best = charge[v]
        return best

    def trees(self, i: int = 0) -> Iterator[tuple[int, ...]]:
        if len(self.chosen) == self.G.n - 1:
            yield tuple(self.chosen)
            return
        u, v = self.edges[i]
        if self.find(u) == self.find(v):
            self.excluded[i] = True
            yield from self.trees(i + 1)
            self.excluded[i] = False
            return
        b = self.include(i)
        yield from self.trees(i + 1)
        self.drop(i, b)
        self.excluded[i] = True
        if self.joined_without(i):
            yield from self.trees(i + 1)
        self.excluded[i] = False


def iter_spanning_trees(G: Graph) -> Iterator[SpanningTree]:
    """Yield every spanning tree of ``G`` once, in the canonical order."""
    _require_connected(G)
    if G.n <= 1:
        yield SpanningTree(G, ())
        return
    search = _Search(G)
    for chosen in search.trees():
        yield SpanningTree(G, tuple(G.edges[i] for i in chosen))


def enumerate_spanning_trees(G: Graph, visitor: Callable[[SpanningTree], object]) -> int:
    """Call ``visitor`` on each spanning tree; a truthy return stops early.

    Returns the number of trees visited.
    """
    count = 0
    for tree in iter_spanning_trees(G):
        count += 1
        if visitor(tree):
            break
    return count


@dataclass(frozen=True)
class StcResult:
    value: int
    witness: SpanningTree
    trees_examined: int
    tree_count: int


def _branch_and_bound(G: Graph, limit: int, stop_at: int | None) -> tuple[int, tuple[int, ...] | None, int]:
    """Search for the first tree (canonical order) with congestion < ``limit``.

    After each success the limit drops to the value found unless ``stop_at``
    is reached. Partial forests whose component congestion is already
    ``>= limit`` are abandoned.
    """
    search = _Search(G)
    state = {"limit": limit, "best": None, "examined": 0}
    n = G.n

    def rec(i: int) -> bool:
        if len(search.chosen) == n - 1:
            state["examined"] += 1
            value = search.component_congestion(0)
            if value < state["limit"]:
                state["limit"] = value
                state["best"] = tuple(search.chosen)
                if stop_at is not None and value <= stop_at:
                    return True
            return False
        u, v = search.edges[i]
        if search.find(u) == search.find(v):
            search.excluded[i] = True
            done = rec(i + 1)
            search.excluded[i] = False
            return done
        b = search.include(i)
        if search.component_congestion(u) < state["limit"]:
            if rec(i + 1):
                search.drop(i, b)
                return True
        search.drop(i, b)
        search.excluded[i] = True
        done = False
        if search.joined_without(i):
            done = rec(i + 1)
        search.excluded[i] = False
        return done

    rec(0)
    return state["limit"], state["best"], state["examined"]


def _precheck(G: Graph, budget: int | None) -> int:
    _require_connected(G)
    count = count_spanning_trees(G)
    budget = resolve_budget(budget)
    if count > budget:
        raise InfeasibleError(count, budget)
    return count


def stc_exact(G: Graph, budget: int | None = None) -> StcResult:
    """Minimum congestion over all spanning trees, with a witness tree.

    The witness is the first optimal tree in enumeration order.
    """
    count = _precheck(G, budget)
    if G.n <= 1:
        return StcResult(0, SpanningTree(G, ()), 1, 1)
    value, best, examined = _branch_and_bound(G, G.m + 1, None)
    witness = SpanningTree(G, tuple(G.edges[i] for i in best))
    log.debug("stc=%d after %d of %d trees", value, examined, count)
    return StcResult(value, witness, examined, count)


def stc_unpruned(G: Graph, budget: int | None = None) -> StcResult:
    """Reference minimum over a plain enumeration, without any pruning."""
    count = _precheck(G, budget)
    best, witness, seen = None, None, 0
    for tree in iter_spanning_trees(G):
        seen += 1
        value = tree_congestion(G, tree).max
        if best is None or value < best:
            best, witness = value, tree
    return StcResult(best, witness, seen, count)


def stc_decide(G: Graph, k: int, budget: int | None = None) -> tuple[bool, SpanningTree | None]:
    """Whether some spanning tree has congestion at most ``k``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    _precheck(G, budget)
    if G.n <= 1:
        return True, SpanningTree(G, ())
    value, best, _ = _branch_and_bound(G, k + 1, k)
    if best is None:
        return False, None
    return True, SpanningTree(G, tuple(G.edges[i] for i in best))


@dataclass(frozen=True)
class SpiderVerdict:
    premises: dict[str, bool]
    shape: TreeShape
    conclusion_holds: bool
    branch_degree: int
    offending_vertex: int | None
    congestion: int = field(default=0)

    @property
    def premises_hold(self) -> bool:
        return all(self.premises.values())

    @property
    def counterexample(self) -> bool:
        return self.premises_hold and not self.conclusion_holds


def _rational(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("pass ratios as Fraction, int or 'p/q' strings, not floats")
    return Fraction(x)


def check_spider_lemma(G: Graph, T: SpanningTree, S: Iterable[int], rho1, rho2, k: int) -> SpiderVerdict:
    """Evaluate the spider lemma's premises and conclusion on one instance.

    ``rho1`` and ``rho2`` are exact rationals. If every premise holds and the
    conclusion fails a LemmaWarning is issued; that cannot happen for a
    correct implementation.
    """
    S = frozenset(S)
    r1, r2 = _rational(rho1), _rational(rho2)
    cong = tree_congestion(G, T).max
    size = len(S)
    premises = {
        "rho_positive": r1 > 0 and r2 > 0,
        "rho_product": r1 * r2 >= Fraction(1, 2),
        "rho2_half": r2 >= Fraction(1, 2),
        "S_at_least_4": size >= 4,
        "S_large": size >= r1 * k + 1,
        "S_dense": bool(S) and G.induced_min_degree(S) >= r2 * size + 1,
        "congestion_le_k": cong <= k,
    }
    sub = minimal_spanning_subtree(T, S) if S else None
    if sub is None:
        shape = TreeShape("path", None, frozenset(), frozenset(), {})
    else:
        shape = classify_tree_shape(sub)
    offending = min(shape.degree2_vertices & S, default=None)
    branch = shape.branch_degree
    holds = (
        shape.kind in ("star", "spider")
        and offending is None
        and branch >= size - 1
    )
    verdict = SpiderVerdict(premises, shape, holds, branch, offending, cong)
    if verdict.counterexample:
        msg = f"spider lemma contradicted: shape={shape.kind} branch_degree={branch} offending={offending}"
        log.error(msg)
        warnings.warn(msg, LemmaWarning, stacklevel=2)
    return verdict
