"""Simple undirected graphs, spanning trees and fundamental-cut congestion.

Vertices are dense integer ids ``0..n-1``. Edges are stored as ``(u, v)``
tuples with ``u < v`` and kept in lexicographic order, so every report
built from them is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple

Edge = tuple[int, int]


class GraphError(ValueError):
    """Malformed graph, tree or query."""


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: tuple[frozenset[int], ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency length differs from n")
        half_degrees = sum(len(a) for a in self.adjacency)
        if half_degrees != 2 * len(self.edges):
            raise GraphError("edge list and adjacency disagree")
        for u, v in self.edges:
            if not u < v or v not in self.adjacency[u] or u not in self.adjacency[v]:
                raise GraphError(f"edge {(u, v)} not mirrored in adjacency")

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def induced_min_degree(self, vertices: Iterable[int]) -> int:
        """Minimum degree of the subgraph induced by ``vertices``."""
        vs = set(vertices)
        return min((len(self.adjacency[v] & vs) for v in vs), default=0)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return len(_reach(self.adjacency, 0)) == self.n

    def relabel(self, perm: list[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a simple graph, collapsing duplicate pairs.

    Raises GraphError on self-loops and on vertex ids outside ``0..n-1``.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    seen: set[Edge] = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"vertex id out of range in pair {(u, v)} (n={n})")
        if u == v:
            raise GraphError(f"self-loop {(u, v)}")
        seen.add(norm_edge(u, v))
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in seen:
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj), tuple(sorted(seen)))


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(n: int, center: int = 0) -> Graph:
    return build_graph(n, [(center, v) for v in range(n) if v != center])


def _reach(adjacency, start: int, banned: Edge | None = None) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in adjacency[u]:
            if w in seen or (banned is not None and norm_edge(u, w) == banned):
                continue
            seen.add(w)
            stack.append(w)
    return seen


@dataclass(frozen=True)
class SpanningTree:
    host: Graph = field(repr=False)
    edges: tuple[Edge, ...]

    def __post_init__(self):
        n = self.host.n
        edges = tuple(sorted({norm_edge(u, v) for u, v in self.edges}))
        object.__setattr__(self, "edges", edges)
        if len(edges) != max(n - 1, 0):
            raise GraphError(f"a spanning tree on {n} vertices needs {n - 1} edges, got {len(edges)}")
        for e in edges:
            if e not in self.host.edge_set:
                raise GraphError(f"tree edge {e} is not a host edge")
        if n and len(_reach(self.adjacency, 0)) != n:
            raise GraphError("tree edges do not connect all vertices")

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.host.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def side(self, e: Edge) -> frozenset[int]:
        """Vertices of the component of ``T - e`` containing ``e[0]``."""
        e = norm_edge(*e)
        if e not in self.edge_set:
            raise GraphError(f"{e} is not a tree edge")
        return frozenset(_reach(self.adjacency, e[0], banned=e))

    def as_subtree(self) -> Subtree:
        return Subtree(frozenset(range(self.host.n)), self.edges)

    def path(self, u: int, v: int) -> list[int]:
        """Vertex sequence of the tree path from ``u`` to ``v``."""
        parent = {u: u}
        queue = deque([u])
        while queue:
            a = queue.popleft()
            if a == v:
                break
            for b in self.adjacency[a]:
                if b not in parent:
                    parent[b] = a
                    queue.append(b)
        out = [v]
        while out[-1] != u:
            out.append(parent[out[-1]])
        return out[::-1]

    def rooted(self, root: int = 0) -> tuple[list[int], list[int]]:
        """BFS order and parent array of the tree rooted at ``root``."""
        parent = [-1] * self.host.n
        parent[root] = root
        order = [root]
        for a in order:
            for b in sorted(self.adjacency[a]):
                if parent[b] == -1:
                    parent[b] = a
                    order.append(b)
        return order, parent


@dataclass(frozen=True)
class Subtree:
    """A tree given by its own vertex and edge sets (possibly a single vertex)."""

    vertices: frozenset[int]
    edges: tuple[Edge, ...]


@dataclass(frozen=True)
class TreeShape:
    kind: str  # "path", "star", "spider" or "other"
    center: int | None
    leaves: frozenset[int]
    degree2_vertices: frozenset[int]
    degrees: dict[int, int] = field(repr=False, compare=False)

    @property
    def branch_degree(self) -> int:
        return self.degrees[self.center] if self.center is not None else 0


@dataclass(frozen=True)
class CongestionReport:
    per_edge: dict[Edge, int]
    max: int
    argmax_edge: Edge | None

    def to_json(self) -> dict:
        return {
            "max": self.max,
            "argmax_edge": list(self.argmax_edge) if self.argmax_edge else None,
            "per_edge": [[u, v, c] for (u, v), c in self.per_edge.items()],
        }


class Split(NamedTuple):
    small: frozenset[int]
    large: frozenset[int]

    @property
    def nontrivial(self) -> bool:
        return len(self.small) >= 2


def edge_cut_size(G: Graph, A: Iterable[int], B: Iterable[int]) -> int:
    """Number of edges of ``G`` with one end in ``A`` and the other in ``B``."""
    A, B = set(A), set(B)
    if A & B:
        raise GraphError(f"vertex sets overlap on {sorted(A & B)}")
    if len(A) > len(B):
        A, B = B, A
    return sum(len(G.adjacency[a] & B) for a in A)


def cut_by_degree_sum(G: Graph, C: Iterable[int]) -> int:
    """Size of the cut around ``C`` as ``sum(deg) - 2 |E(G[C])|``."""
    C = set(C)
    degree_sum = sum(G.degree(v) for v in C)
    inner_twice = sum(len(G.adjacency[v] & C) for v in C)
    return degree_sum - inner_twice


def edge_congestion(G: Graph, T: SpanningTree, e: Edge) -> int:
    side = T.side(e)
    if 2 * len(side) > G.n:
        side = frozenset(range(G.n)) - side
    return sum(len(G.adjacency[v] - side) for v in side)


def tree_congestion(G: Graph, T: SpanningTree, strategy: str = "rooted") -> CongestionReport:
    """Congestion of every tree edge, its maximum and the first maximizing edge.

    ``strategy="rooted"`` roots the tree once and charges each host edge to
    the tree path between its endpoints; ``"traversal"`` runs one fundamental
    cut per tree edge. Both produce the same report.
    """
    if T.host is not G and T.host != G:
        raise GraphError("tree belongs to a different host graph")
    if strategy == "traversal":
        per_edge = {e: edge_congestion(G, T, e) for e in T.edges}
    elif strategy == "rooted":
        per_edge = _rooted_congestion(G, T)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    best, arg = 0, None
    for e, c in per_edge.items():
        if c > best:
            best, arg = c, e
    return CongestionReport(per_edge, best, arg)


def _rooted_congestion(G: Graph, T: SpanningTree) -> dict[Edge, int]:
    if G.n <= 1:
        return {}
    order, parent = T.rooted(0)
    depth = [0] * G.n
    for v in order[1:]:
        depth[v] = depth[parent[v]] + 1
    charge = [0] * G.n
    for u, v in G.edges:
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
    for v in reversed(order[1:]):
        charge[parent[v]] += charge[v]
    cong = {norm_edge(v, parent[v]): charge[v] for v in order[1:]}
    return {e: cong[e] for e in T.edges}


def minimal_spanning_subtree(T: SpanningTree, S: Iterable[int]) -> Subtree:
    """The smallest subtree of ``T`` whose vertex set contains ``S``."""
    S = frozenset(S)
    if not S:
        raise GraphError("terminal set must be nonempty")
    if any(not 0 <= v < T.host.n for v in S):
        raise GraphError("terminal outside the tree")
    deg = {v: T.degree(v) for v in range(T.host.n)}
    alive = set(range(T.host.n))
    stack = [v for v in alive if deg[v] <= 1 and v not in S]
    while stack:
        v = stack.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for w in T.adjacency[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] <= 1 and w not in S:
                    stack.append(w)
    edges = tuple(e for e in T.edges if e[0] in alive and e[1] in alive)
    return Subtree(frozenset(alive), edges)


def classify_tree_shape(tree: Subtree | SpanningTree) -> TreeShape:
    """Classify a tree as path, star, spider or other.

    A star needs a center of degree at least 3 that is adjacent to every
    other vertex; smaller stars (one or two edges) are reported as paths.
    Star wins over spider.
    """
    if isinstance(tree, SpanningTree):
        tree = tree.as_subtree()
    vertices, edges = tree.vertices, tree.edges
    if not vertices:
        raise GraphError("empty tree")
    degrees = {v: 0 for v in vertices}
    adj: dict[int, set[int]] = {v: set() for v in vertices}
    for u, v in edges:
        if u not in degrees or v not in degrees:
            raise GraphError(f"edge {(u, v)} leaves the vertex set")
        degrees[u] += 1
        degrees[v] += 1
        adj[u].add(v)
        adj[v].add(u)
    if len(set(map(lambda e: norm_edge(*e), edges))) != len(vertices) - 1:
        raise GraphError("not a tree: wrong edge count")
    if len(_reach(adj, min(vertices))) != len(vertices):
        raise GraphError("not a tree: disconnected")

    leaves = frozenset(v for v, d in degrees.items() if d <= 1)
    deg2 = frozenset(v for v, d in degrees.items() if d == 2)
    branching = sorted(v for v, d in degrees.items() if d >= 3)
    nv = len(vertices)
    if len(branching) == 1 and degrees[branching[0]] == nv - 1:
        return TreeShape("star", branching[0], leaves, deg2, degrees)
    if not branching:
        return TreeShape("path", None, leaves, deg2, degrees)
    if len(branching) == 1:
        return TreeShape("spider", branching[0], leaves, deg2, degrees)
    return TreeShape("other", None, leaves, deg2, degrees)


def split_of_edge(T: SpanningTree, e: Edge, S: Iterable[int]) -> Split:
    """Intersect ``S`` with both sides of ``T - e``; the smaller part comes first."""
    S = frozenset(S)
    side = T.side(e)
    a, b = S & side, S - side
    key = lambda part: (len(part), min(part, default=-1))
    return Split(a, b) if key(a) <= key(b) else Split(b, a)


def is_nontrivial_split(T: SpanningTree, e: Edge, S: Iterable[int]) -> bool:
    return split_of_edge(T, e, S).nontrivial
