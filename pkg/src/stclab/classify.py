"""Proper interval certificates: ordering check, claw search, 3-clique cover."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, GraphError


@dataclass(frozen=True)
class OrderingWitness:
    valid: bool
    violation: tuple[int, int, int] | None = None

    def to_json(self) -> dict:
        return {"valid": self.valid, "violation": list(self.violation) if self.violation else None}


def _check_permutation(G: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(G.n)):
        raise GraphError("order is not a permutation of the vertex set")


def is_proper_interval_ordering(G: Graph, order: Sequence[int]) -> OrderingWitness:
    """Check that every vertex between the ends of an edge sees both ends.

    Returns the first violating triple ``(u, v, w)`` with ``u`` before ``v``
    before ``w`` in the order.
    """
    order = list(order)
    _check_permutation(G, order)
    pos = [0] * G.n
    for p, v in enumerate(order):
        pos[v] = p
    adj = G.adjacency
    for pu, u in enumerate(order):
        later = sorted(pos[w] for w in adj[u] if pos[w] > pu)
        for pw in later:
            w = order[pw]
            for pv in range(pu + 1, pw):
                v = order[pv]
                if v not in adj[u] or v not in adj[w]:
                    return OrderingWitness(False, (u, v, w))
    return OrderingWitness(True)


def find_claw(G: Graph) -> tuple[int, tuple[int, int, int]] | None:
    """First induced ``K_{1,3}`` as ``(center, (a, b, c))`` or None."""
    masks = [sum(1 << w for w in nbrs) for nbrs in G.adjacency]
    for c in range(G.n):
        nc = masks[c]
        for a in sorted(G.adjacency[c]):
            # neighbours of c after a that are not adjacent to a
            free_a = nc & ~masks[a] & ~((1 << (a + 1)) - 1)
            rest = free_a
            while rest:
                b = (rest & -rest).bit_length() - 1
                rest &= rest - 1
                free_ab = free_a & ~masks[b] & ~((1 << (b + 1)) - 1)
                if free_ab:
                    d = (free_ab & -free_ab).bit_length() - 1
                    return c, (a, b, d)
    return None


def clique_cover_3(G: Graph, parts: Iterable[Iterable[int]]) -> bool:
    """True when the three parts partition V and each is a clique."""
    parts = [set(p) for p in parts]
    if len(parts) != 3:
        raise GraphError(f"expected three parts, got {len(parts)}")
    flat = [v for p in parts for v in p]
    if len(flat) != G.n or set(flat) != set(range(G.n)):
        raise GraphError("parts do not partition the vertex set")
    return all(len(G.adjacency[v] & p) == len(p) - 1 for p in parts for v in p)
