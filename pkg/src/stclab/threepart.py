"""3-Partition instances: validation, normalization, brute force and checking.

Indices are 0-based. Every bound ``B/4 < a < B/2`` is tested by
cross-multiplication so no division is involved.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple

MAX_BRUTEFORCE_ITEMS = 15


class InstanceError(ValueError):
    """An instance violating one or more 3-Partition constraints."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class ThreePartitionInstance:
    m: int
    B: int
    a: tuple[int, ...]

    def to_json(self) -> dict:
        return {"m": self.m, "B": self.B, "a": list(self.a)}


@dataclass(frozen=True)
class NormalizedInstance:
    """Sorted, scaled copy of an instance.

    ``perm[p]`` is the original index of the value at sorted position ``p``.
    """

    base: ThreePartitionInstance
    scale: int
    perm: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.base.m

    @property
    def B(self) -> int:
        return self.base.B

    @property
    def a(self) -> tuple[int, ...]:
        return self.base.a

    def original(self) -> ThreePartitionInstance:
        a = [0] * len(self.perm)
        for pos, idx in enumerate(self.perm):
            a[idx] = self.base.a[pos] // self.scale
        return ThreePartitionInstance(self.base.m, self.base.B // self.scale, tuple(a))

    def to_original(self, P: Partition) -> Partition:
        return Partition.of(sorted(self.perm[j] for j in g) for g in P.groups)

    def from_original(self, P: Partition) -> Partition:
        where = {idx: pos for pos, idx in enumerate(self.perm)}
        return Partition.of(sorted(where[j] for j in g) for g in P.groups)


@dataclass(frozen=True)
class Partition:
    groups: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, groups: Iterable[Iterable[int]]) -> Partition:
        """Partition with each group sorted and groups ordered by their first element."""
        gs = [tuple(sorted(g)) for g in groups]
        return cls(tuple(sorted(gs)))

    def to_json(self) -> dict:
        return {"groups": [list(g) for g in self.groups]}


class PartitionCheck(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_instance(m: int, B: int, a: Iterable[int]) -> ThreePartitionInstance:
    a = tuple(a)
    problems = []
    if m < 1:
        problems.append(f"m must be positive, got {m}")
    if len(a) != 3 * m:
        problems.append(f"expected 3m = {3 * m} values, got {len(a)}")
    if sum(a) != m * B:
        problems.append(f"sum of values {sum(a)} != m*B = {m * B}")
    for i, x in enumerate(a):
        if x <= 0:
            problems.append(f"a[{i}] = {x} is not positive")
        if not 4 * x > B:
            problems.append(f"a[{i}] = {x} violates B/4 < a[{i}] (4*{x} <= {B})")
        if not 2 * x < B:
            problems.append(f"a[{i}] = {x} violates a[{i}] < B/2 (2*{x} >= {B})")
    if problems:
        raise InstanceError(problems)
    return ThreePartitionInstance(m, B, a)


def instance_from_json(data: dict) -> ThreePartitionInstance:
    try:
        return validate_instance(int(data["m"]), int(data["B"]), [int(x) for x in data["a"]])
    except KeyError as exc:
        raise InstanceError([f"missing field {exc.args[0]!r}"]) from None


def normalize_instance(inst: ThreePartitionInstance) -> NormalizedInstance:
    """Sort ascending and scale so that every value is at least 8m."""
    perm = tuple(sorted(range(len(inst.a)), key=lambda i: (inst.a[i], i)))
    low = inst.a[perm[0]]
    target = 8 * inst.m
    scale = 1 if low >= target else -(-target // low)
    a = tuple(inst.a[i] * scale for i in perm)
    return NormalizedInstance(ThreePartitionInstance(inst.m, inst.B * scale, a), scale, perm)


def is_normalized(inst: ThreePartitionInstance) -> bool:
    return list(inst.a) == sorted(inst.a) and inst.a[0] >= 8 * inst.m


def solve_3partition_bruteforce(inst: ThreePartitionInstance) -> Partition | None:
    """Backtracking search over triples summing to B.

    Values lie strictly between B/4 and B/2, so every group that sums to B
    is a triple.
    """
    n = len(inst.a)
    if n > MAX_BRUTEFORCE_ITEMS:
        raise ValueError(f"brute force limited to {MAX_BRUTEFORCE_ITEMS} values, got {n}")
    a, B = inst.a, inst.B
    used = [False] * n
    groups: list[tuple[int, int, int]] = []

    def rec() -> bool:
        try:
            i = used.index(False)
        except ValueError:
            return True
        used[i] = True
        for j in range(i + 1, n):
            if used[j] or a[i] + a[j] >= B:
                continue
            used[j] = True
            for k in range(j + 1, n):
                if not used[k] and a[i] + a[j] + a[k] == B:
                    used[k] = True
                    groups.append((i, j, k))
                    if rec():
                        return True
                    groups.pop()
                    used[k] = False
            used[j] = False
        used[i] = False
        return False

    return Partition.of(groups) if rec() else None


def verify_partition(inst: ThreePartitionInstance, P: Partition) -> PartitionCheck:
    n = len(inst.a)
    if len(P.groups) != inst.m:
        return PartitionCheck(False, f"expected {inst.m} groups, got {len(P.groups)}")
    flat = [j for g in P.groups for j in g]
    if any(not 0 <= j < n for j in flat):
        return PartitionCheck(False, "index out of range")
    if len(flat) != n or set(flat) != set(range(n)):
        return PartitionCheck(False, "not a partition of the index set")
    for g in P.groups:
        s = sum(inst.a[j] for j in g)
        if s != inst.B:
            return PartitionCheck(False, f"group {list(g)} sums to {s} != {inst.B}")
    return PartitionCheck(True)


def random_instance(rng: random.Random, m: int, B: int, planted: bool = True) -> ThreePartitionInstance:
    """Random valid instance; ``planted=True`` guarantees a yes-instance.

    Without planting, a planted instance is perturbed by moving mass between
    two values, which may or may not destroy every solution.
    """
    lo, hi = B // 4 + 1, (B - 1) // 2
    if 3 * lo > B or 3 * hi < B:
        raise ValueError(f"no valid triple for B={B}")
    a: list[int] = []
    for _ in range(m):
        while True:
            x, y = rng.randint(lo, hi), rng.randint(lo, hi)
            z = B - x - y
            if lo <= z <= hi:
                a += [x, y, z]
                break
    if not planted:
        for _ in range(3 * m):
            i, j = rng.sample(range(3 * m), 2)
            d = rng.randint(1, max(1, (hi - lo) // 2))
            if a[i] + d <= hi and a[j] - d >= lo:
                a[i] += d
                a[j] -= d
    rng.shuffle(a)
    return validate_instance(m, B, a)
