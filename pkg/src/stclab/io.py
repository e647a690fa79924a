"""Text and JSON file formats.

Graph and tree files are 1-indexed on disk::

    c comment
    p edge <n> <m>
    e <u> <v>

    p tree <n>
    t <u> <v>

Labels files hold ``v <id> <X|Y|Z> <index>`` lines plus ``c <key> <value>``
metadata (``k``, ``instance``, ``scale``, ``perm``). Order files are a single
line of 1-based vertex ids. Instances and partitions are JSON.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .graph import Graph, GraphError, SpanningTree, build_graph
from .threepart import Partition


class FormatError(ValueError):
    def __init__(self, path, lineno: int | None, msg: str):
        where = f"{path}:{lineno}" if lineno else str(path)
        super().__init__(f"{where}: {msg}")


def _records(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("c"):
                continue
            yield lineno, line.split()


def _ints(path, lineno, fields, count):
    if len(fields) != count:
        raise FormatError(path, lineno, f"expected {count} fields, got {len(fields)}")
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(path, lineno, "non-integer field") from None


def read_graph(path) -> Graph:
    n = declared = None
    pairs = []
    for lineno, fields in _records(path):
        tag = fields[0]
        if tag == "p":
            if n is not None or len(fields) != 4 or fields[1] != "edge":
                raise FormatError(path, lineno, "expected a single 'p edge <n> <m>' header")
            n, declared = _ints(path, lineno, fields[2:], 2)
        elif tag == "e":
            if n is None:
                raise FormatError(path, lineno, "edge before header")
            u, v = _ints(path, lineno, fields[1:], 2)
            pairs.append((u - 1, v - 1))
        else:
            raise FormatError(path, lineno, f"unknown record {tag!r}")
    if n is None:
        raise FormatError(path, None, "missing 'p edge' header")
    if len(pairs) != declared:
        raise FormatError(path, None, f"header declares {declared} edges, found {len(pairs)}")
    try:
        return build_graph(n, pairs)
    except GraphError as exc:
        raise FormatError(path, None, str(exc)) from None


def format_graph(G: Graph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {G.n} {G.m}")
    lines += [f"e {u + 1} {v + 1}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def write_graph(path, G: Graph, comments: tuple[str, ...] = ()) -> None:
    Path(path).write_text(format_graph(G, comments))


def read_tree(path, host: Graph) -> SpanningTree:
    n = None
    pairs = []
    for lineno, fields in _records(path):
        if fields[0] == "p":
            if n is not None or len(fields) != 3 or fields[1] != "tree":
                raise FormatError(path, lineno, "expected a single 'p tree <n>' header")
            (n,) = _ints(path, lineno, fields[2:], 1)
        elif fields[0] == "t":
            u, v = _ints(path, lineno, fields[1:], 2)
            pairs.append((u - 1, v - 1))
        else:
            raise FormatError(path, lineno, f"unknown record {fields[0]!r}")
    if n is None:
        raise FormatError(path, None, "missing 'p tree' header")
    if n != host.n:
        raise FormatError(path, None, f"tree has {n} vertices, graph has {host.n}")
    try:
        return SpanningTree(host, tuple(pairs))
    except GraphError as exc:
        raise FormatError(path, None, str(exc)) from None


def format_tree(T: SpanningTree) -> str:
    lines = [f"p tree {T.host.n}"] + [f"t {u + 1} {v + 1}" for u, v in T.edges]
    return "\n".join(lines) + "\n"


def write_tree(path, T: SpanningTree) -> None:
    Path(path).write_text(format_tree(T))


@dataclass
class Labels:
    roles: list[tuple[str, int]]
    meta: dict[str, str] = field(default_factory=dict)

    @property
    def k(self) -> int | None:
        return int(self.meta["k"]) if "k" in self.meta else None

    @property
    def perm(self) -> tuple[int, ...] | None:
        return tuple(int(p) for p in self.meta["perm"].split()) if "perm" in self.meta else None


def read_labels(path) -> Labels:
    entries: dict[int, tuple[str, int]] = {}
    meta: dict[str, str] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            fields = raw.split()
            if not fields:
                continue
            if fields[0] == "c":
                if len(fields) >= 2:
                    meta[fields[1]] = " ".join(fields[2:])
                continue
            if fields[0] != "v" or len(fields) != 4 or fields[2] not in ("X", "Y", "Z"):
                raise FormatError(path, lineno, "expected 'v <id> <X|Y|Z> <index>'")
            vid, idx = _ints(path, lineno, [fields[1], fields[3]], 2)
            if vid in entries:
                raise FormatError(path, lineno, f"vertex {vid} labelled twice")
            entries[vid] = (fields[2], idx)
    n = len(entries)
    if sorted(entries) != list(range(1, n + 1)):
        raise FormatError(path, None, "labels must cover vertices 1..n exactly once")
    return Labels([entries[v] for v in range(1, n + 1)], meta)


def write_labels(path, lines: list[str]) -> None:
    Path(path).write_text("\n".join(lines) + "\n")


def read_order(path, n: int) -> list[int]:
    text = Path(path).read_text().split()
    try:
        order = [int(t) - 1 for t in text]
    except ValueError:
        raise FormatError(path, None, "non-integer vertex id") from None
    if sorted(order) != list(range(n)):
        raise FormatError(path, None, f"order is not a permutation of 1..{n}")
    return order


def format_order(order) -> str:
    return " ".join(str(v + 1) for v in order) + "\n"


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(path, exc.lineno, f"invalid JSON: {exc.msg}") from None


def read_partition(path) -> Partition:
    data = read_json(path)
    try:
        return Partition.of([int(j) for j in g] for g in data["groups"])
    except (KeyError, TypeError, ValueError):
        raise FormatError(path, None, "expected {\"groups\": [[int, ...], ...]}") from None


def dump_json(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
