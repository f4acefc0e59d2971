"""Digraphs and undirected graphs for index coding instances.

An instance is a side-information digraph: edge ``i -> j`` means user ``i``
already holds packet ``x_j``.  Its directed complement is the interference
graph.  Ignoring orientation of the interference graph gives the same
undirected graph as complementing the bidirected part of the side
information graph, and most solvers work on that graph.

Vertices are dense 0-based integers.  Graph values are immutable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable


class GraphFormatError(ValueError):
    """Malformed graph text.  ``kind`` names the failure, ``line`` is 1-based."""

    def __init__(self, kind: str, line: int, detail: str = ""):
        self.kind = kind
        self.line = line
        msg = f"line {line}: {kind}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


def _check_pair(n: int, i: int, j: int) -> None:
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError(f"edge ({i}, {j}) has endpoint outside 0..{n - 1}")
    if i == j:
        raise ValueError(f"self-loop at vertex {i}")


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        edges = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in edges:
            _check_pair(self.n, i, j)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Digraph":
        edges = list(edges)
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edge")
        return cls(n, frozenset(edges))

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Bitmask of out-neighbours per vertex (excluding the vertex)."""
        masks = [0] * self.n
        for i, j in self.edges:
            masks[i] |= 1 << j
        return tuple(masks)

    def out_neighbors(self, v: int) -> list[int]:
        return sorted(j for j in range(self.n) if self.out_masks[v] >> j & 1)

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def is_bidirected(self) -> bool:
        return all((j, i) in self.edges for i, j in self.edges)


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            pair = tuple(e)
            if len(pair) != 2:
                raise ValueError(f"bad undirected edge {e!r}")
            i, j = pair
            _check_pair(self.n, i, j)
            norm.add(frozenset((int(i), int(j))))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "UndirectedGraph":
        return cls(n, frozenset(frozenset(p) for p in pairs))

    @classmethod
    def complete(cls, n: int) -> "UndirectedGraph":
        return cls.from_pairs(n, ((i, j) for i in range(n) for j in range(i + 1, n)))

    @classmethod
    def cycle(cls, n: int) -> "UndirectedGraph":
        return cls.from_pairs(n, ((i, (i + 1) % n) for i in range(n)))

    @cached_property
    def adj_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for e in self.edges:
            i, j = tuple(e)
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return tuple(masks)

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj_masks[i] >> j & 1)

    def neighbors(self, v: int) -> list[int]:
        return [j for j in range(self.n) if self.adj_masks[v] >> j & 1]

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def as_digraph(self) -> Digraph:
        """Bidirected digraph with both orientations of every edge."""
        out = set()
        for i, j in self.sorted_pairs():
            out.add((i, j))
            out.add((j, i))
        return Digraph(self.n, frozenset(out))


@dataclass(frozen=True)
class ClosedOutNeighborhood:
    vertex: int
    members: frozenset[int]


def directed_complement(g: Digraph) -> Digraph:
    edges = frozenset(
        (i, j) for i in range(g.n) for j in range(g.n) if i != j and (i, j) not in g.edges
    )
    return Digraph(g.n, edges)


def underlying_undirected(g: Digraph) -> UndirectedGraph:
    """Keep only the bidirected pairs, as undirected edges."""
    return UndirectedGraph.from_pairs(g.n, ((i, j) for i, j in g.edges if i < j and (j, i) in g.edges))


def shadow(g: Digraph) -> UndirectedGraph:
    """Forget orientation; a bidirected pair becomes a single edge."""
    return UndirectedGraph.from_pairs(g.n, g.edges)


def complement(g: UndirectedGraph) -> UndirectedGraph:
    return UndirectedGraph.from_pairs(
        g.n, ((i, j) for i in range(g.n) for j in range(i + 1, g.n) if not g.has_edge(i, j))
    )


def closed_out_neighborhood(g: Digraph, v: int) -> ClosedOutNeighborhood:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    return ClosedOutNeighborhood(v, frozenset([v, *g.out_neighbors(v)]))


def closed_out_masks(g: Digraph) -> list[int]:
    return [m | (1 << v) for v, m in enumerate(g.out_masks)]


def interference_graph(side_info: Digraph) -> Digraph:
    return directed_complement(side_info)


# ---------------------------------------------------------------------------
# text formats
# ---------------------------------------------------------------------------


def _parse_int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError("malformed line", line, f"not an integer: {tok!r}") from None


def _parse_edge_list(text: str) -> Digraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise GraphFormatError("malformed line", 1, "missing vertex count")
    head = lines[0].split()
    if len(head) != 1:
        raise GraphFormatError("malformed line", 1, "expected a single vertex count")
    n = _parse_int(head[0], 1)
    if n < 0:
        raise GraphFormatError("malformed line", 1, "negative vertex count")
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(lines[1:], start=2):
        toks = raw.split()
        if len(toks) != 2:
            raise GraphFormatError("malformed line", lineno, f"expected 'i j', got {raw!r}")
        i, j = (_parse_int(t, lineno) for t in toks)
        edges.add(_validated_edge(n, i, j, edges, lineno))
    return Digraph(n, frozenset(edges))


def _validated_edge(n, i, j, seen, lineno):
    if not (0 <= i < n and 0 <= j < n):
        raise GraphFormatError("vertex index out of range", lineno, f"{i} {j} with n={n}")
    if i == j:
        raise GraphFormatError("self-loop", lineno, f"vertex {i}")
    if (i, j) in seen:
        raise GraphFormatError("duplicate edge", lineno, f"{i} {j}")
    return (i, j)


def _parse_json(text: str) -> Digraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError("malformed line", exc.lineno, exc.msg) from None
    if not isinstance(obj, dict) or not isinstance(obj.get("n"), int) or not isinstance(obj.get("edges"), list):
        raise GraphFormatError("malformed line", 1, "expected {'n': int, 'edges': [[i, j], ...]}")
    n = obj["n"]
    if n < 0:
        raise GraphFormatError("malformed line", 1, "negative vertex count")
    edges: set[tuple[int, int]] = set()
    # JSON has no natural line per edge; report the 1-based edge position instead
    for pos, e in enumerate(obj["edges"], start=1):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise GraphFormatError("malformed line", pos, f"edge entry {e!r}")
        edges.add(_validated_edge(n, e[0], e[1], edges, pos))
    return Digraph(n, frozenset(edges))


def parse_graph(text: str | bytes, format: str = "edge_list") -> Digraph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    if format == "edge_list":
        return _parse_edge_list(text)
    if format == "json":
        return _parse_json(text)
    raise ValueError(f"unknown graph format {format!r}")


def serialize_graph(g: Digraph, format: str = "edge_list") -> str:
    if format == "edge_list":
        return "".join([f"{g.n}\n"] + [f"{i} {j}\n" for i, j in g.sorted_edges()])
    if format == "json":
        return json.dumps({"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}) + "\n"
    raise ValueError(f"unknown graph format {format!r}")


def read_graph(path) -> Digraph:
    with open(path, "rb") as fh:
        data = fh.read()
    fmt = "json" if data.lstrip().startswith(b"{") else "edge_list"
    return parse_graph(data, fmt)
