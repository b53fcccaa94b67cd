"""Finite simplicial graphs on dense vertex ids ``0..n-1``.

Every graph carries a tuple of string labels, one per vertex.  Vertex sets
are plain ``frozenset[int]``; anything returned to a caller as a sequence is
sorted ascending.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidGraphError, InvalidVertexError, SizeLimitError

DEFAULT_MAX_VERTICES = 24

VertexSet = frozenset


@dataclass(frozen=True)
class Graph:
    labels: tuple
    adjacency: tuple = field(repr=False)

    def __post_init__(self):
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise InvalidGraphError("vertex labels must be unique")
        if len(self.adjacency) != n:
            raise InvalidGraphError("adjacency must have one entry per vertex")
        for v, nbrs in enumerate(self.adjacency):
            if v in nbrs:
                raise InvalidGraphError(f"loop at {self.labels[v]!r}")
            for w in nbrs:
                if not 0 <= w < n or v not in self.adjacency[w]:
                    raise InvalidGraphError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, labels, edges) -> Graph:
        """Build from labels and edges given as label pairs (or id pairs)."""
        labels = tuple(str(x) for x in labels)
        index = {lab: i for i, lab in enumerate(labels)}
        adj = [set() for _ in labels]
        seen = set()
        for a, b in edges:
            u, w = _resolve(index, a, len(labels)), _resolve(index, b, len(labels))
            if u == w:
                raise InvalidGraphError(f"loop at {labels[u]!r}")
            key = frozenset((u, w))
            if key in seen:
                raise InvalidGraphError(f"duplicate edge {labels[u]!r}-{labels[w]!r}")
            seen.add(key)
            adj[u].add(w)
            adj[w].add(u)
        return cls(labels, tuple(frozenset(s) for s in adj))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((v, w) for v in self.vertices for w in self.adjacency[v] if v < w)

    def adjacent(self, v: int, w: int) -> bool:
        return w in self.adjacency[v]

    def index(self, label) -> int:
        """Vertex id for a label (ints are accepted as ids)."""
        if isinstance(label, int) and not isinstance(label, bool):
            self.check(label)
            return label
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise InvalidVertexError(f"unknown vertex {label!r}") from None

    def vset(self, labels) -> frozenset:
        return frozenset(self.index(x) for x in labels)

    def names(self, vs) -> list[str]:
        return [self.labels[v] for v in sorted(vs)]

    def check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise InvalidVertexError(f"unknown vertex {v!r}")

    def induced(self, vs) -> tuple[Graph, dict]:
        """Full subgraph on ``vs``; returns it with the old-id to new-id map."""
        keep = sorted(vs)
        new = {v: i for i, v in enumerate(keep)}
        adj = tuple(frozenset(new[w] for w in self.adjacency[v] if w in new) for v in keep)
        return Graph(tuple(self.labels[v] for v in keep), adj), new

    def is_complete(self, vs) -> bool:
        return all(self.adjacent(v, w) for v, w in itertools.combinations(vs, 2))

    def is_discrete(self, vs) -> bool:
        return not any(self.adjacent(v, w) for v, w in itertools.combinations(vs, 2))

    def to_json(self) -> dict:
        return {
            "vertices": list(self.labels),
            "edges": [[self.labels[v], self.labels[w]] for v, w in self.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        try:
            return cls.from_edges(data["vertices"], data.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise InvalidGraphError(f"malformed graph JSON: {exc}") from None


def _resolve(index, x, n):
    if isinstance(x, str) or str(x) in index:
        try:
            return index[str(x)]
        except KeyError:
            raise InvalidVertexError(f"unknown vertex {x!r}") from None
    if isinstance(x, int) and 0 <= x < n:
        return x
    raise InvalidVertexError(f"unknown vertex {x!r}")


def check_size(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> None:
    if g.n > max_vertices:
        raise SizeLimitError(f"graph has {g.n} vertices, limit is {max_vertices}")


def neighborhoods(g: Graph, v: int) -> tuple[frozenset, frozenset]:
    """(link, star) of ``v``."""
    g.check(v)
    link = g.adjacency[v]
    return link, link | {v}


def link(g: Graph, v: int) -> frozenset:
    return neighborhoods(g, v)[0]


def star(g: Graph, v: int) -> frozenset:
    return neighborhoods(g, v)[1]


def standard_leq(g: Graph, v: int, w: int) -> bool:
    """v <= w iff lk(v) is contained in st(w)."""
    g.check(v)
    g.check(w)
    return g.adjacency[v] <= g.adjacency[w] | {w}


def connected_components(g: Graph, vs, extra_adjacent=None) -> list[frozenset]:
    """Components of the full subgraph on ``vs``, sorted by least vertex.

    ``extra_adjacent(x, y)`` may declare additional adjacencies.
    """
    remaining = set(vs)
    out = []
    for start in sorted(vs):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in list(remaining):
                if g.adjacent(x, y) or (extra_adjacent is not None and extra_adjacent(x, y)):
                    remaining.discard(y)
                    comp.add(y)
                    stack.append(y)
        out.append(frozenset(comp))
    return out


def components_outside_star(g: Graph, v: int) -> list[frozenset]:
    return connected_components(g, set(g.vertices) - star(g, v))


def complement(g: Graph) -> Graph:
    everything = frozenset(g.vertices)
    return Graph(g.labels, tuple(everything - g.adjacency[v] - {v} for v in g.vertices))


def _offset_union(g1: Graph, g2: Graph, cross: bool) -> tuple[Graph, dict]:
    off = g1.n
    taken = set(g1.labels)
    labels2 = []
    for lab in g2.labels:
        new = lab
        while new in taken:
            new = new + "'"
        taken.add(new)
        labels2.append(new)
    adj = [set(a) for a in g1.adjacency]
    adj += [{w + off for w in a} for a in g2.adjacency]
    if cross:
        for v in range(g1.n):
            for w in range(g2.n):
                adj[v].add(w + off)
                adj[w + off].add(v)
    mapping = {w: w + off for w in range(g2.n)}
    return Graph(g1.labels + tuple(labels2), tuple(frozenset(a) for a in adj)), mapping


def join(g1: Graph, g2: Graph) -> tuple[Graph, dict]:
    """Join; returns the graph and the id map for the second factor."""
    return _offset_union(g1, g2, cross=True)


def disjoint_union(g1: Graph, g2: Graph) -> tuple[Graph, dict]:
    return _offset_union(g1, g2, cross=False)


def construct(op: str, g1: Graph, g2: Graph | None = None) -> Graph:
    if op == "complement":
        return complement(g1)
    if g2 is None:
        raise InvalidGraphError(f"{op} needs two graphs")
    if op == "join":
        return join(g1, g2)[0]
    if op == "disjoint_union":
        return disjoint_union(g1, g2)[0]
    raise InvalidGraphError(f"unknown construction {op!r}")


def center(g: Graph) -> frozenset:
    """Vertices adjacent to every other vertex."""
    return frozenset(v for v in g.vertices if len(g.adjacency[v]) == g.n - 1)


def isolated(g: Graph) -> frozenset:
    return frozenset(v for v in g.vertices if not g.adjacency[v])
