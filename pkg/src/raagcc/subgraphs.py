"""Labelled multigraphs and their posets of subgraphs X(G,l) and C(G,l).

Subgraphs are edge-id subsets; the vertices of a subgraph are the endpoints
of its edges.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import MultigraphError, SizeLimitError
from .posets import FinitePoset, certify, order_complex, reduced_homology

MAX_SUBSETS = 2 ** 18


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple
    edges: tuple  # (u, v, edge_id)
    labels: tuple = ()  # labels[i] is the vertex carrying label i+1

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise MultigraphError("duplicate vertex")
        ids = [e[2] for e in self.edges]
        if len(set(ids)) != len(ids):
            raise MultigraphError("duplicate edge id")
        for u, v, _ in self.edges:
            if u not in vs or v not in vs:
                raise MultigraphError(f"edge endpoint {u!r} or {v!r} unknown")
        for x in self.labels:
            if x not in vs:
                raise MultigraphError(f"label target {x!r} unknown")

    def edge(self, eid):
        for e in self.edges:
            if e[2] == eid:
                return e
        raise MultigraphError(f"unknown edge {eid!r}")

    @property
    def edge_ids(self) -> tuple:
        return tuple(e[2] for e in self.edges)

    @property
    def labelled(self) -> frozenset:
        return frozenset(self.labels)

    def to_json(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "edges": [[u, v, e] for u, v, e in self.edges],
            "labels": {str(i + 1): x for i, x in enumerate(self.labels)},
        }

    @classmethod
    def from_json(cls, data: dict) -> Multigraph:
        try:
            labels = data.get("labels", {})
            ordered = tuple(str(labels[k]) for k in sorted(labels, key=int))
            return cls(
                tuple(str(v) for v in data["vertices"]),
                tuple((str(u), str(v), str(e)) for u, v, e in data["edges"]),
                ordered,
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MultigraphError(f"malformed multigraph JSON: {exc}") from None


# --- counting -----------------------------------------------------------------


def _span(g: Multigraph, eids) -> set:
    out = set()
    for e in g.edges:
        if e[2] in eids:
            out.add(e[0])
            out.add(e[1])
    return out


def _components(vertices, edges) -> list[set]:
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v, _ in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
    comps = {}
    for v in vertices:
        comps.setdefault(find(v), set()).add(v)
    return list(comps.values())


def rank_of(g: Multigraph) -> int:
    """pi_1-rank |E| - |V| + c of the whole multigraph."""
    return len(g.edges) - len(g.vertices) + len(_components(g.vertices, g.edges))


def subgraph_rank(g: Multigraph, eids) -> int:
    edges = [e for e in g.edges if e[2] in eids]
    vs = _span(g, eids)
    return len(edges) - len(vs) + len(_components(vs, edges))


def is_connected_subgraph(g: Multigraph, eids) -> bool:
    edges = [e for e in g.edges if e[2] in eids]
    return bool(edges) and len(_components(_span(g, eids), edges)) == 1


def valence(g: Multigraph, eids=None) -> dict:
    out = {v: 0 for v in g.vertices}
    for u, v, e in g.edges:
        if eids is None or e in eids:
            out[u] += 1
            out[v] += 1
    return out


# --- operations ---------------------------------------------------------------


def edge_op(op: str, g: Multigraph, eid) -> Multigraph:
    u, v, _ = g.edge(eid)
    rest = tuple(e for e in g.edges if e[2] != eid)
    if op == "delete":
        return Multigraph(g.vertices, rest, g.labels)
    if op == "collapse":
        if u == v:
            raise MultigraphError(f"cannot collapse the loop {eid!r}")
        new = f"{u}/{v}"
        while new in g.vertices:
            new += "'"

        def m(x):
            return new if x in (u, v) else x

        verts = tuple(x for x in g.vertices if x not in (u, v)) + (new,)
        return Multigraph(verts, tuple((m(a), m(b), e) for a, b, e in rest), tuple(m(x) for x in g.labels))
    raise MultigraphError(f"unknown edge operation {op!r}")


def core(g: Multigraph) -> Multigraph:
    """Strip edges at unlabelled valence-one vertices; keep the non-tree component."""
    if rank_of(g) == 0:
        raise MultigraphError("core needs nontrivial fundamental group")
    edges = list(g.edges)
    labelled = g.labelled
    while True:
        val = {}
        for a, b, _ in edges:
            val[a] = val.get(a, 0) + 1
            val[b] = val.get(b, 0) + 1
        leaf = next(
            (e for e in edges
             if (val[e[0]] == 1 and e[0] not in labelled) or (val[e[1]] == 1 and e[1] not in labelled)),
            None,
        )
        if leaf is None:
            break
        edges.remove(leaf)
    vs = {x for e in edges for x in e[:2]}
    comps = _components(vs, edges)
    big = [c for c in comps if len([e for e in edges if e[0] in c]) >= len(c)]
    if len(big) != 1 or not labelled <= big[0]:
        raise MultigraphError("core needs one non-tree component containing every label")
    keep = big[0]
    verts = tuple(v for v in g.vertices if v in keep)
    return Multigraph(verts, tuple(e for e in edges if e[0] in keep), g.labels)


def restrict_to_edges(g: Multigraph, eids) -> Multigraph:
    edges = tuple(e for e in g.edges if e[2] in eids)
    vs = _span(g, eids)
    return Multigraph(tuple(v for v in g.vertices if v in vs), edges, g.labels)


def is_core_subgraph(g: Multigraph, eids) -> bool:
    val = valence(g, eids)
    vs = _span(g, eids)
    return all(val[v] != 1 or v in g.labelled for v in vs)


# --- posets -------------------------------------------------------------------


def x_elements(g: Multigraph) -> list[frozenset]:
    if len(_components(g.vertices, g.edges)) != 1:
        raise MultigraphError("the multigraph must be connected")
    n = rank_of(g)
    ids = g.edge_ids
    if 2 ** len(ids) > MAX_SUBSETS:
        raise SizeLimitError(f"{len(ids)} edges exceed the subset cap")
    labelled = g.labelled
    out = []
    for mask in range(1, 2 ** len(ids)):
        eids = frozenset(ids[i] for i in range(len(ids)) if mask >> i & 1)
        if not labelled <= _span(g, eids):
            continue
        if not is_connected_subgraph(g, eids):
            continue
        r = subgraph_rank(g, eids)
        if 1 <= r < n:
            out.append(eids)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def build_poset(g: Multigraph, which: str) -> FinitePoset:
    """X(G,l) or C(G,l) ordered by inclusion."""
    elements = x_elements(g)
    if which == "C":
        elements = [s for s in elements if is_core_subgraph(g, s)]
    elif which != "X":
        raise MultigraphError(f"unknown poset {which!r}")
    return FinitePoset(elements, lambda a, b: a <= b, validate=False)


@dataclass
class CorePosetReport:
    rank: int
    x_homology: object
    c_homology: object
    retraction: bool
    collapses: list = field(default_factory=list)
    spherical: bool = False

    @property
    def ok(self) -> bool:
        return self.retraction and self.spherical and all(ok for _, ok in self.collapses)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "x_homology": self.x_homology.to_json(),
            "c_homology": self.c_homology.to_json(),
            "x_equals_c": self.retraction,
            "collapses": [{"edge": e, "ok": ok} for e, ok in self.collapses],
            "spherical": self.spherical,
            "ok": self.ok,
        }


def poset_homology(g: Multigraph, which: str = "X"):
    return reduced_homology(order_complex(build_poset(g, which)), max_dimension=32)


def verify_core_posets(g: Multigraph) -> CorePosetReport:
    n = rank_of(g)
    if n < 2:
        raise MultigraphError("needs fundamental group of rank at least 2")
    x_complex = order_complex(build_poset(g, "X"))
    hx = reduced_homology(x_complex, max_dimension=32)
    hc = poset_homology(g, "C")
    collapses = []
    val = valence(g)
    for u, v, e in g.edges:
        if u != v and (val[u] == 1 or val[v] == 1):
            collapses.append((e, poset_homology(edge_op("collapse", g, e), "X") == hx))
    spherical = certify(x_complex, "spherical", n - 2, max_dimension=32).ok
    return CorePosetReport(n, hx, hc, hx == hc, collapses, spherical)


# --- examples -----------------------------------------------------------------


def rose(n: int) -> Multigraph:
    return Multigraph(("o",), tuple(("o", "o", f"e{i}") for i in range(n)))


def theta() -> Multigraph:
    return Multigraph(("x", "y"), tuple(("x", "y", f"e{i}") for i in range(3)))


def random_multigraph(rng: random.Random, rank: int, max_edges: int = 9, max_labels: int = 2) -> Multigraph:
    """Connected multigraph of the given rank: random tree plus extra edges."""
    nverts = rng.randint(1, max_edges - rank + 1)
    verts = [f"u{i}" for i in range(nverts)]
    edges = []
    for i in range(1, nverts):
        edges.append((verts[rng.randrange(i)], verts[i], f"e{len(edges)}"))
    for _ in range(rank):
        edges.append((rng.choice(verts), rng.choice(verts), f"e{len(edges)}"))
    labels = tuple(rng.sample(verts, rng.randint(0, min(max_labels, nverts))))
    return Multigraph(tuple(verts), tuple(edges), labels)


def multigraph_example(name: str) -> Multigraph:
    parts = name.split(":")
    if parts[0] == "rose" and len(parts) == 2:
        return rose(int(parts[1]))
    if parts[0] == "theta":
        return theta()
    if parts[0] == "multigraph" and len(parts) >= 2:
        seed = int(parts[2]) if len(parts) > 2 else 0
        return random_multigraph(random.Random(seed), int(parts[1]))
    raise MultigraphError(f"unknown multigraph example {name!r}")
