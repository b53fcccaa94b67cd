"""Symbolic relative outer automorphism groups of RAAGs.

A :class:`RelOutSpec` records a graph together with a family of vertex sets
whose special subgroups are stabilised and a family on which the group acts
trivially.  Everything about the group is read off from these data through
the Laurence generators it contains.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field

from .errors import (
    ConicalAssumptionError,
    MalformedGeneratorError,
    MixedClassError,
    SpecError,
)
from .graphs import DEFAULT_MAX_VERTICES, Graph, check_size, components_outside_star

TRIVIAL, STABILIZES, MOVES = "trivial", "stabilizes", "moves"


def _family(graph: Graph, members) -> frozenset:
    out = set()
    full = frozenset(graph.vertices)
    for m in members:
        m = frozenset(m)
        if not m or m == full:
            raise SpecError(f"family member {graph.names(m)} is not a nonempty proper subset")
        if not m <= full:
            raise SpecError("family member contains unknown vertices")
        out.add(m)
    return frozenset(out)


@dataclass(frozen=True)
class RelOutSpec:
    graph: Graph
    stabilized: frozenset = frozenset()
    trivial: frozenset = frozenset()
    saturated: bool = False

    def __post_init__(self):
        object.__setattr__(self, "stabilized", _family(self.graph, self.stabilized))
        object.__setattr__(self, "trivial", _family(self.graph, self.trivial))

    @classmethod
    def plain(cls, graph: Graph) -> RelOutSpec:
        return cls(graph)

    def with_families(self, stabilized=None, trivial=None) -> RelOutSpec:
        return RelOutSpec(
            self.graph,
            self.stabilized if stabilized is None else stabilized,
            self.trivial if trivial is None else trivial,
            False,
        )

    def to_json(self) -> dict:
        g = self.graph
        return {
            "graph": g.to_json(),
            "stabilized": sorted(g.names(m) for m in self.stabilized),
            "trivial": sorted(g.names(m) for m in self.trivial),
            "saturated": self.saturated,
        }

    @classmethod
    def from_json(cls, data: dict) -> RelOutSpec:
        if "graph" not in data:
            return cls(Graph.from_json(data))
        g = Graph.from_json(data["graph"])
        return cls(
            g,
            [g.vset(m) for m in data.get("stabilized", [])],
            [g.vset(m) for m in data.get("trivial", [])],
        )


# --- generators -------------------------------------------------------------


@dataclass(frozen=True)
class Inversion:
    v: int
    kind = "inversion"


@dataclass(frozen=True)
class Transvection:
    v: int
    w: int
    kind = "transvection"


@dataclass(frozen=True)
class PartialConjugation:
    v: int
    K: frozenset
    star: frozenset = field(compare=False, repr=False)
    kind = "partial_conjugation"


def partial_conjugation(graph: Graph, v: int, K) -> PartialConjugation:
    graph.check(v)
    K = frozenset(K)
    st = graph.adjacency[v] | {v}
    comps = components_outside_star(graph, v)
    if not K or K & st or any(c & K and not c <= K for c in comps):
        raise MalformedGeneratorError(
            f"{graph.names(K)} is not a nonempty union of components outside st({graph.labels[v]})"
        )
    return PartialConjugation(v, K, st)


def _check_generator(graph: Graph, gen) -> None:
    if isinstance(gen, Inversion):
        graph.check(gen.v)
    elif isinstance(gen, Transvection):
        graph.check(gen.v)
        graph.check(gen.w)
        if gen.v == gen.w:
            raise MalformedGeneratorError("transvection needs two distinct vertices")
    elif isinstance(gen, PartialConjugation):
        partial_conjugation(graph, gen.v, gen.K)
    else:
        raise MalformedGeneratorError(f"not a Laurence generator: {gen!r}")


def generator_to_json(graph: Graph, gen) -> dict:
    if isinstance(gen, Inversion):
        return {"kind": "inversion", "v": graph.labels[gen.v]}
    if isinstance(gen, Transvection):
        return {"kind": "transvection", "v": graph.labels[gen.v], "w": graph.labels[gen.w]}
    return {"kind": "partial_conjugation", "v": graph.labels[gen.v], "K": graph.names(gen.K)}


def generator_from_json(graph: Graph, data: dict):
    kind = data.get("kind")
    if kind == "inversion":
        return Inversion(graph.index(data["v"]))
    if kind == "transvection":
        g = Transvection(graph.index(data["v"]), graph.index(data["w"]))
        _check_generator(graph, g)
        return g
    if kind == "partial_conjugation":
        return partial_conjugation(graph, graph.index(data["v"]), graph.vset(data["K"]))
    raise MalformedGeneratorError(f"unknown generator kind {kind!r}")


def generator_action(gen, delta) -> str:
    """Classify how a Laurence generator acts on the special subgroup A_delta."""
    delta = frozenset(delta)
    if isinstance(gen, Inversion):
        return STABILIZES if gen.v in delta else TRIVIAL
    if isinstance(gen, Transvection):
        if gen.v not in delta:
            return TRIVIAL
        return STABILIZES if gen.w in delta else MOVES
    if isinstance(gen, PartialConjugation):
        if not (gen.K & delta) or (delta - gen.star) <= gen.K:
            return TRIVIAL
        return STABILIZES if gen.v in delta else MOVES
    raise MalformedGeneratorError(f"not a Laurence generator: {gen!r}")


# --- orderings --------------------------------------------------------------


@functools.lru_cache(maxsize=4096)
def _upsets(spec: RelOutSpec) -> tuple:
    """For each v, the set of w with v <=_G w."""
    g = spec.graph
    in_trivial = set().union(*spec.trivial) if spec.trivial else set()
    ups = []
    for v in g.vertices:
        above = {v}
        if v not in in_trivial:
            containing = [d for d in spec.stabilized if v in d]
            lk = g.adjacency[v]
            for w in g.vertices:
                if w != v and lk <= g.adjacency[w] | {w} and all(w in d for d in containing):
                    above.add(w)
        ups.append(frozenset(above))
    return tuple(ups)


def g_leq(spec: RelOutSpec, v: int, w: int) -> bool:
    spec.graph.check(v)
    spec.graph.check(w)
    return w in _upsets(spec)[v]


@dataclass(frozen=True)
class EquivClass:
    members: frozenset
    kind: str

    @property
    def rep(self) -> int:
        return min(self.members)


@functools.lru_cache(maxsize=4096)
def _classes(spec: RelOutSpec) -> tuple:
    ups = _upsets(spec)
    seen = set()
    out = []
    for v in spec.graph.vertices:
        if v in seen:
            continue
        members = frozenset(w for w in ups[v] if v in ups[w])
        seen |= members
        if len(members) == 1:
            kind = "singleton"
        elif spec.graph.is_complete(members):
            kind = "abelian"
        elif spec.graph.is_discrete(members):
            kind = "free"
        else:
            raise MixedClassError(
                f"class {spec.graph.names(members)} is neither complete nor discrete"
            )
        out.append(EquivClass(members, kind))
    return tuple(out)


def equiv_classes(spec: RelOutSpec) -> list[EquivClass]:
    return list(_classes(spec))


def class_of(spec: RelOutSpec, v: int) -> EquivClass:
    spec.graph.check(v)
    for c in _classes(spec):
        if v in c.members:
            return c
    raise AssertionError("classes do not cover the vertex set")


def conical(spec: RelOutSpec, v: int) -> tuple[frozenset, frozenset]:
    """(cone of v, cone of v minus the class of v)."""
    spec.graph.check(v)
    geq = _upsets(spec)[v]
    return geq, geq - class_of(spec, v).members


# --- generators contained in the group --------------------------------------


@functools.lru_cache(maxsize=4096)
def _relative_components(spec: RelOutSpec, v: int) -> tuple:
    g = spec.graph
    outside = set(g.vertices) - g.adjacency[v] - {v}
    parent = {x: x for x in outside}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for x in outside:
        for y in g.adjacency[x]:
            if y in outside:
                union(x, y)
    blocks = [d for d in spec.stabilized if v not in d] + list(spec.trivial)
    for block in blocks:
        inside = sorted(block & outside)
        for y in inside[1:]:
            union(inside[0], y)
    comps = {}
    for x in outside:
        comps.setdefault(find(x), set()).add(x)
    return tuple(sorted((frozenset(c) for c in comps.values()), key=min))


def relative_components(spec: RelOutSpec, v: int) -> list[frozenset]:
    """Components of the complement of st(v) under (G u P(H))^v-adjacency."""
    spec.graph.check(v)
    return list(_relative_components(spec, v))


def contains_generator(spec: RelOutSpec, gen) -> bool:
    g = spec.graph
    _check_generator(g, gen)
    if isinstance(gen, Inversion):
        return not any(gen.v in t for t in spec.trivial)
    if isinstance(gen, Transvection):
        return g_leq(spec, gen.v, gen.w)
    return all(not (c & gen.K) or c <= gen.K for c in _relative_components(spec, gen.v))


@functools.lru_cache(maxsize=4096)
def _generators(spec: RelOutSpec) -> tuple:
    g = spec.graph
    ups = _upsets(spec)
    out = [Inversion(v) for v in g.vertices if not any(v in t for t in spec.trivial)]
    out += [Transvection(v, w) for v in g.vertices for w in sorted(ups[v]) if w != v]
    for v in g.vertices:
        comps = _relative_components(spec, v)
        if len(comps) > 1:
            st = g.adjacency[v] | {v}
            out += [PartialConjugation(v, c, st) for c in comps]
    return tuple(out)


def enumerate_generators(spec: RelOutSpec) -> list:
    """Canonical Laurence generating set: single relative components for K."""
    return list(_generators(spec))


def all_laurence_generators(spec: RelOutSpec, max_components: int = 12) -> list:
    """Every Laurence generator of the group, including unions of components.

    Inner partial conjugations (K the whole complement of the star) are left
    out since they are trivial in Out.
    """
    g = spec.graph
    out = [x for x in _generators(spec) if not isinstance(x, PartialConjugation)]
    for v in g.vertices:
        comps = _relative_components(spec, v)
        if len(comps) > max_components:
            raise SpecError(f"too many components outside st({g.labels[v]})")
        st = g.adjacency[v] | {v}
        for r in range(1, len(comps)):
            for pick in itertools.combinations(comps, r):
                out.append(PartialConjugation(v, frozenset().union(*pick), st))
    return out


def group_stabilizes(spec: RelOutSpec, delta) -> bool:
    delta = frozenset(delta)
    return all(generator_action(x, delta) != MOVES for x in _generators(spec))


def acts_trivially(spec: RelOutSpec, delta) -> bool:
    delta = frozenset(delta)
    return all(generator_action(x, delta) == TRIVIAL for x in _generators(spec))


# --- saturation -------------------------------------------------------------


def upward_closed_sets(spec: RelOutSpec, within=None):
    """Yield every nonempty set that is a union of classes, closed upwards.

    With ``within`` given (itself upward closed), only subsets of it.
    """
    classes = [c.members for c in _classes(spec)]
    if within is not None:
        within = frozenset(within)
        classes = [c for c in classes if c <= within]
    ups = _upsets(spec)
    above = []
    for c in classes:
        rep = min(c)
        above.append({j for j, d in enumerate(classes) if d != c and min(d) in ups[rep]})
    # maximal classes first, so every class is decided after the ones above it
    order = sorted(range(len(classes)), key=lambda i: (len(ups[min(classes[i])]), i))

    def rec(pos, chosen):
        if pos == len(order):
            if chosen:
                yield frozenset().union(*(classes[i] for i in chosen))
            return
        i = order[pos]
        yield from rec(pos + 1, chosen)
        if above[i] <= chosen:
            yield from rec(pos + 1, chosen | {i})

    yield from rec(0, frozenset())


def stabilized_subsets(spec: RelOutSpec, within=None) -> frozenset:
    full = frozenset(spec.graph.vertices) if within is None else frozenset(within)
    return frozenset(
        d for d in upward_closed_sets(spec, within) if d != full and group_stabilizes(spec, d)
    )


def saturate(spec: RelOutSpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> RelOutSpec:
    if spec.saturated:
        return spec
    check_size(spec.graph, max_vertices)
    family = stabilized_subsets(spec)
    return RelOutSpec(spec.graph, family, spec.trivial, True)


# --- restriction and projection ---------------------------------------------


def _trace(graph: Graph, delta: frozenset, family, mapping, trivial: bool) -> set:
    out = set()
    for m in family:
        t = m & delta
        if not t:
            continue
        if t == delta:
            if trivial:
                raise SpecError(
                    f"the group acts trivially on {graph.names(delta)}; its image is trivial"
                )
            continue
        out.add(frozenset(mapping[x] for x in t))
    return out


def image_spec(spec: RelOutSpec, delta, stabilized=None) -> RelOutSpec:
    """Relative group on the full subgraph ``delta`` with traced families."""
    delta = frozenset(delta)
    g = spec.graph
    sub, mapping = g.induced(delta)
    fam = spec.stabilized if stabilized is None else stabilized
    return RelOutSpec(
        sub,
        _trace(g, delta, fam, mapping, trivial=False),
        _trace(g, delta, spec.trivial, mapping, trivial=True),
    )


def restrict(spec: RelOutSpec, delta) -> tuple[RelOutSpec, RelOutSpec]:
    """Restriction to A_delta: (image, kernel)."""
    delta = frozenset(delta)
    if not spec.saturated:
        raise SpecError("restrict needs a saturated spec")
    if delta not in spec.stabilized:
        raise SpecError(f"{spec.graph.names(delta)} is not stabilised by the group")
    image = image_spec(spec, delta)
    kernel = RelOutSpec(spec.graph, spec.stabilized, spec.trivial | {delta})
    return image, kernel


def check_conical(spec: RelOutSpec, v: int) -> None:
    geq, gt = conical(spec, v)
    if geq != frozenset(spec.graph.vertices):
        raise ConicalAssumptionError(
            f"not every vertex lies above {spec.graph.labels[v]}"
        )
    for w in sorted(gt):
        if not acts_trivially(spec, {w}):
            raise ConicalAssumptionError(
                f"the group acts non-trivially on {{{spec.graph.labels[w]}}} above "
                f"{spec.graph.labels[v]}"
            )


def center_part(spec: RelOutSpec, v: int) -> frozenset:
    _, gt = conical(spec, v)
    return frozenset(w for w in gt if spec.graph.adjacent(v, w))


def project_center(spec: RelOutSpec, v: int) -> tuple[int, RelOutSpec]:
    """Projection away from the twisting vertices Z: (twist rank, image)."""
    check_conical(spec, v)
    z = center_part(spec, v)
    if not z:
        return 0, spec
    rank = len(class_of(spec, v).members) * len(z)
    delta = frozenset(spec.graph.vertices) - z
    return rank, image_spec(spec, delta)
