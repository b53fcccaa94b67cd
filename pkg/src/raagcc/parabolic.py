"""Rank, maximal standard parabolics and their intersections."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import ClassNotSymmetricError, PickError
from .relgroup import (
    MOVES,
    RelOutSpec,
    Transvection,
    class_of,
    conical,
    contains_generator,
    equiv_classes,
    generator_action,
)


@dataclass(frozen=True)
class ParabolicDescriptor:
    class_rep: int
    j: int
    delta: frozenset
    spec: RelOutSpec
    ordering: tuple

    def to_json(self) -> dict:
        g = self.spec.graph
        return {
            "class": [g.labels[v] for v in self.ordering],
            "j": self.j,
            "delta": g.names(self.delta),
            "stabilized": sorted(g.names(m) for m in self.spec.stabilized),
            "trivial": sorted(g.names(m) for m in self.spec.trivial),
        }


@dataclass(frozen=True)
class CoxeterDescriptor:
    class_sizes: tuple
    coxeter_rank: int


def rank(spec: RelOutSpec) -> int:
    return spec.graph.n - len(equiv_classes(spec))


def _ordered(members, ordering=None) -> tuple:
    if ordering is None:
        return tuple(sorted(members))
    ordered = tuple(v for v in ordering if v in members)
    if set(ordered) != set(members):
        raise PickError("class ordering override must list every class member")
    return ordered


def parabolic_delta(spec: RelOutSpec, v: int, j: int, ordering=None) -> frozenset:
    cls = class_of(spec, v)
    seq = _ordered(cls.members, ordering)
    if not 1 <= j <= len(seq) - 1:
        raise PickError(f"index {j} out of range for a class of size {len(seq)}")
    _, gt = conical(spec, v)
    return frozenset(seq[:j]) | gt


def maximal_parabolics(spec: RelOutSpec, orderings=None) -> list[ParabolicDescriptor]:
    """One descriptor per (class of size n >= 2, 1 <= j <= n-1).

    ``orderings`` optionally maps a class representative to an ordering of
    its class; by default classes are ordered by vertex id.
    """
    orderings = orderings or {}
    out = []
    for cls in equiv_classes(spec):
        if len(cls.members) < 2:
            continue
        seq = _ordered(cls.members, orderings.get(cls.rep))
        for j in range(1, len(seq)):
            delta = parabolic_delta(spec, cls.rep, j, seq)
            stab = spec.with_families(stabilized=spec.stabilized | {delta})
            out.append(ParabolicDescriptor(cls.rep, j, delta, stab, seq))
    return out


def properness_witness(spec: RelOutSpec, p: ParabolicDescriptor) -> bool:
    """rho_{v_1}^{v_n} lies in the group but moves the parabolic's subgraph."""
    t = Transvection(p.ordering[0], p.ordering[-1])
    return contains_generator(spec, t) and generator_action(t, p.delta) == MOVES


def parabolic_from_picks(spec: RelOutSpec, picks, orderings=None) -> RelOutSpec:
    """Intersection of the maximal parabolics named by (class vertex, j) picks."""
    orderings = orderings or {}
    picks = list(picks)
    if not picks:
        return spec
    normalized = []
    for v, j in picks:
        rep = class_of(spec, v).rep
        normalized.append((rep, j))
    if len(set(normalized)) != len(normalized):
        raise PickError("duplicate pick")
    if len(normalized) > rank(spec) - 1:
        raise PickError(f"{len(normalized)} picks but rank is {rank(spec)}")
    deltas = {parabolic_delta(spec, rep, j, orderings.get(rep)) for rep, j in normalized}
    return spec.with_families(stabilized=spec.stabilized | deltas)


def class_transposition_is_automorphism(spec: RelOutSpec, x: int, y: int) -> bool:
    g = spec.graph
    swap = {x: y, y: x}
    return all(
        g.adjacent(swap.get(a, a), swap.get(b, b)) for a, b in g.edges()
    )


def aut0(spec: RelOutSpec) -> CoxeterDescriptor:
    classes = equiv_classes(spec)
    for cls in classes:
        for a, b in itertools.combinations(sorted(cls.members), 2):
            if not class_transposition_is_automorphism(spec, a, b):
                raise ClassNotSymmetricError(
                    f"swapping {spec.graph.labels[a]} and {spec.graph.labels[b]} "
                    "is not a graph automorphism"
                )
    sizes = tuple(len(c.members) for c in classes)
    return CoxeterDescriptor(sizes, sum(s - 1 for s in sizes))
