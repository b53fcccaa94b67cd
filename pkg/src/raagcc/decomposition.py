"""Decomposition of a relative outer automorphism group into base cases.

The procedure has three phases.  First restrict to cones of the relative
order on which the group still acts non-trivially, recursing into image and
kernel.  A branch on which nothing is left to restrict is either the
leftmost kernel or conical at some class ``[v]``.  Conical groups are
projected away from the vertices above ``v`` adjacent to it (recording the
twist kernel), then either recognised as GL_n(Z) or, for free classes,
restricted to the remaining free factors until a Fouxe-Rabinovitch group is
left.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConicalAssumptionError
from .graphs import DEFAULT_MAX_VERTICES, check_size, connected_components
from .parabolic import maximal_parabolics, rank
from .relgroup import (
    MOVES,
    TRIVIAL,
    PartialConjugation,
    RelOutSpec,
    Transvection,
    acts_trivially,
    all_laurence_generators,
    center_part,
    class_of,
    conical,
    enumerate_generators,
    equiv_classes,
    generator_action,
    group_stabilizes,
    image_spec,
    project_center,
    saturate,
    stabilized_subsets,
)


# --- base cases ---------------------------------------------------------------


@dataclass(frozen=True)
class LeftmostKernel:
    spec: RelOutSpec
    kind = "leftmost_kernel"
    contribution = 0


@dataclass(frozen=True)
class TwistGroup:
    rank: int
    kind = "twist"
    contribution = 0
    spec = None


@dataclass(frozen=True)
class GeneralLinear:
    n: int
    members: tuple
    spec: RelOutSpec
    kind = "general_linear"

    @property
    def contribution(self) -> int:
        return self.n - 1


@dataclass(frozen=True)
class FouxeRabinovitch:
    free_rank: int
    factors: tuple
    spec: RelOutSpec
    members: tuple
    kind = "fouxe_rabinovitch"

    @property
    def contribution(self) -> int:
        return self.free_rank - 1


@dataclass(frozen=True)
class CyclicOrderTwo:
    v: str
    kind = "cyclic_order_two"
    contribution = 0
    spec = None


@dataclass(frozen=True)
class PartialConjugationGroup:
    spec: RelOutSpec
    note: str = "terminal: not decomposed further"
    kind = "partial_conjugation_group"
    contribution = 0

    @property
    def only_partial_conjugations(self) -> bool:
        return all(isinstance(x, PartialConjugation) for x in enumerate_generators(self.spec))


BASE_KINDS = (
    LeftmostKernel,
    TwistGroup,
    GeneralLinear,
    FouxeRabinovitch,
    CyclicOrderTwo,
    PartialConjugationGroup,
)


# --- inner nodes --------------------------------------------------------------


@dataclass(frozen=True)
class RestrictStep:
    delta: tuple
    spec: RelOutSpec
    image: object
    kernel: object
    phase: str = "cone"
    kind = "restrict"


@dataclass(frozen=True)
class ProjectStep:
    z: tuple
    twist_rank: int
    spec: RelOutSpec
    image: object
    vertex: str
    twist: TwistGroup = field(init=False)
    kind = "project"

    def __post_init__(self):
        object.__setattr__(self, "twist", TwistGroup(self.twist_rank))


@dataclass(frozen=True)
class DecompositionTree:
    root: RelOutSpec
    node: object

    def leaves(self) -> list:
        return list(iter_leaves(self.node))

    def to_json(self) -> dict:
        return {"root": self.root.to_json(), "tree": node_to_json(self.node)}

    def render(self) -> str:
        lines = []
        _render(self.node, 0, lines)
        return "\n".join(lines)


def iter_leaves(node):
    if isinstance(node, RestrictStep):
        yield from iter_leaves(node.image)
        yield from iter_leaves(node.kernel)
    elif isinstance(node, ProjectStep):
        yield node.twist
        yield from iter_leaves(node.image)
    else:
        yield node


def iter_nodes(node):
    yield node
    if isinstance(node, RestrictStep):
        yield from iter_nodes(node.image)
        yield from iter_nodes(node.kernel)
    elif isinstance(node, ProjectStep):
        yield node.twist
        yield from iter_nodes(node.image)


# --- the procedure ------------------------------------------------------------


def decompose(spec: RelOutSpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> DecompositionTree:
    check_size(spec.graph, max_vertices)
    return DecompositionTree(spec, _restrict_phase(spec, None))


def _restrict_phase(spec: RelOutSpec, anchor):
    g = spec.graph
    everything = frozenset(g.vertices)
    anchor_class = class_of(spec, g.index(anchor)).members if anchor is not None else frozenset()
    for cls in equiv_classes(spec):
        if cls.members & anchor_class:
            continue
        cone, _ = conical(spec, cls.rep)
        if cone == everything:
            # the whole group is conical at this class; the leftmost kernel is trivial
            return _restrict_phase(spec, g.labels[cls.rep])
        if acts_trivially(spec, cone):
            continue
        image = image_spec(spec, cone, stabilized_subsets(spec, within=cone))
        kernel = RelOutSpec(g, spec.stabilized, spec.trivial | {cone})
        return RestrictStep(
            tuple(g.names(cone)),
            spec,
            _restrict_phase(image, g.labels[cls.rep]),
            _restrict_phase(kernel, anchor),
        )
    if anchor is None:
        return LeftmostKernel(spec)
    return _conical_phase(spec, g.index(anchor))


def _conical_phase(spec: RelOutSpec, v: int):
    g = spec.graph
    cls = class_of(spec, v)
    members = tuple(g.names(cls.members))
    twist_rank, image = project_center(spec, v)
    if cls.kind == "abelian":
        if image.graph.n != len(members) or image.stabilized or image.trivial:
            raise ConicalAssumptionError("abelian class did not project onto GL_n")
        inner = GeneralLinear(len(members), members, image)
    else:
        inner = _free_phase(image, g.labels[v])
    if twist_rank:
        z = tuple(g.names(center_part(spec, v)))
        return ProjectStep(z, twist_rank, spec, inner, g.labels[v])
    return inner


def free_factors(spec: RelOutSpec, v: int) -> list[frozenset]:
    """Split off the class of v: components of the rest, relative to the saturated family."""
    g = spec.graph
    cls = class_of(spec, v).members
    rest = frozenset(g.vertices) - cls
    family = saturate(spec).stabilized

    def together(x, y):
        return any(x in m and y in m for m in family)

    return connected_components(g, rest, together)


def _free_phase(spec: RelOutSpec, v_label: str):
    g = spec.graph
    v = g.index(v_label)
    members = tuple(g.names(class_of(spec, v).members))
    if g.n == 1:
        return CyclicOrderTwo(v_label)
    for x in class_of(spec, v).members:
        if g.adjacency[x]:
            raise ConicalAssumptionError("free class vertices must be isolated after projection")
    factors = free_factors(spec, v)
    return _restrict_factors(spec, factors, members)


def _restrict_factors(spec: RelOutSpec, factors, members):
    g = spec.graph
    for factor in factors:
        if acts_trivially(spec, factor):
            continue
        if not group_stabilizes(spec, factor):
            raise ConicalAssumptionError(f"free factor {g.names(factor)} is not stabilised")
        image = image_spec(spec, factor, stabilized_subsets(spec, within=factor))
        kernel = RelOutSpec(g, spec.stabilized, spec.trivial | {factor})
        return RestrictStep(
            tuple(g.names(factor)),
            spec,
            PartialConjugationGroup(image),
            _restrict_factors(kernel, factors, members),
            phase="factor",
        )
    return FouxeRabinovitch(
        len(members), tuple(tuple(g.names(f)) for f in factors), spec, members
    )


def predicted_sphere_dimension(spec: RelOutSpec) -> int:
    return rank(spec) - 1


# --- audit --------------------------------------------------------------------


@dataclass
class TreeReport:
    rank_sum: bool
    one_leaf_per_class: bool
    dichotomy: bool
    problems: list

    @property
    def ok(self) -> bool:
        return self.rank_sum and self.one_leaf_per_class and self.dichotomy

    def to_json(self) -> dict:
        return {
            "rank_sum": self.rank_sum,
            "one_leaf_per_class": self.one_leaf_per_class,
            "dichotomy": self.dichotomy,
            "problems": list(self.problems),
            "ok": self.ok,
        }


def _dichotomy_problems(node: RestrictStep) -> list[str]:
    s = node.spec
    g = s.graph
    delta = g.vset(node.delta)
    problems = []
    if node.phase == "cone":
        cones = {conical(s, v)[0] for v in g.vertices}
        if delta not in cones:
            problems.append(f"restriction at {list(node.delta)} is not at a cone")
    gens = all_laurence_generators(s)
    ker = [x for x in gens if generator_action(x, delta) == TRIVIAL]
    rest = [x for x in gens if generator_action(x, delta) != TRIVIAL]
    for p in maximal_parabolics(s):
        has_kernel = all(generator_action(x, p.delta) != MOVES for x in ker)
        has_rest = all(generator_action(x, p.delta) != MOVES for x in rest)
        if not (has_kernel or has_rest):
            problems.append(
                f"parabolic {g.names(p.delta)} splits the restriction at {list(node.delta)}"
            )
    return problems


def _twist_problems(node: ProjectStep) -> list[str]:
    s = node.spec
    g = s.graph
    v = g.index(node.vertex)
    twists = [
        Transvection(x, z) for x in class_of(s, v).members for z in g.vset(node.z)
    ]
    problems = []
    for p in maximal_parabolics(s):
        if any(generator_action(t, p.delta) == MOVES for t in twists):
            problems.append(f"parabolic {g.names(p.delta)} misses a twist")
    return problems


def verify_tree(spec: RelOutSpec, tree: DecompositionTree) -> TreeReport:
    problems = []
    leaves = tree.leaves()
    total = sum(leaf.contribution for leaf in leaves)
    rank_ok = total == rank(spec)
    if not rank_ok:
        problems.append(f"contributions sum to {total}, rank is {rank(spec)}")

    g = spec.graph
    expected = sorted(
        tuple(sorted(g.names(c.members))) for c in equiv_classes(spec) if len(c.members) >= 2
    )
    found = sorted(
        tuple(sorted(leaf.members))
        for leaf in leaves
        if isinstance(leaf, (GeneralLinear, FouxeRabinovitch)) and len(leaf.members) >= 2
    )
    class_ok = expected == found
    if not class_ok:
        problems.append(f"classes {expected} but GL/FR leaves for {found}")

    dich = []
    for node in iter_nodes(tree.node):
        if isinstance(node, RestrictStep):
            dich += _dichotomy_problems(node)
        elif isinstance(node, ProjectStep):
            dich += _twist_problems(node)
    problems += dich
    return TreeReport(rank_ok, class_ok, not dich, problems)


# --- output -------------------------------------------------------------------


def leaf_summary(leaf) -> dict:
    out = {"kind": leaf.kind, "contribution": leaf.contribution}
    if isinstance(leaf, TwistGroup):
        out["rank"] = leaf.rank
    elif isinstance(leaf, GeneralLinear):
        out.update(n=leaf.n, members=list(leaf.members))
    elif isinstance(leaf, FouxeRabinovitch):
        out.update(
            free_rank=leaf.free_rank,
            members=list(leaf.members),
            factors=[list(f) for f in leaf.factors],
        )
    elif isinstance(leaf, CyclicOrderTwo):
        out["v"] = leaf.v
    elif isinstance(leaf, PartialConjugationGroup):
        out["note"] = leaf.note
    if leaf.spec is not None:
        out["vertices"] = list(leaf.spec.graph.labels)
        out["generators"] = len(enumerate_generators(leaf.spec))
    return out


def node_to_json(node) -> dict:
    if isinstance(node, RestrictStep):
        return {
            "kind": "restrict",
            "phase": node.phase,
            "delta": list(node.delta),
            "image": node_to_json(node.image),
            "kernel": node_to_json(node.kernel),
        }
    if isinstance(node, ProjectStep):
        return {
            "kind": "project",
            "vertex": node.vertex,
            "z": list(node.z),
            "twist_rank": node.twist_rank,
            "image": node_to_json(node.image),
        }
    return leaf_summary(node)


def _leaf_text(leaf) -> str:
    if isinstance(leaf, LeftmostKernel):
        return f"leftmost kernel ({len(enumerate_generators(leaf.spec))} generators)"
    if isinstance(leaf, TwistGroup):
        return f"twist group Z^{leaf.rank}"
    if isinstance(leaf, GeneralLinear):
        return f"GL_{leaf.n}(Z) on {{{', '.join(leaf.members)}}}"
    if isinstance(leaf, FouxeRabinovitch):
        factors = " * ".join("<" + ",".join(f) + ">" for f in leaf.factors)
        head = f"F_{leaf.free_rank}<{','.join(leaf.members)}>"
        return f"Fouxe-Rabinovitch {head}" + (f" * {factors}" if factors else "")
    if isinstance(leaf, CyclicOrderTwo):
        return f"Out(<{leaf.v}>) = Z/2"
    return f"partial conjugations on {{{', '.join(leaf.spec.graph.labels)}}} ({leaf.note})"


def _render(node, depth, lines):
    pad = "  " * depth
    if isinstance(node, RestrictStep):
        lines.append(f"{pad}restrict to {{{', '.join(node.delta)}}}")
        lines.append(f"{pad}  image:")
        _render(node.image, depth + 2, lines)
        lines.append(f"{pad}  kernel:")
        _render(node.kernel, depth + 2, lines)
    elif isinstance(node, ProjectStep):
        lines.append(f"{pad}project away from {{{', '.join(node.z)}}}")
        lines.append(f"{pad}  kernel: {_leaf_text(node.twist)}")
        lines.append(f"{pad}  image:")
        _render(node.image, depth + 2, lines)
    else:
        lines.append(f"{pad}{_leaf_text(node)}")
