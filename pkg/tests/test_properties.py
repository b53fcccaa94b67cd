"""Property tests for the structural invariants."""
import itertools

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph_from_bits
from raagcc.decomposition import decompose, verify_tree
from raagcc.errors import SpecError
from raagcc.graphs import components_outside_star, construct, star, standard_leq
from raagcc.graphs import center, isolated
from raagcc.parabolic import maximal_parabolics, parabolic_from_picks, rank
from raagcc.posets import (
    FinitePoset,
    order_complex,
    poset_combine,
    reduced_homology,
    simplicial_join,
    SimplicialComplex,
)
from raagcc.relgroup import (
    MOVES,
    TRIVIAL,
    RelOutSpec,
    conical,
    enumerate_generators,
    equiv_classes,
    g_leq,
    generator_action,
    group_stabilizes,
    restrict,
    saturate,
)


@st.composite
def graphs(draw, max_n=7, min_n=1):
    n = draw(st.integers(min_n, max_n))
    bits = draw(st.integers(0, 2 ** (n * (n - 1) // 2) - 1))
    return graph_from_bits(n, bits)


@st.composite
def specs(draw, max_n=6):
    g = draw(graphs(max_n=max_n, min_n=2))
    full = frozenset(g.vertices)
    subsets = st.frozensets(st.sampled_from(g.vertices), min_size=1).filter(lambda s: s != full)
    stab = draw(st.lists(subsets, max_size=2))
    triv = draw(st.lists(subsets, max_size=1))
    return RelOutSpec(g, frozenset(stab), frozenset(triv))


@st.composite
def posets(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    m = np.eye(n, dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        m[i, j] = draw(st.booleans())
    for k in range(n):  # transitive closure
        m |= np.outer(m[:, k], m[k, :])
    return FinitePoset(range(n), m)


# graphs


@given(graphs())
def test_complement_duality(g):
    c = construct("complement", g)
    for v in g.vertices:
        for w in g.vertices:
            assert standard_leq(c, v, w) == standard_leq(g, w, v)


@given(graphs())
def test_complement_is_an_involution(g):
    assert construct("complement", construct("complement", g)) == g


@given(graphs(), st.data())
def test_components_partition_the_outside_of_a_star(g, data):
    v = data.draw(st.sampled_from(g.vertices))
    comps = components_outside_star(g, v)
    assert all(comps)
    assert sum(len(c) for c in comps) == len(frozenset().union(*comps))
    assert frozenset().union(*comps) == frozenset(g.vertices) - star(g, v)


# relative groups


@given(graphs(max_n=6))
def test_g_leq_without_families_is_standard(g):
    spec = RelOutSpec(g)
    for v in g.vertices:
        for w in g.vertices:
            assert g_leq(spec, v, w) == standard_leq(g, v, w)


@given(specs())
def test_g_leq_preorder_and_class_partition(spec):
    vs = spec.graph.vertices
    for v in vs:
        assert g_leq(spec, v, v)
    for u, v, w in itertools.product(vs, repeat=3):
        if g_leq(spec, u, v) and g_leq(spec, v, w):
            assert g_leq(spec, u, w)
    plain = {frozenset(c.members) for c in equiv_classes(RelOutSpec(spec.graph))}
    classes = [c.members for c in equiv_classes(spec)]
    assert sorted(v for c in classes for v in c) == list(vs)
    for c in classes:
        assert any(c <= p for p in plain)


@given(specs())
def test_cones_are_upward_closed_and_stabilised(spec):
    vs = spec.graph.vertices
    for v in vs:
        geq, _ = conical(spec, v)
        for w in geq:
            for x in vs:
                if g_leq(spec, w, x):
                    assert x in geq
        if geq != frozenset(vs):
            assert group_stabilizes(spec, geq)


@settings(max_examples=30)
@given(specs(max_n=5))
def test_saturation_is_idempotent(spec):
    sat = saturate(spec)
    assert saturate(sat) == sat
    assert set(enumerate_generators(sat)) == set(enumerate_generators(spec))


@settings(max_examples=30)
@given(specs(max_n=5))
def test_kernel_dichotomy(spec):
    sat = saturate(spec)
    full = frozenset(sat.graph.vertices)
    for v in sat.graph.vertices:
        cone, _ = conical(sat, v)
        if cone == full or cone not in sat.stabilized:
            continue
        try:
            _, kernel = restrict(sat, cone)
        except SpecError:  # trivial image
            continue
        gens = enumerate_generators(kernel)
        for r in range(1, len(cone) + 1):
            for delta in map(frozenset, itertools.combinations(sorted(cone), r)):
                acts = {generator_action(x, delta) for x in gens}
                if delta in sat.stabilized:
                    assert MOVES not in acts
        for x in gens:
            assert generator_action(x, cone) == TRIVIAL
    tree = decompose(spec)
    assert verify_tree(spec, tree).dichotomy


# parabolics


@given(specs())
def test_parabolic_count_is_rank(spec):
    assert len(maximal_parabolics(spec)) == rank(spec)


@settings(max_examples=40)
@given(specs(max_n=5), st.data())
def test_pick_rank_law(spec, data):
    ps = maximal_parabolics(spec)
    if not ps:
        return
    by_class = {}
    for p in ps:
        by_class.setdefault(p.class_rep, []).append(p.j)
    # distinct picks, at most rank - 1 of them
    options = [(r, j) for r, js in by_class.items() for j in js]
    k = data.draw(st.integers(0, len(options) - 1))
    picks = data.draw(st.lists(st.sampled_from(options), min_size=k, max_size=k, unique=True))
    assert rank(parabolic_from_picks(spec, picks)) == rank(spec) - len(picks)


@given(graphs(max_n=5), graphs(max_n=5))
def test_construction_rank_formulas(g1, g2):
    r1, r2 = rank(RelOutSpec(g1)), rank(RelOutSpec(g2))
    j = construct("join", g1, g2)
    assert rank(RelOutSpec(j)) == r1 + r2 + (1 if center(g1) and center(g2) else 0)
    u = construct("disjoint_union", g1, g2)
    assert rank(RelOutSpec(u)) == r1 + r2 + (1 if isolated(g1) and isolated(g2) else 0)
    assert rank(RelOutSpec(construct("complement", g1))) == r1


# poset topology


@settings(max_examples=30)
@given(posets(max_n=5), posets(max_n=5))
def test_join_of_posets_matches_join_of_complexes(p, q):
    left = reduced_homology(order_complex(poset_combine("join", p, q)), 12)
    right = reduced_homology(simplicial_join(order_complex(p), order_complex(q)), 12)
    assert left == right


@given(posets())
def test_euler_characteristic_matches_betti_numbers(p):
    k = order_complex(p)
    h = reduced_homology(k)
    if any(t for _, t in h.nonzero().values()):
        return
    reduced_chi = sum((-1) ** d * c for d, c in enumerate(k.f_vector())) - 1 if len(p) else -1
    assert reduced_chi == sum((-1) ** d * b for d, (b, _) in h.nonzero().items())


@given(posets(max_n=6))
def test_cones_are_acyclic(p):
    k = order_complex(p)
    point = SimplicialComplex.from_facets(("*",), [(0,)])
    assert reduced_homology(simplicial_join(k, point), 12).vanishes()


@given(posets())
def test_opposite_has_the_same_homology(p):
    assert reduced_homology(order_complex(p)) == reduced_homology(order_complex(poset_combine("opposite", p)))
