from collections import Counter

import pytest

from raagcc.corpus import complete, diamonds, discrete, path, random_graph, random_tree, star_graph
from raagcc.decomposition import (
    CyclicOrderTwo,
    FouxeRabinovitch,
    GeneralLinear,
    LeftmostKernel,
    PartialConjugationGroup,
    ProjectStep,
    RestrictStep,
    TwistGroup,
    decompose,
    iter_nodes,
    predicted_sphere_dimension,
    verify_tree,
)
from raagcc.graphs import construct
from raagcc.parabolic import rank
from raagcc.relgroup import RelOutSpec, conical
from raagcc.suite import expected_diamond_leaves, expected_tree_leaves, leaf_multiset

BASE = (LeftmostKernel, TwistGroup, GeneralLinear, FouxeRabinovitch, CyclicOrderTwo, PartialConjugationGroup)


@pytest.mark.parametrize("d", range(2, 6))
def test_diamond_base_cases(d):
    s = RelOutSpec(diamonds(d))
    tree = decompose(s)
    assert verify_tree(s, tree).ok
    assert leaf_multiset(tree) == expected_diamond_leaves(d)
    kernels = [x for x in tree.leaves() if isinstance(x, LeftmostKernel)]
    assert all(type(x).__name__ == "PartialConjugation" for x in _gens(kernels[0].spec))


def _gens(spec):
    from raagcc.relgroup import enumerate_generators

    return [x for x in enumerate_generators(spec) if type(x).__name__ != "Inversion"]


def test_tree_base_cases(rng):
    for _ in range(10):
        g = random_tree(rng.randint(3, 12), rng)
        s = RelOutSpec(g)
        tree = decompose(s)
        assert verify_tree(s, tree).ok
        assert leaf_multiset(tree) == expected_tree_leaves(g)


def test_complete_graph_is_a_single_gl_leaf():
    tree = decompose(RelOutSpec(complete(4)))
    (leaf,) = tree.leaves()
    assert isinstance(leaf, GeneralLinear) and leaf.n == 4


def test_discrete_graph_is_out_fn():
    (leaf,) = decompose(RelOutSpec(discrete(4))).leaves()
    assert isinstance(leaf, FouxeRabinovitch) and leaf.free_rank == 4


def test_join_of_two_edges():
    g = construct("join", complete(2), complete(2))
    s = RelOutSpec(g)
    assert rank(s) == 3
    assert sum(x.contribution for x in decompose(s).leaves()) == 3


def test_leaves_are_base_cases_and_restrictions_are_cones(rng):
    graphs = [diamonds(3), path(5), star_graph(4)] + [random_graph(7, rng, 0.4) for _ in range(8)]
    for g in graphs:
        s = RelOutSpec(g)
        tree = decompose(s)
        assert all(isinstance(x, BASE) for x in tree.leaves())
        for node in iter_nodes(tree.node):
            if isinstance(node, RestrictStep) and node.phase == "cone":
                ns = node.spec
                cones = {conical(ns, v)[0] for v in ns.graph.vertices}
                assert ns.graph.vset(node.delta) in cones


def test_deterministic():
    s = RelOutSpec(diamonds(3))
    assert decompose(s).to_json() == decompose(s).to_json()


def test_complement_invariance(rng):
    for _ in range(10):
        g = random_graph(rng.randint(2, 7), rng, 0.5)
        gc = construct("complement", g)
        a, b = decompose(RelOutSpec(g)), decompose(RelOutSpec(gc))

        def sizes(t):
            return Counter(x.contribution for x in t.leaves()
                           if isinstance(x, (GeneralLinear, FouxeRabinovitch)) and x.contribution)

        assert sizes(a) == sizes(b)
        assert rank(RelOutSpec(g)) == rank(RelOutSpec(gc))


def test_star_twist_rank():
    tree = decompose(RelOutSpec(star_graph(3)))
    projects = [n for n in iter_nodes(tree.node) if isinstance(n, ProjectStep)]
    assert [p.twist_rank for p in projects] == [3]


def test_sphere_dimension():
    assert predicted_sphere_dimension(RelOutSpec(diamonds(4))) == 3
    assert predicted_sphere_dimension(RelOutSpec(path(4))) == -1
    assert predicted_sphere_dimension(RelOutSpec(star_graph(3))) == 1
    g = construct("join", path(3), path(3))
    assert predicted_sphere_dimension(RelOutSpec(g)) == rank(RelOutSpec(g)) - 1


def test_render_and_json():
    tree = decompose(RelOutSpec(random_tree(8, __import__("random").Random(1))))
    text = tree.render()
    assert "twist group" in text and "Fouxe-Rabinovitch" in text
    assert tree.to_json()["tree"]["kind"] == "restrict"


def _corpus(rng):
    graphs = [diamonds(3), diamonds(4), complete(4), discrete(3), path(5), star_graph(4)]
    graphs += [random_tree(rng.randint(3, 10), rng) for _ in range(6)]
    graphs += [random_graph(rng.randint(2, 7), rng) for _ in range(10)]
    return graphs


def test_cone_steps_restrict_to_cones(rng):
    from raagcc.relgroup import conical, equiv_classes

    for g in _corpus(rng):
        for node in iter_nodes(decompose(RelOutSpec(g)).node):
            if isinstance(node, RestrictStep) and node.phase == "cone":
                s = node.spec
                delta = frozenset(s.graph.index(x) for x in node.delta)
                cones = {conical(s, c.rep)[0] for c in equiv_classes(s)}
                assert delta in cones


def test_traced_images_match_full_saturation(rng):
    from raagcc.relgroup import enumerate_generators, image_spec, saturate, stabilized_subsets

    for g in _corpus(rng):
        for node in iter_nodes(decompose(RelOutSpec(g)).node):
            if not isinstance(node, RestrictStep):
                continue
            s = node.spec
            delta = frozenset(s.graph.index(x) for x in node.delta)
            cheap = image_spec(s, delta, stabilized_subsets(s, within=delta))
            full = image_spec(saturate(s), delta)
            assert set(enumerate_generators(cheap)) == set(enumerate_generators(full))
