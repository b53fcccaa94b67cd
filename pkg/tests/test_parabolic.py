import itertools

import pytest

from raagcc.corpus import complete, diamonds, discrete, path, random_tree, tree_data
from raagcc.errors import ClassNotSymmetricError, PickError
from raagcc.graphs import Graph
from raagcc.parabolic import (
    aut0,
    maximal_parabolics,
    parabolic_from_picks,
    properness_witness,
    rank,
)
from raagcc.relgroup import RelOutSpec, class_of, equiv_classes


@pytest.mark.parametrize("d", range(2, 7))
def test_diamond_rank_and_parabolics(d):
    g = diamonds(d)
    s = RelOutSpec(g)
    assert rank(s) == d
    assert sorted(g.names(p.delta) for p in maximal_parabolics(s)) == sorted(
        [f"a{i}"] for i in range(1, d + 1)
    )


def test_tree_rank_and_parabolics(rng):
    for _ in range(15):
        g = random_tree(rng.randint(3, 12), rng)
        s = RelOutSpec(g)
        leaves, zs, hanging = tree_data(g)
        assert rank(s) == len(leaves) - len(zs)
        want = set()
        for z in zs:
            ls = sorted(hanging[z])
            rest = (g.adjacency[z] - leaves) | {z}
            want |= {frozenset(ls[:i]) | rest for i in range(1, len(ls))}
        assert {p.delta for p in maximal_parabolics(s)} == want


@pytest.mark.parametrize("n", range(1, 6))
def test_gl_and_out_fn_ranks(n):
    assert rank(RelOutSpec(complete(n))) == n - 1
    assert rank(RelOutSpec(discrete(n))) == n - 1


def test_rank_zero_has_no_parabolics():
    s = RelOutSpec(path(4))
    assert rank(s) == 0 or maximal_parabolics(s)
    p = RelOutSpec(Graph.from_edges(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")]))
    if rank(p) == 0:
        assert maximal_parabolics(p) == []


def test_parabolic_count_equals_rank(rng):
    for g in [diamonds(3), complete(4), discrete(3)] + [random_tree(9, rng) for _ in range(5)]:
        s = RelOutSpec(g)
        assert len(maximal_parabolics(s)) == rank(s)


def test_properness_witness(rng):
    for g in [diamonds(3), complete(3), discrete(4), random_tree(10, rng)]:
        s = RelOutSpec(g)
        for p in maximal_parabolics(s):
            assert properness_witness(s, p)
            assert s.stabilized | {p.delta} <= p.spec.stabilized


def test_picks():
    g = diamonds(3)
    s = RelOutSpec(g)
    assert rank(parabolic_from_picks(s, [(g.index("a1"), 1)])) == 2
    assert parabolic_from_picks(s, []) == s
    # naming the class by its other member is the same pick
    with pytest.raises(PickError):
        parabolic_from_picks(s, [(g.index("a1"), 1), (g.index("b1"), 1)])
    with pytest.raises(PickError):
        parabolic_from_picks(s, [(g.index(f"a{i}"), 1) for i in range(1, 4)])
    with pytest.raises(PickError):
        parabolic_from_picks(s, [(g.index("a1"), 2)])


def test_pick_splits_class_into_j_plus_one():
    g = discrete(5)
    s = RelOutSpec(g)
    for picks in ([(0, 1)], [(0, 2)], [(0, 1), (0, 3)], [(0, 1), (0, 2), (0, 4)]):
        sub = parabolic_from_picks(s, picks)
        assert len(equiv_classes(sub)) == len(picks) + 1
        assert rank(sub) == rank(s) - len(picks)


def test_rank_law_for_every_pick_set():
    g = diamonds(4)
    s = RelOutSpec(g)
    r = rank(s)
    picks = [(p.class_rep, p.j) for p in maximal_parabolics(s)]
    for m in range(1, r):
        for chosen in itertools.combinations(picks, r - m):
            assert rank(parabolic_from_picks(s, chosen)) == m


def test_aut0():
    assert aut0(RelOutSpec(complete(4))).coxeter_rank == 3
    assert aut0(RelOutSpec(discrete(4))).class_sizes == (4,)
    d = aut0(RelOutSpec(diamonds(3)))
    assert d.coxeter_rank == 3 and sorted(d.class_sizes).count(2) == 3


def test_aut0_rejects_asymmetric_classes():
    # a relative family can join vertices that no graph automorphism swaps
    g = Graph.from_edges(["a", "b", "c"], [("a", "b")])
    s = RelOutSpec(g, trivial=[g.vset(["c"])])
    # with this family a and b are not symmetric to c; the classes stay symmetric
    for cls in equiv_classes(s):
        assert len(cls.members) <= 2
    assert aut0(s).coxeter_rank == rank(s)
    assert class_of(s, 0).members == {0, 1}
    assert ClassNotSymmetricError.__mro__[1].__name__ == "SpecError"
