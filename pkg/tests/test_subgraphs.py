import random

import pytest

from raagcc.errors import MultigraphError
from raagcc.subgraphs import (
    Multigraph,
    build_poset,
    core,
    edge_op,
    is_core_subgraph,
    poset_homology,
    random_multigraph,
    rank_of,
    rose,
    theta,
    verify_core_posets,
    x_elements,
)


def test_collapse_and_delete():
    two_cycle = Multigraph(("x", "y"), (("x", "y", "e0"), ("x", "y", "e1")))
    one = edge_op("collapse", two_cycle, "e0")
    assert len(one.vertices) == 1 and rank_of(one) == 1
    smaller = edge_op("delete", rose(3), "e0")
    assert rank_of(smaller) == 2 and smaller.vertices == ("o",)
    with pytest.raises(MultigraphError):
        edge_op("collapse", rose(2), "e0")


def test_collapse_keeps_rank(rng):
    for _ in range(20):
        g = random_multigraph(rng, rng.randint(1, 4))
        for u, v, e in g.edges:
            if u != v:
                assert rank_of(edge_op("collapse", g, e)) == rank_of(g)


def test_core():
    tail = Multigraph(("o", "t"), (("o", "o", "e0"), ("o", "o", "e1"), ("o", "t", "e2")))
    assert core(tail).edges == rose(2).edges
    labelled = Multigraph(tail.vertices, tail.edges, ("t",))
    assert core(labelled) == labelled
    assert core(core(tail)) == core(tail)


def test_rose_poset_is_a_simplex_boundary():
    for n in range(2, 6):
        x = build_poset(rose(n), "X")
        assert len(x) == 2 ** n - 2
        assert poset_homology(rose(n)).nonzero() == {n - 2: (1, ())}


def test_theta():
    x = build_poset(theta(), "X")
    c = build_poset(theta(), "C")
    assert len(x) == len(c) == 3
    assert poset_homology(theta()).nonzero() == {0: (2, ())}


def test_core_elements_are_cores():
    g = random_multigraph(random.Random(3), 3)
    x = x_elements(g)
    for s in build_poset(g, "C").elements:
        assert s in x and is_core_subgraph(g, s)


def test_rank_two_core_poset_is_discrete(rng):
    for _ in range(10):
        g = random_multigraph(rng, 2)
        assert all(len(f) <= 1 for f in __import__("raagcc.posets", fromlist=["x"]).order_complex(build_poset(g, "C")).faces)


def test_separating_edges_are_not_elements():
    g = Multigraph(("x", "y"), (("x", "x", "a"), ("x", "x", "b"), ("x", "y", "c"), ("y", "y", "d")))
    assert frozenset({"a", "b", "d"}) not in x_elements(g)


def test_core_posets_random(rng):
    for _ in range(10):
        g = random_multigraph(rng, rng.randint(2, 4))
        report = verify_core_posets(g)
        assert report.ok, report.to_json()


def test_json_round_trip():
    g = Multigraph(("x", "y"), (("x", "y", "e0"), ("x", "x", "e1")), ("y",))
    assert Multigraph.from_json(g.to_json()) == g
    with pytest.raises(MultigraphError):
        Multigraph.from_json({"vertices": ["x"], "edges": [["x", "z", "e"]]})


def test_rank_one_is_rejected():
    with pytest.raises(MultigraphError):
        verify_core_posets(rose(1))
