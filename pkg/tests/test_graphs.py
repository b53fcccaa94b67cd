import itertools

import pytest

from raagcc.corpus import complete, discrete, path, star_graph
from raagcc.errors import InvalidGraphError, InvalidVertexError
from raagcc.graphs import (
    Graph,
    center,
    complement,
    components_outside_star,
    construct,
    isolated,
    link,
    neighborhoods,
    standard_leq,
    star,
)


def abc():
    return Graph.from_edges(["a", "b", "c"], [("a", "b"), ("b", "c")])


def test_link_and_star_on_three_path():
    g = abc()
    lk, st = neighborhoods(g, g.index("b"))
    assert g.names(lk) == ["a", "c"]
    assert g.names(st) == ["a", "b", "c"]


def test_link_and_star_on_triangle():
    g = complete(3)
    for v in g.vertices:
        assert link(g, v) == frozenset(g.vertices) - {v}
        assert star(g, v) == frozenset(g.vertices)


def test_isolated_vertex_link_is_empty():
    g = discrete(2)
    assert link(g, 0) == frozenset()
    assert star(g, 0) == {0}


def test_standard_order_on_three_path():
    g = abc()
    a, b = g.index("a"), g.index("b")
    assert standard_leq(g, a, b)
    assert not standard_leq(g, b, a)


@pytest.mark.parametrize("g", [complete(4), discrete(4)])
def test_complete_and_discrete_are_one_class(g):
    assert all(standard_leq(g, v, w) for v in g.vertices for w in g.vertices)


def test_components_outside_star():
    assert components_outside_star(abc(), 1) == []
    g = path(5)
    assert [g.names(c) for c in components_outside_star(g, 2)] == [["p0"], ["p4"]]
    s = star_graph(3)
    assert components_outside_star(s, s.index("z")) == []


def test_constructions():
    assert complement(complete(4)).edges() == discrete(4).edges() == []
    k2 = construct("join", Graph.from_edges(["p"], []), Graph.from_edges(["q"], []))
    assert k2.n == 2 and k2.adjacent(0, 1)
    g = path(5)
    assert complement(complement(g)) == g


def test_clashing_labels_are_renamed():
    g = construct("disjoint_union", path(2), path(2))
    assert len(set(g.labels)) == 4


def test_center_and_isolated():
    assert center(star_graph(3)) == {0}
    assert isolated(discrete(3)) == {0, 1, 2}
    assert center(path(4)) == frozenset()


def test_invalid_inputs():
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(["a", "a"], [])
    with pytest.raises(InvalidGraphError):
        Graph.from_edges(["a"], [("a", "a")])
    with pytest.raises(InvalidVertexError):
        abc().index("zz")
    with pytest.raises(InvalidGraphError):
        Graph.from_json({"edges": []})


def test_json_round_trip():
    g = path(4)
    assert Graph.from_json(g.to_json()) == g


def test_standard_order_is_a_preorder_exhaustively():
    # every graph on up to 5 vertices; the property test covers larger ones
    from conftest import graph_from_bits

    for n in range(1, 6):
        for bits in range(2 ** (n * (n - 1) // 2)):
            g = graph_from_bits(n, bits)
            leq = [[standard_leq(g, v, w) for w in g.vertices] for v in g.vertices]
            for u, v, w in itertools.product(g.vertices, repeat=3):
                assert leq[u][u]
                if leq[u][v] and leq[v][w]:
                    assert leq[u][w]
