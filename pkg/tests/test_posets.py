import pytest

from raagcc.errors import FaceNotFoundError, PosetError, SizeLimitError
from raagcc.homology import invariant_factors, _dense_invariants
from raagcc.posets import (
    FinitePoset,
    SimplicialComplex,
    antichain,
    certify,
    chain_poset,
    link,
    order_complex,
    poset_combine,
    reduced_homology,
    simplicial_join,
)


def boundary(n):
    """Boundary of the (n-1)-simplex on n vertices."""
    import itertools

    return SimplicialComplex.from_facets(range(n), itertools.combinations(range(n), n - 1))


def points(k):
    return SimplicialComplex.from_facets(range(k), [(i,) for i in range(k)])


EMPTY = SimplicialComplex((), frozenset({()}))


def test_chain_gives_a_simplex():
    k = order_complex(chain_poset(4))
    assert k.facets() == [(0, 1, 2, 3)]
    assert reduced_homology(k).vanishes()


def test_antichain_gives_points():
    k = order_complex(antichain(3))
    assert k.f_vector() == [3]
    assert reduced_homology(k).nonzero() == {0: (2, ())}


def test_face_poset_of_triangle_boundary():
    faces = [frozenset(s) for s in ({0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2})]
    p = FinitePoset(faces, lambda a, b: a <= b)
    assert reduced_homology(order_complex(p)).nonzero() == {1: (1, ())}


def test_join_of_two_antichains_is_a_circle():
    p = poset_combine("join", antichain(2), antichain(2))
    assert reduced_homology(order_complex(p)).nonzero() == {1: (1, ())}


def test_opposite():
    p = FinitePoset(range(1, 7), lambda a, b: b % a == 0)
    op = poset_combine("opposite", p)
    assert poset_combine("opposite", op).same_as(p)
    assert order_complex(op).faces == order_complex(p).faces


def test_product():
    p = poset_combine("product", chain_poset(2), chain_poset(2))
    assert len(p) == 4
    assert reduced_homology(order_complex(p)).vanishes()


def test_validation():
    with pytest.raises(PosetError):
        FinitePoset([0, 1], [[True, True], [True, True]])
    with pytest.raises(PosetError):
        FinitePoset([0, 1, 2], [[1, 1, 0], [0, 1, 1], [0, 0, 1]])
    with pytest.raises(PosetError):
        FinitePoset([0], [[False]])
    with pytest.raises(PosetError):
        poset_combine("join", antichain(1))


def test_homology_basics():
    assert reduced_homology(boundary(3)).nonzero() == {1: (1, ())}
    assert reduced_homology(points(1)).vanishes()
    assert reduced_homology(EMPTY).nonzero() == {-1: (1, ())}


def test_torsion_in_projective_plane():
    rp2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
           (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    h = reduced_homology(SimplicialComplex.from_facets(range(6), rp2))
    assert h.nonzero() == {1: (0, (2,))}


def test_dense_smith_form():
    assert _dense_invariants([[2, 4], [6, 8]]) == [2, 4]
    assert sorted(_dense_invariants([[2, 0], [0, 3]])) == [1, 6]
    assert invariant_factors([{0: 2}, {1: 3}], 2) in ([1, 6], [6, 1])


def test_joins_and_links():
    assert simplicial_join(boundary(3), EMPTY).f_vector() == boundary(3).f_vector()
    k = simplicial_join(points(2), points(3))
    assert k.f_vector() == [5, 6]
    assert reduced_homology(k).nonzero() == {1: (2, ())}
    lk = link(boundary(4), (0,))
    assert lk.facets() == [(1, 2), (1, 3), (2, 3)]
    with pytest.raises(FaceNotFoundError):
        link(boundary(3), (0, 1, 2))


def test_certificates():
    for n in range(2, 6):
        assert certify(boundary(n), "spherical", n - 2).ok
        assert certify(boundary(n), "cm").ok
    k = simplicial_join(points(2), points(3))
    assert certify(k, "spherical", 1).ok
    assert not certify(points(1).__class__.from_facets(range(3), [(0, 1), (2,)]), "cm").ok
    assert certify(EMPTY, "spherical", -1).ok


def test_dimension_cap():
    with pytest.raises(SizeLimitError):
        reduced_homology(boundary(10), max_dimension=4)
