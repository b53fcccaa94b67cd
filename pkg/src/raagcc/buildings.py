"""Finite buildings and Coxeter complexes with their group actions."""
from __future__ import annotations

import itertools

from .errors import SizeLimitError
from .groups import FiniteGroup, general_linear, symmetric
from .posets import FinitePoset, SimplicialComplex, order_complex


def _vectors(n: int, q: int) -> list[tuple]:
    return list(itertools.product(range(q), repeat=n))


def _span_with(space: frozenset, v: tuple, q: int) -> frozenset:
    return frozenset(
        tuple((s[i] + a * v[i]) % q for i in range(len(v))) for s in space for a in range(q)
    )


def subspaces(n: int, q: int) -> list[frozenset]:
    """All subspaces of F_q^n (q prime) as sets of vectors, sorted by dimension."""
    zero = frozenset({(0,) * n})
    found = {zero}
    frontier = [zero]
    vecs = _vectors(n, q)
    while frontier:
        new = []
        for s in frontier:
            for v in vecs:
                if v not in s:
                    t = _span_with(s, v, q)
                    if t not in found:
                        found.add(t)
                        new.append(t)
        frontier = new
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subspace_poset(n: int, q: int) -> FinitePoset:
    """Proper nonzero subspaces of F_q^n ordered by inclusion."""
    if not (2 <= n <= 4 and q in (2, 3)):
        raise SizeLimitError("subspace posets are limited to 2 <= n <= 4 and q in {2, 3}")
    proper = [s for s in subspaces(n, q) if 1 < len(s) < q ** n]
    return FinitePoset(proper, lambda a, b: a <= b, validate=False)


def building(n: int, q: int) -> SimplicialComplex:
    return order_complex(subspace_poset(n, q))


def _apply(m, v, q):
    return tuple(sum(m[i][j] * v[j] for j in range(len(v))) % q for i in range(len(m)))


def flag_complex_action(n: int = 3, q: int = 2):
    """GL_n(F_q) acting on its flag complex; returns (group, complex, action, standard flag)."""
    group = general_linear(n, q)
    cx = building(n, q)
    index = {s: i for i, s in enumerate(cx.vertices)}
    action = []
    for m in group.labels:
        action.append(tuple(index[frozenset(_apply(m, v, q) for v in s)] for s in cx.vertices))
    basis = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    flag = []
    space = frozenset({(0,) * n})
    for e in basis[:-1]:
        space = _span_with(space, e, q)
        flag.append(index[space])
    return group, cx, action, tuple(flag)


def coxeter_complex_action(n: int = 4):
    """S_n acting on the barycentric subdivision of the boundary of the (n-1)-simplex."""
    group = symmetric(n)
    subsets = [frozenset(c) for r in range(1, n) for c in itertools.combinations(range(n), r)]
    p = FinitePoset(subsets, lambda a, b: a <= b, validate=False)
    cx = order_complex(p)
    index = {s: i for i, s in enumerate(cx.vertices)}
    action = [tuple(index[frozenset(perm[x] for x in s)] for s in cx.vertices) for perm in group.labels]
    flag = tuple(index[frozenset(range(k))] for k in range(1, n))
    return group, cx, action, flag


def trivial_simplex_action(k: int = 2):
    """The trivial group acting on a single k-simplex."""
    group = FiniteGroup([[0]], name="1")
    cx = SimplicialComplex.from_facets(tuple(range(k + 1)), [tuple(range(k + 1))])
    return group, cx, [tuple(range(k + 1))], tuple(range(k + 1))
