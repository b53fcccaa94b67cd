"""Finite posets, simplicial complexes and homological certificates."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import FaceNotFoundError, PosetError
from .homology import DEFAULT_MAX_DIMENSION, HomologyResult, reduced_homology_of_faces


class FinitePoset:
    """Elements plus a validated partial order, stored as a boolean matrix."""

    def __init__(self, elements, leq, validate: bool = True):
        self.elements = tuple(elements)
        n = len(self.elements)
        if callable(leq):
            m = np.zeros((n, n), dtype=bool)
            for i, a in enumerate(self.elements):
                for j, b in enumerate(self.elements):
                    m[i, j] = i == j or bool(leq(a, b))
        else:
            m = np.array(leq, dtype=bool).reshape(n, n)
        self.matrix = m
        if validate:
            self._validate()

    def _validate(self):
        m = self.matrix
        n = len(self.elements)
        if n == 0:
            return
        if not m.diagonal().all():
            raise PosetError("relation is not reflexive")
        if (m & m.T & ~np.eye(n, dtype=bool)).any():
            raise PosetError("relation is not antisymmetric")
        mi = m.astype(np.int64)
        if ((mi @ mi > 0) & ~m).any():
            raise PosetError("relation is not transitive")

    def __len__(self):
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return bool(self.matrix[i, j])

    def strictly_above(self, i: int) -> list[int]:
        row = self.matrix[i]
        return [j for j in np.flatnonzero(row) if j != i]

    def chains(self):
        """Every nonempty chain as an increasing tuple of indices."""
        n = len(self.elements)
        above = [sorted(int(j) for j in self.strictly_above(i)) for i in range(n)]
        out = []

        def extend(chain, candidates):
            out.append(tuple(chain))
            for j in candidates:
                nxt = [k for k in candidates if k != j and self.matrix[j, k]]
                chain.append(j)
                extend(chain, nxt)
                chain.pop()

        for i in range(n):
            extend([i], above[i])
        return out

    def same_as(self, other: FinitePoset) -> bool:
        return self.elements == other.elements and bool((self.matrix == other.matrix).all())


def antichain(k: int) -> FinitePoset:
    return FinitePoset(range(k), np.eye(k, dtype=bool))


def chain_poset(k: int) -> FinitePoset:
    return FinitePoset(range(k), lambda a, b: a <= b)


def poset_combine(op: str, p: FinitePoset, q: FinitePoset | None = None) -> FinitePoset:
    if op == "opposite":
        return FinitePoset(p.elements, p.matrix.T.copy(), validate=False)
    if q is None:
        raise PosetError(f"{op} needs two posets")
    if op == "join":
        n, m = len(p), len(q)
        mat = np.zeros((n + m, n + m), dtype=bool)
        mat[:n, :n] = p.matrix
        mat[n:, n:] = q.matrix
        mat[:n, n:] = True
        elements = [("P", x) for x in p.elements] + [("Q", y) for y in q.elements]
        return FinitePoset(elements, mat, validate=False)
    if op == "product":
        elements = list(itertools.product(range(len(p)), range(len(q))))
        mat = np.array(
            [[p.matrix[a, c] and q.matrix[b, d] for (c, d) in elements] for (a, b) in elements],
            dtype=bool,
        ).reshape(len(elements), len(elements))
        labels = [(p.elements[a], q.elements[b]) for a, b in elements]
        return FinitePoset(labels, mat, validate=False)
    raise PosetError(f"unknown poset operation {op!r}")


@dataclass(frozen=True)
class SimplicialComplex:
    """Vertices with a downward-closed face set (faces are sorted index tuples)."""

    vertices: tuple
    faces: frozenset

    @classmethod
    def from_facets(cls, vertices, facets) -> SimplicialComplex:
        faces = {()}
        for f in facets:
            f = tuple(sorted(set(f)))
            if f in faces:
                continue
            for r in range(1, len(f) + 1):
                faces.update(itertools.combinations(f, r))
        return cls(tuple(vertices), frozenset(faces))

    @classmethod
    def from_labelled_facets(cls, facets) -> SimplicialComplex:
        verts = sorted({x for f in facets for x in f}, key=repr)
        idx = {x: i for i, x in enumerate(verts)}
        return cls.from_facets(verts, [[idx[x] for x in f] for f in facets])

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_of_dim(self, d: int) -> list[tuple]:
        return sorted(f for f in self.faces if len(f) == d + 1)

    def f_vector(self) -> list[int]:
        return [len(self.faces_of_dim(d)) for d in range(self.dimension + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def facets(self) -> list[tuple]:
        fs = sorted(self.faces, key=len, reverse=True)
        out = []
        for f in fs:
            if not f:
                continue
            s = set(f)
            if not any(s < set(g) for g in out):
                out.append(f)
        return sorted(out)

    def labelled_facets(self) -> list[list]:
        return [[self.vertices[i] for i in f] for f in self.facets()]

    def is_empty(self) -> bool:
        return self.faces == frozenset({()})

    def used_vertices(self) -> set:
        return {f[0] for f in self.faces if len(f) == 1}

    def to_json(self) -> dict:
        return {"facets": [[str(x) for x in f] for f in self.labelled_facets()]}


def order_complex(p: FinitePoset) -> SimplicialComplex:
    faces = {()}
    faces.update(tuple(sorted(c)) for c in p.chains())
    return SimplicialComplex(p.elements, frozenset(faces))


def simplicial_join(k1: SimplicialComplex, k2: SimplicialComplex) -> SimplicialComplex:
    off = len(k1.vertices)
    faces = {
        f + tuple(x + off for x in g) for f in k1.faces for g in k2.faces
    }
    verts = tuple(("L", v) for v in k1.vertices) + tuple(("R", v) for v in k2.vertices)
    return SimplicialComplex(verts, frozenset(faces))


def link(k: SimplicialComplex, sigma) -> SimplicialComplex:
    sigma = tuple(sorted(sigma))
    if sigma not in k.faces:
        raise FaceNotFoundError(f"{sigma} is not a face")
    s = set(sigma)
    faces = {f for f in k.faces if not s & set(f) and tuple(sorted(s | set(f))) in k.faces}
    return SimplicialComplex(k.vertices, frozenset(faces))


def reduced_homology(k: SimplicialComplex, max_dimension: int = DEFAULT_MAX_DIMENSION) -> HomologyResult:
    by_dim: dict[int, list] = {}
    for f in k.faces:
        if f:
            by_dim.setdefault(len(f) - 1, []).append(f)
    for d in by_dim:
        by_dim[d].sort()
    return reduced_homology_of_faces(by_dim, max_dimension)


@dataclass
class Certificate:
    ok: bool
    mode: str
    details: list

    def to_json(self) -> dict:
        return {"ok": self.ok, "mode": self.mode, "details": self.details,
                "semantics": "consistent with (homological certificate)"}


def is_homologically_spherical(h: HomologyResult, d: int) -> bool:
    """Reduced homology concentrated in degree d and torsion-free there."""
    return all(deg == d and not tors for deg, (_, tors) in h.nonzero().items())


def certify(k: SimplicialComplex, mode: str, d: int | None = None,
            max_dimension: int = DEFAULT_MAX_DIMENSION) -> Certificate:
    """``mode`` is ``"spherical"`` (needs ``d``) or ``"cm"``."""
    if mode == "spherical":
        if d is None:
            raise ValueError("spherical certificate needs a degree")
        h = reduced_homology(k, max_dimension)
        ok = is_homologically_spherical(h, d)
        return Certificate(ok, f"spherical({d})", [] if ok else [f"homology {h.nonzero()}"])
    if mode == "cm":
        dim = k.dimension
        details = []
        h = reduced_homology(k, max_dimension)
        if not is_homologically_spherical(h, dim):
            details.append(f"complex: homology {h.nonzero()} not concentrated in {dim}")
        cache = {}
        for sigma in sorted(k.faces, key=lambda f: (len(f), f)):
            if not sigma:
                continue
            lk = link(k, sigma)
            target = dim - len(sigma)
            key = (lk.faces, target)
            if key not in cache:
                cache[key] = is_homologically_spherical(reduced_homology(lk, max_dimension), target)
            if not cache[key]:
                details.append(f"link of {sigma} not spherical({target})")
        return Certificate(not details, "cm", details)
    raise ValueError(f"unknown certificate mode {mode!r}")
