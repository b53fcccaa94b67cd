"""Finite groups given by Cayley tables."""
from __future__ import annotations

import functools
import itertools

import numpy as np

from .errors import GroupError, NotNormalError, SizeLimitError

MAX_ORDER = 1000
MAX_SUBGROUP_ENUMERATION = 200


class FiniteGroup:
    """Elements 0..n-1 with a multiplication table; ``labels`` are optional names."""

    def __init__(self, table, labels=None, validate: bool = True, name: str = ""):
        t = np.asarray(table, dtype=np.int64)
        n = len(t)
        if n == 0 or t.shape != (n, n):
            raise GroupError("table must be a nonempty square array")
        if n > MAX_ORDER:
            raise SizeLimitError(f"group order {n} exceeds {MAX_ORDER}")
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        self.table = t
        self.order = n
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.name = name
        ident = [e for e in range(n) if (t[e] == np.arange(n)).all() and (t[:, e] == np.arange(n)).all()]
        if not ident:
            raise GroupError("no identity element")
        self.identity = ident[0]
        inv = np.full(n, -1)
        for a in range(n):
            hits = np.flatnonzero(t[a] == self.identity)
            if len(hits) != 1 or t[hits[0], a] != self.identity:
                raise GroupError("an element has no two-sided inverse")
            inv[a] = hits[0]
        self.inverse = inv
        if validate and n <= MAX_SUBGROUP_ENUMERATION:
            for row in t:
                if len(set(row.tolist())) != n:
                    raise GroupError("table is not a Latin square")
            left = t[t[:, :, None], np.arange(n)[None, None, :]]  # (ab)c
            right = t[np.arange(n)[:, None, None], t[None, :, :]]  # a(bc)
            if not (left == right).all():
                raise GroupError("multiplication is not associative")

    def __repr__(self):
        return f"FiniteGroup({self.name or self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    @property
    def everything(self) -> frozenset:
        return frozenset(range(self.order))

    @property
    def trivial(self) -> frozenset:
        return frozenset({self.identity})

    # --- constructors ---------------------------------------------------------

    @classmethod
    def from_generators(cls, gens, mul, name: str = "") -> FiniteGroup:
        """Close hashable generators under ``mul``."""
        gens = list(gens)
        if not gens:
            raise GroupError("need at least one generator")
        elements = list(dict.fromkeys(gens))
        index = {x: i for i, x in enumerate(elements)}
        frontier = list(elements)
        while frontier:
            new = []
            for x in frontier:
                for gen in gens:
                    y = mul(x, gen)
                    if y not in index:
                        if len(elements) >= MAX_ORDER:
                            raise SizeLimitError(f"group order exceeds {MAX_ORDER}")
                        index[y] = len(elements)
                        elements.append(y)
                        new.append(y)
            frontier = new
        table = [[index[mul(a, b)] for b in elements] for a in elements]
        return cls(table, elements, validate=False, name=name)

    @classmethod
    def from_permutations(cls, perms, name: str = "") -> FiniteGroup:
        perms = [tuple(int(x) for x in p) for p in perms]
        if not perms or len({len(p) for p in perms}) != 1:
            raise GroupError("permutations must be nonempty and of equal degree")
        for p in perms:
            if sorted(p) != list(range(len(p))):
                raise GroupError(f"{p} is not a permutation")
        deg = len(perms[0])
        ident = tuple(range(deg))
        return cls.from_generators([ident] + perms, compose, name=name)

    @classmethod
    def from_json(cls, data: dict) -> FiniteGroup:
        if "table" in data:
            g = cls(data["table"])
            if "order" in data and data["order"] != g.order:
                raise GroupError("order does not match the table")
            return g
        if "permutations" in data:
            return cls.from_permutations(data["permutations"])
        raise GroupError("group JSON needs 'table' or 'permutations'")

    def to_json(self) -> dict:
        return {"order": self.order, "table": self.table.tolist()}

    # --- subgroups ------------------------------------------------------------

    def product_set(self, a, b) -> frozenset:
        t = self.table
        return frozenset(int(t[x, y]) for x in a for y in b)

    def generated(self, gens) -> frozenset:
        out = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for s in gens:
                    y = int(self.table[x, s])
                    if y not in out:
                        out.add(y)
                        new.append(y)
            frontier = new
        return frozenset(out)

    def is_subgroup(self, s) -> bool:
        s = frozenset(s)
        if self.identity not in s:
            return False
        return all(int(self.table[a, b]) in s for a in s for b in s)

    def is_normal(self, n) -> bool:
        n = frozenset(n)
        return all(
            int(self.table[self.table[g, x], self.inverse[g]]) in n for g in range(self.order) for x in n
        )

    def check_normal(self, n) -> frozenset:
        n = frozenset(n)
        if not self.is_subgroup(n) or not self.is_normal(n):
            raise NotNormalError("not a normal subgroup")
        return n

    @functools.cached_property
    def subgroups(self) -> tuple:
        """All subgroups, sorted by (order, sorted elements)."""
        if self.order > MAX_SUBGROUP_ENUMERATION:
            raise SizeLimitError(f"subgroup enumeration capped at order {MAX_SUBGROUP_ENUMERATION}")
        cyclic = {self.generated([g]) for g in range(self.order)}
        found = set(cyclic)
        frontier = set(cyclic)
        while frontier:
            new = set()
            for h in frontier:
                for c in cyclic:
                    if c <= h:
                        continue
                    j = self.generated(h | c)
                    if j not in found:
                        new.add(j)
            found |= new
            frontier = new
        return tuple(sorted(found, key=lambda s: (len(s), sorted(s))))

    @functools.cached_property
    def normal_subgroups(self) -> tuple:
        return tuple(s for s in self.subgroups if self.is_normal(s))

    def left_cosets(self, h) -> list[frozenset]:
        seen = set()
        out = []
        for g in range(self.order):
            if g in seen:
                continue
            c = frozenset(int(self.table[g, x]) for x in h)
            seen |= c
            out.append(c)
        return out

    def subgroup_group(self, s) -> tuple[FiniteGroup, dict]:
        """The subgroup ``s`` as a group in its own right, with the embedding map."""
        elems = sorted(s)
        idx = {x: i for i, x in enumerate(elems)}
        table = [[idx[int(self.table[a, b])] for b in elems] for a in elems]
        return FiniteGroup(table, [self.labels[x] for x in elems], validate=False), idx

    def quotient(self, n) -> tuple[FiniteGroup, dict]:
        """G/N as a coset table, with the projection element -> coset index."""
        n = self.check_normal(n)
        cosets = self.left_cosets(n)
        proj = {}
        for i, c in enumerate(cosets):
            for x in c:
                proj[x] = i
        reps = [min(c) for c in cosets]
        table = [[proj[int(self.table[a, b])] for b in reps] for a in reps]
        return FiniteGroup(table, [tuple(sorted(c)) for c in cosets], validate=False), proj


def compose(p, q):
    """(p * q)(x) = p(q(x))."""
    return tuple(p[x] for x in q)


def direct_product(g: FiniteGroup, h: FiniteGroup, name: str = "") -> FiniteGroup:
    pairs = list(itertools.product(range(g.order), range(h.order)))
    idx = {p: i for i, p in enumerate(pairs)}
    table = [[idx[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs]
    return FiniteGroup(table, pairs, validate=False, name=name or f"{g.name}x{h.name}")


# --- catalogue ------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], name=f"Z{n}", validate=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n."""
    r = tuple((i + 1) % n for i in range(n))
    s = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([r, s], name=f"D{n}")


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return FiniteGroup([[0]], name="S1")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return FiniteGroup.from_permutations(gens, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    gens = []
    for k in range(2, n):
        p = list(range(n))
        p[0], p[1], p[k] = p[1], p[k], p[0]
        gens.append(tuple(p))
    return FiniteGroup.from_permutations(gens or [tuple(range(n))], name=f"A{n}")


def _quat_mul(a, b):
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return (
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def quaternion() -> FiniteGroup:
    return FiniteGroup.from_generators([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], _quat_mul, name="Q8")


def _mat_mul(p):
    def mul(a, b):
        k = len(a)
        return tuple(
            tuple(sum(a[i][t] * b[t][j] for t in range(k)) % p for j in range(k)) for i in range(k)
        )
    return mul


def matrix_group(gens, p: int, name: str = "") -> FiniteGroup:
    k = len(gens[0])
    ident = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    gens = [tuple(tuple(int(x) % p for x in row) for row in m) for m in gens]
    return FiniteGroup.from_generators([ident] + gens, _mat_mul(p), name=name)


def general_linear(k: int, p: int) -> FiniteGroup:
    gens = []
    for i in range(k):
        for j in range(k):
            if i != j:
                m = [[int(a == b) for b in range(k)] for a in range(k)]
                m[i][j] = 1
                gens.append(m)
    for a in range(2, p):
        m = [[int(x == y) for y in range(k)] for x in range(k)]
        m[0][0] = a
        gens.append(m)
    return matrix_group(gens, p, name=f"GL({k},{p})")


def special_linear(k: int, p: int) -> FiniteGroup:
    gens = []
    for i in range(k):
        for j in range(k):
            if i != j:
                m = [[int(a == b) for b in range(k)] for a in range(k)]
                m[i][j] = 1
                gens.append(m)
    return matrix_group(gens, p, name=f"SL({k},{p})")


def dicyclic(n: int) -> FiniteGroup:
    """Dic_n of order 4n: <a, x | a^{2n}=1, x^2=a^n, x a x^-1 = a^-1>."""
    m = 2 * n

    def mul(p, q):
        (i, s), (j, t) = p, q
        if s == 0:
            return ((i + j) % m, t)
        if t == 0:
            return ((i - j) % m, 1)
        return ((i - j + n) % m, 0)

    return FiniteGroup.from_generators([(0, 0), (1, 0), (0, 1)], mul, name=f"Dic{n}")


def small_groups(max_order: int = 24) -> list[FiniteGroup]:
    """A built-in table of groups of order at most ``max_order``."""
    cands = []
    for n in range(1, 25):
        cands.append(lambda n=n: cyclic(n))
    for n in range(3, 13):
        cands.append(lambda n=n: dihedral(n))
    cands += [
        lambda: symmetric(3),
        lambda: symmetric(4),
        lambda: alternating(4),
        lambda: quaternion(),
        lambda: dicyclic(3),
        lambda: dicyclic(5),
        lambda: dicyclic(6),
        lambda: special_linear(2, 3),
        lambda: direct_product(cyclic(2), cyclic(2)),
        lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        lambda: direct_product(cyclic(4), cyclic(2)),
        lambda: direct_product(cyclic(3), cyclic(3)),
        lambda: direct_product(cyclic(2), symmetric(3)),
        lambda: direct_product(cyclic(3), symmetric(3)),
        lambda: direct_product(cyclic(2), alternating(4)),
        lambda: direct_product(cyclic(2), quaternion()),
        lambda: direct_product(cyclic(4), cyclic(4)),
        lambda: direct_product(cyclic(2), dihedral(4)),
    ]
    out = []
    for make in cands:
        g = make()
        if g.order <= max_order:
            out.append(g)
    return out


def medium_groups() -> list[FiniteGroup]:
    """Groups up to order 48 used for randomized checks."""
    return small_groups(24) + [
        direct_product(cyclic(2), symmetric(4), name="Z2xS4"),
        general_linear(2, 3),
        direct_product(cyclic(2), special_linear(2, 3), name="Z2xSL(2,3)"),
        direct_product(symmetric(3), symmetric(3), name="S3xS3"),
        dihedral(24),
        direct_product(cyclic(4), alternating(4), name="Z4xA4"),
    ]


def group_example(name: str) -> FiniteGroup:
    parts = name.lower().split(":")
    kind = parts[0]
    try:
        if kind in ("z", "cyclic"):
            return cyclic(int(parts[1]))
        if kind in ("d", "dihedral"):
            return dihedral(int(parts[1]))
        if kind in ("s", "sym", "symmetric"):
            return symmetric(int(parts[1]))
        if kind in ("a", "alt", "alternating"):
            return alternating(int(parts[1]))
        if kind == "q8":
            return quaternion()
        if kind == "gl":
            return general_linear(int(parts[1]), int(parts[2]))
        if kind == "sl":
            return special_linear(int(parts[1]), int(parts[2]))
    except (IndexError, ValueError):
        pass
    raise GroupError(f"unknown group example {name!r}")
