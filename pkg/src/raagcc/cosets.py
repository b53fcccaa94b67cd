"""Coset complexes and coset posets of finite groups, and the short exact sequence checks."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .errors import GroupError, HypothesisViolatedError, NotStronglyDividedError
from .groups import FiniteGroup
from .homology import HomologyResult
from .posets import FinitePoset, SimplicialComplex, order_complex, reduced_homology, simplicial_join

MAX_DIMENSION = 16


@dataclass(frozen=True)
class SubgroupFamily:
    """A finite set of proper subgroups, each stored as a frozenset of element indices."""

    members: tuple

    @classmethod
    def of(cls, group: FiniteGroup, members) -> SubgroupFamily:
        out = []
        for m in members:
            m = frozenset(int(x) for x in m)
            if not group.is_subgroup(m):
                raise GroupError(f"{sorted(m)} is not a subgroup")
            if len(m) == group.order:
                raise GroupError("family members must be proper subgroups")
            if m not in out:
                out.append(m)
        return cls(tuple(out))

    @classmethod
    def from_json(cls, group: FiniteGroup, data) -> SubgroupFamily:
        """Either a list of element lists, or {"subgroups": [...]} / {"generators": [...]}."""
        if isinstance(data, dict):
            if "generators" in data:
                return cls.of(group, [group.generated(g) for g in data["generators"]])
            data = data.get("subgroups", [])
        return cls.of(group, data)

    def to_json(self) -> list:
        return [sorted(m) for m in self.members]

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def coset_cover(group: FiniteGroup, family: SubgroupFamily) -> list[tuple[int, frozenset]]:
    """All cosets gH, tagged with the index of H in the family."""
    out = []
    seen = set()
    for i, h in enumerate(family.members):
        for c in group.left_cosets(h):
            if (i, c) not in seen:
                seen.add((i, c))
                out.append((i, c))
    return out


def coset_complex(group: FiniteGroup, family: SubgroupFamily) -> SimplicialComplex:
    """Nerve of the coset cover; the facets are {gH : H in family} for each g."""
    cover = coset_cover(group, family)
    where = {}
    for k, (_, c) in enumerate(cover):
        for x in c:
            where.setdefault(x, []).append(k)
    facets = {tuple(sorted(where.get(g, []))) for g in range(group.order)}
    facets.discard(())
    return SimplicialComplex.from_facets(cover, facets)


def coset_poset(group: FiniteGroup, family: SubgroupFamily) -> FinitePoset:
    cover = coset_cover(group, family)
    return FinitePoset(cover, lambda a, b: a[1] <= b[1], validate=False)


def coset_structures(group: FiniteGroup, family: SubgroupFamily) -> tuple[SimplicialComplex, FinitePoset]:
    if not len(family):
        raise GroupError("the family must be nonempty")
    return coset_complex(group, family), coset_poset(group, family)


def cc_homology(group: FiniteGroup, family: SubgroupFamily) -> HomologyResult:
    return reduced_homology(coset_complex(group, family), MAX_DIMENSION)


def cp_homology(group: FiniteGroup, family: SubgroupFamily) -> HomologyResult:
    return reduced_homology(order_complex(coset_poset(group, family)), MAX_DIMENSION)


# --- family operations ------------------------------------------------------------


def intersection_closure(group: FiniteGroup, family: SubgroupFamily) -> SubgroupFamily:
    members = list(family.members)
    known = set(members)
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            for b in members:
                c = a & b
                if c not in known:
                    known.add(c)
                    new.append(c)
        members += new
        frontier = new
    return SubgroupFamily(tuple(sorted(known, key=lambda s: (-len(s), sorted(s)))))


def split(group: FiniteGroup, family: SubgroupFamily, normal) -> tuple[SubgroupFamily, SubgroupFamily]:
    """(H_N, H^N): members with HN != G, and members with KN = G."""
    n = group.check_normal(normal)
    low, high = [], []
    for h in family.members:
        (high if len(group.product_set(h, n)) == group.order else low).append(h)
    return SubgroupFamily(tuple(low)), SubgroupFamily(tuple(high))


def quotient_family(group: FiniteGroup, family: SubgroupFamily, normal):
    """Images in G/N of the members with HN != G; returns (G/N, family, projection)."""
    low, _ = split(group, family, normal)
    q, proj = group.quotient(normal)
    images = [frozenset(proj[x] for x in h) for h in low.members]
    return q, SubgroupFamily.of(q, images), proj


def kernel_family(group: FiniteGroup, family: SubgroupFamily, normal):
    """Intersections K ∩ N for members with KN = G, as a family of the group N."""
    n = group.check_normal(normal)
    _, high = split(group, family, n)
    sub, embed = group.subgroup_group(n)
    images = [frozenset(embed[x] for x in k & n) for k in high.members]
    return sub, SubgroupFamily.of(sub, images), embed


def family_transform(op: str, group: FiniteGroup, family: SubgroupFamily, normal=None):
    if op == "intersection_closure":
        return intersection_closure(group, family)
    if normal is None:
        raise GroupError(f"{op} needs a normal subgroup")
    if op == "split":
        return split(group, family, normal)
    if op == "quotient":
        return quotient_family(group, family, normal)[1]
    if op == "intersect":
        return kernel_family(group, family, normal)[1]
    raise GroupError(f"unknown family operation {op!r}")


def _all_intersections(members) -> set:
    out = set()
    frontier = {m for m in members}
    out |= frontier
    while frontier:
        frontier = {a & b for a in frontier for b in members} - out
        out |= frontier
    return out


def divided_predicates(group: FiniteGroup, family: SubgroupFamily, normal) -> dict:
    n = group.check_normal(normal)
    low, high = split(group, family, n)
    members = set(family.members)
    divided = True
    for h in low.members:
        hn = group.product_set(h, n)
        if hn not in members:
            divided = False
        for k in high.members:
            if hn & k not in members:
                divided = False
    strongly = all(n <= h for h in low.members) and all(
        len(group.product_set(k, n)) == group.order for k in _all_intersections(high.members)
    )
    return {"divided": divided, "strongly_divided": strongly}


# --- theorem checks ---------------------------------------------------------------


@dataclass
class SesReport:
    left: HomologyResult
    right: HomologyResult
    kernel_iso: bool
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.left == self.right and self.kernel_iso

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "homology_equal": self.left == self.right,
            "kernel_isomorphism": self.kernel_iso,
            "details": self.details,
            "ok": self.ok,
        }


def kernel_isomorphism(group: FiniteGroup, family: SubgroupFamily, normal) -> tuple[bool, list]:
    """Check nK -> n(K ∩ N) is a simplicial isomorphism CC(G, H^N) -> CC(N, H ∩ N)."""
    n = frozenset(normal)
    _, high = split(group, family, n)
    sub, kfam, embed = kernel_family(group, family, n)
    back = {v: k for k, v in embed.items()}
    left = coset_complex(group, high)
    right = coset_complex(sub, kfam)
    problems = []
    right_index = {(i, frozenset(back[x] for x in c)): k for k, (i, c) in enumerate(right.vertices)}
    vmap = {}
    for k, (i, c) in enumerate(left.vertices):
        meet = c & n
        if not meet:
            problems.append(f"coset {sorted(c)} misses N")
            continue
        target = right_index.get((i, meet))
        if target is None:
            problems.append(f"coset {sorted(c)} has no image")
            continue
        vmap[k] = target
    if len(set(vmap.values())) != len(right.vertices) or len(vmap) != len(left.vertices):
        problems.append("vertex map is not a bijection")
        return False, problems
    image = {tuple(sorted(vmap[x] for x in f)) for f in left.faces}
    if image != set(right.faces):
        problems.append("faces do not correspond")
    return not problems, problems


def verify_ses_join(group: FiniteGroup, family: SubgroupFamily, normal) -> SesReport:
    n = group.check_normal(normal)
    if not divided_predicates(group, family, n)["strongly_divided"]:
        raise NotStronglyDividedError("the family is not strongly divided by N")
    left = cc_homology(group, family)
    q, qfam, _ = quotient_family(group, family, n)
    sub, kfam, _ = kernel_family(group, family, n)
    joined = simplicial_join(coset_complex(q, qfam), coset_complex(sub, kfam))
    right = reduced_homology(joined, MAX_DIMENSION)
    iso, details = kernel_isomorphism(group, family, n)
    return SesReport(left, right, iso, details)


def generation_check(group: FiniteGroup, family: SubgroupFamily) -> dict:
    h = cc_homology(group, family)
    connected = h[0] == 0 and h[-1] == 0
    generates = group.generated(set().union(*family.members)) == group.everything
    return {"connected": connected, "generates": generates, "ok": connected == generates}


def holz_check(group: FiniteGroup, family: SubgroupFamily) -> dict:
    """CC(G,H) and CC(G,H~) and CP(G,H~) have the same reduced homology."""
    closed = intersection_closure(group, family)
    a = cc_homology(group, family)
    b = cc_homology(group, closed)
    c = cp_homology(group, closed)
    return {"cc": a.to_json(), "cc_closure": b.to_json(), "cp_closure": c.to_json(), "ok": a == b == c}


def check_multiplied_by_n(group: FiniteGroup) -> list:
    """Counterexamples to (HN ∩ K)N = HN whenever KN = G."""
    bad = []
    for n in group.normal_subgroups:
        hns = {h: group.product_set(h, n) for h in group.subgroups}
        for k in group.subgroups:
            if len(group.product_set(k, n)) != group.order:
                continue
            for h in group.subgroups:
                if group.product_set(hns[h] & k, n) != hns[h]:
                    bad.append((sorted(h), sorted(k), sorted(n)))
    return bad


def check_distinct_in_quotient(group: FiniteGroup) -> list:
    """Counterexamples to: K1 != K2 and (K1 ∩ K2)N = G imply K1 ∩ N != K2 ∩ N."""
    bad = []
    for n in group.normal_subgroups:
        for k1, k2 in itertools.combinations(group.subgroups, 2):
            if len(group.product_set(k1 & k2, n)) == group.order and k1 & n == k2 & n:
                bad.append((sorted(k1), sorted(k2), sorted(n)))
    return bad


# --- random instances ---------------------------------------------------------------


def random_family(rng: random.Random, group: FiniteGroup, size: int) -> SubgroupFamily:
    proper = [s for s in group.subgroups if len(s) < group.order]
    return SubgroupFamily.of(group, rng.sample(proper, min(size, len(proper))))


def random_strongly_divided(rng: random.Random, groups, max_low: int = 2, max_high: int = 3):
    """A random (G, family, N) with the family strongly divided by N."""
    while True:
        group = rng.choice(groups)
        normals = [n for n in group.normal_subgroups if 1 < len(n) < group.order]
        if not normals:
            continue
        n = rng.choice(normals)
        above = [h for h in group.subgroups if n <= h and len(h) < group.order]
        supplements = [k for k in group.subgroups
                       if len(k) < group.order and len(group.product_set(k, n)) == group.order]
        low = rng.sample(above, rng.randint(0, min(max_low, len(above))))
        high = []
        target = rng.randint(0, max_high)
        rng.shuffle(supplements)
        for k in supplements:
            if len(high) >= target:
                break
            trial = high + [k]
            if all(len(group.product_set(x, n)) == group.order for x in _all_intersections(trial)):
                high = trial
        if low or high:
            return group, SubgroupFamily.of(group, low + high), n


# --- detecting coset complexes -----------------------------------------------------


@dataclass
class DetectionReport:
    stabilizers: list
    vertices: int
    faces: int
    isomorphism: bool
    homology: HomologyResult
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.isomorphism

    def to_json(self) -> dict:
        return {
            "stabilizer_orders": [len(s) for s in self.stabilizers],
            "vertices": self.vertices,
            "faces": self.faces,
            "isomorphism": self.isomorphism,
            "homology": self.homology.to_json(),
            "details": self.details,
            "ok": self.ok,
        }


def check_action(group: FiniteGroup, complex_: SimplicialComplex, action) -> None:
    nv = len(complex_.vertices)
    if len(action) != group.order:
        raise HypothesisViolatedError("one permutation per group element is required")
    for p in action:
        if sorted(p) != list(range(nv)):
            raise HypothesisViolatedError("action entries must permute the vertices")
    for a in range(group.order):
        for b in range(group.order):
            ab = group.mul(a, b)
            if any(action[ab][v] != action[a][action[b][v]] for v in range(nv)):
                raise HypothesisViolatedError("the action is not a homomorphism")
    for p in action:
        for f in complex_.faces:
            if tuple(sorted(p[x] for x in f)) not in complex_.faces:
                raise HypothesisViolatedError("an element does not act simplicially")


def detect_coset_complex(group: FiniteGroup, complex_: SimplicialComplex, action, facet) -> DetectionReport:
    """Check a single facet is a strict fundamental domain and build the coset complex it predicts."""
    check_action(group, complex_, action)
    facet = tuple(sorted(facet))
    facets = set(complex_.facets())
    if facet not in facets:
        raise HypothesisViolatedError(f"{facet} is not a maximal face")
    orbit_of = {}
    for v in complex_.used_vertices():
        orbit_of[v] = frozenset(action[g][v] for g in range(group.order))
    for v in complex_.used_vertices():
        hits = [x for x in facet if x in orbit_of[v]]
        if len(hits) != 1:
            raise HypothesisViolatedError(f"the orbit of vertex {v} meets the facet {len(hits)} times")
    translates = {tuple(sorted(action[g][x] for x in facet)) for g in range(group.order)}
    if facets != translates:
        raise HypothesisViolatedError("some facet is not a translate of the fundamental domain")

    stabs = [frozenset(g for g in range(group.order) if action[g][v] == v) for v in facet]
    family = SubgroupFamily(tuple(stabs))
    cc = coset_complex(group, family)
    details = []
    vmap = {}
    for k, (i, c) in enumerate(cc.vertices):
        images = {action[g][facet[i]] for g in c}
        if len(images) != 1:
            details.append(f"coset {sorted(c)} is not mapped to a single vertex")
        vmap[k] = min(images)
    if sorted(vmap.values()) != sorted(complex_.used_vertices()):
        details.append("psi is not a bijection on vertices")
    else:
        image = {tuple(sorted(vmap[x] for x in f)) for f in cc.faces}
        if image != set(complex_.faces):
            details.append("psi does not match the faces")
    h = reduced_homology(cc, MAX_DIMENSION)
    return DetectionReport(stabs, len(cc.vertices), len(cc.faces) - 1, not details, h, details)


def closure_split_check(group: FiniteGroup, family: SubgroupFamily, normal) -> dict:
    """For a strongly divided family: the closure is divided, its H^N part is the closure
    of H^N, and its image in G/N is the closure of the quotient family."""
    n = group.check_normal(normal)
    closed = intersection_closure(group, family)
    _, high = split(group, family, n)
    _, closed_high = split(group, closed, n)
    q, qfam, _ = quotient_family(group, family, n)
    _, qclosed, _ = quotient_family(group, closed, n)
    high_ok = set(closed_high.members) == _all_intersections(high.members)
    quot_ok = set(qclosed.members) == _all_intersections(qfam.members)
    divided = divided_predicates(group, closed, n)["divided"]
    return {"closure_divided": divided, "high_part": high_ok, "quotient_part": quot_ok,
            "ok": divided and high_ok and quot_ok}
