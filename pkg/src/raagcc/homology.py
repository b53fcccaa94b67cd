"""Integral reduced homology via Smith normal form."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import SizeLimitError

DEFAULT_MAX_DIMENSION = 6


@dataclass(frozen=True)
class HomologyResult:
    betti: dict
    torsion: dict = field(default_factory=dict)

    def __getitem__(self, d):
        return self.betti.get(d, 0)

    def torsion_in(self, d) -> tuple:
        return tuple(self.torsion.get(d, ()))

    def nonzero(self) -> dict:
        out = {}
        for d in sorted(set(self.betti) | set(self.torsion)):
            if self.betti.get(d, 0) or self.torsion.get(d):
                out[d] = (self.betti.get(d, 0), tuple(self.torsion.get(d, ())))
        return out

    def vanishes(self) -> bool:
        return not self.nonzero()

    def __eq__(self, other):
        return isinstance(other, HomologyResult) and self.nonzero() == other.nonzero()

    def __hash__(self):
        return hash(tuple(self.nonzero().items()))

    def to_json(self) -> dict:
        return {
            str(d): {"betti": self.betti.get(d, 0), "torsion": list(self.torsion.get(d, ()))}
            for d in sorted(set(self.betti) | set(self.torsion))
        }


def _dense_invariants(rows: list[list[int]]) -> list[int]:
    """Nonzero invariant factors of a small dense integer matrix."""
    a = [r[:] for r in rows if any(r)]
    if not a:
        return []
    m, n = len(a), len(a[0])
    out = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry by absolute value, row-major tie break
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for r in a:
            r[t], r[j] = r[j], r[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for r in a:
                            r[j] -= q * r[t]
                    if a[t][j]:
                        done = False
            if done:
                # pivot must divide the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                for j in range(t, n):
                    a[t][j] += a[i][j]
                continue
            # move the smallest entry of row t / column t into the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, m) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, n) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for r in a:
                r[t], r[j] = r[j], r[t]
        out.append(abs(a[t][t]))
        t += 1
    return out


def invariant_factors(columns: list[dict], nrows: int) -> list[int]:
    """Nonzero invariant factors of a sparse integer matrix given by columns.

    Unit pivots are eliminated sparsely first; whatever is left over is
    handed to the dense Smith normal form.
    """
    rows: dict[int, dict[int, int]] = {}
    for c, col in enumerate(columns):
        for r, x in col.items():
            if x:
                rows.setdefault(r, {})[c] = x
    cols: dict[int, dict[int, int]] = {c: dict(col) for c, col in enumerate(columns) if col}
    factors = []
    progress = True
    while progress:
        progress = False
        for c in sorted(cols):
            col = cols.get(c)
            if not col:
                cols.pop(c, None)
                continue
            pivot_row = None
            for r, x in col.items():
                if x in (1, -1) and (pivot_row is None or len(rows[r]) < len(rows[pivot_row])
                                     or (len(rows[r]) == len(rows[pivot_row]) and r < pivot_row)):
                    pivot_row = r
            if pivot_row is None:
                continue
            progress = True
            prow = rows.pop(pivot_row)
            pval = prow[c]
            # eliminate column c from every other row with row operations
            for r, x in list(col.items()):
                if r == pivot_row:
                    continue
                q = x * pval  # pval = +-1 so x / pval = x * pval
                row = rows[r]
                for cc, y in prow.items():
                    nv = row.get(cc, 0) - q * y
                    if nv:
                        row[cc] = nv
                        cols[cc][r] = nv
                    else:
                        row.pop(cc, None)
                        cols[cc].pop(r, None)
                if not row:
                    del rows[r]
            # the pivot row is now cleared by column operations touching only it
            for cc in prow:
                cols[cc].pop(pivot_row, None)
            del cols[c]
            factors.append(1)
    rest_cols = sorted(c for c, col in cols.items() if col)
    rest_rows = sorted(rows)
    if rest_cols and rest_rows:
        ci = {c: k for k, c in enumerate(rest_cols)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for k, r in enumerate(rest_rows):
            for c, x in rows[r].items():
                dense[k][ci[c]] = x
        factors += _dense_invariants(dense)
    return factors


def reduced_homology_of_faces(faces_by_dim: dict, max_dimension: int = DEFAULT_MAX_DIMENSION) -> HomologyResult:
    """faces_by_dim maps d >= 0 to a list of sorted vertex tuples."""
    top = max((d for d, fs in faces_by_dim.items() if fs), default=-1)
    if top > max_dimension:
        raise SizeLimitError(f"complex has dimension {top}, limit is {max_dimension}")
    sizes = {-1: 1}
    index = {}
    for d in range(0, top + 1):
        fs = faces_by_dim.get(d, [])
        sizes[d] = len(fs)
        index[d] = {f: i for i, f in enumerate(fs)}
    ranks = {}
    tors = {}
    for d in range(0, top + 1):
        if d == 0:
            columns = [{0: 1} for _ in faces_by_dim[0]]
        else:
            lower = index[d - 1]
            columns = []
            for f in faces_by_dim[d]:
                col = {}
                for k in range(len(f)):
                    col[lower[f[:k] + f[k + 1:]]] = -1 if k % 2 else 1
                columns.append(col)
        fac = invariant_factors(columns, sizes[d - 1])
        ranks[d] = len(fac)
        tors[d - 1] = tuple(sorted(x for x in fac if x > 1))
    betti = {}
    torsion = {}
    for d in range(-1, top + 1):
        b = sizes[d] - ranks.get(d, 0) - ranks.get(d + 1, 0)
        betti[d] = b
        if tors.get(d):
            torsion[d] = tors[d]
    return HomologyResult(betti, torsion)
