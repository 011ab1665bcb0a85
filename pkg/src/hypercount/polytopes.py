"""Exact rational polytopes in low dimension.

Convex hulls come from an incremental beneath-beyond construction whose
facets are hyperplanes together with every processed point lying on them,
so non-simplicial facets need no special handling.  Volumes use a pulling
triangulation; mixed volumes use inclusion-exclusion over Minkowski sums.

Two independent hull paths are kept for cross-checking:
``vertices_bruteforce`` (facet enumeration over k-subsets) and
``jarvis_march`` (planar gift wrapping).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .lp import feasible, primitive

Vec = tuple[Fraction, ...]


def as_vec(v: Iterable) -> Vec:
    return tuple(Fraction(x) for x in v)


# ------------------------------------------------------------ linear algebra

def _rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    return len(_echelon(vectors)[1])


def _echelon(vectors):
    """Row echelon form; returns (rows, pivot columns)."""
    rows = [[Fraction(x) for x in v] for v in vectors]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _idot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def _normal(points: Sequence[Vec]) -> tuple[int, ...]:
    """Normal of the hyperplane through k affinely independent points in Q^k."""
    base = points[0]
    diffs = [_sub(p, base) for p in points[1:]]
    k = len(base)
    # cofactor expansion: n_j = (-1)^j det(diffs without column j)
    n = []
    for j in range(k):
        minor = [[row[c] for c in range(k) if c != j] for row in diffs]
        n.append((-1) ** j * _det(minor) if minor else Fraction(1))
    return primitive(n)


def affine_frame(points: Sequence[Vec]) -> tuple[int, list[int]]:
    """Affine dimension of ``points`` and coordinates that parametrise the span."""
    if len(points) <= 1:
        return 0, []
    diffs = [_sub(p, points[0]) for p in points[1:]]
    _, pivots = _echelon(diffs)
    return len(pivots), pivots


def _independent_subset(points: Sequence[Vec], idx: Sequence[int], size: int) -> list[int]:
    """Greedily pick ``size`` affinely independent indices from ``idx``."""
    chosen = [idx[0]]
    diffs: list[Vec] = []
    for i in idx[1:]:
        if len(chosen) == size:
            break
        d = _sub(points[i], points[chosen[0]])
        if _rank(diffs + [d]) > len(diffs):
            diffs.append(d)
            chosen.append(i)
    return chosen


# ------------------------------------------------------------- hull kernel

@dataclass
class _Facet:
    normal: tuple[int, ...]
    offset: Fraction
    members: frozenset[int]


def _integral(pts: Sequence[Vec]) -> list[tuple[int, ...]]:
    """Clear denominators; hull combinatorics are scale invariant."""
    den = 1
    for p in pts:
        for x in p:
            den = math.lcm(den, Fraction(x).denominator)
    return [tuple(int(x * den) for x in p) for p in pts]


def _full_dim_hull(pts: Sequence[Vec]) -> list[_Facet]:
    """Facets of the hull of full-dimensional points in Q^k, k >= 2.

    Offsets refer to the integer rescaling of ``pts``.
    """
    pts = _integral(pts)
    k = len(pts[0])
    simplex = _independent_subset(pts, list(range(len(pts))), k + 1)
    assert len(simplex) == k + 1, "points are not full-dimensional"
    # (k+1) times the centroid keeps the interior test in integers
    centre = tuple(sum(pts[i][j] for i in simplex) for j in range(k))
    processed: list[int] = list(simplex)

    def make(members_hint: Sequence[int]) -> tuple[tuple[int, ...], Fraction]:
        basis = _independent_subset(pts, list(members_hint), k)
        n = _normal([pts[i] for i in basis])
        b = _idot(n, pts[basis[0]])
        if _idot(n, centre) > (k + 1) * b:
            n = tuple(-x for x in n)
            b = -b
        return n, b

    def on(n, b) -> frozenset[int]:
        return frozenset(i for i in processed if _idot(n, pts[i]) == b)

    facets: dict[tuple, _Facet] = {}
    for drop in simplex:
        n, b = make([i for i in simplex if i != drop])
        facets[(n, b)] = _Facet(n, b, on(n, b))

    for p in range(len(pts)):
        if p in simplex:
            continue
        x = pts[p]
        visible = [f for f in facets.values() if _idot(f.normal, x) > f.offset]
        processed.append(p)
        if not visible:
            for key, f in list(facets.items()):
                if _idot(f.normal, x) == f.offset:
                    facets[key] = _Facet(f.normal, f.offset, f.members | {p})
            continue
        hidden = [f for f in facets.values() if _idot(f.normal, x) <= f.offset]
        new: dict[tuple, _Facet] = {}
        for g in hidden:
            for f in visible:
                ridge = f.members & g.members
                if len(ridge) < k - 1:
                    continue
                rpts = sorted(ridge)
                if len(_independent_subset(pts, rpts, k - 1)) < k - 1:
                    continue
                n, b = make(rpts + [p])
                if (n, b) not in new:
                    new[(n, b)] = _Facet(n, b, on(n, b))
        for f in visible:
            del facets[(f.normal, f.offset)]
        for key, f in new.items():
            facets[key] = f
        for key, f in list(facets.items()):
            if key not in new and _idot(f.normal, x) == f.offset:
                facets[key] = _Facet(f.normal, f.offset, f.members | {p})
    return list(facets.values())


def _hull_vertices(pts: Sequence[Vec]) -> tuple[list[int], list[_Facet], int, list[int]]:
    """Vertex indices, facets (in projected coordinates), affine dim, frame."""
    uniq: dict[Vec, int] = {}
    for i, p in enumerate(pts):
        uniq.setdefault(p, i)
    idx = list(uniq.values())
    ups = [pts[i] for i in idx]
    r, frame = affine_frame(ups)
    if r == 0:
        return [idx[0]], [], 0, frame
    proj = [tuple(p[c] for c in frame) for p in ups]
    if r == 1:
        lo = min(range(len(proj)), key=lambda i: proj[i])
        hi = max(range(len(proj)), key=lambda i: proj[i])
        facets = [
            _Facet((-1,), -proj[lo][0], frozenset([lo])),
            _Facet((1,), proj[hi][0], frozenset([hi])),
        ]
        return sorted([idx[lo], idx[hi]]), _remap(facets, idx), 1, frame
    facets = _full_dim_hull(proj)
    verts = []
    for i in range(len(proj)):
        normals = [f.normal for f in facets if i in f.members]
        if len(normals) >= r and _rank(normals) == r:
            verts.append(idx[i])
    return sorted(verts), _remap(facets, idx), r, frame


def _remap(facets, idx):
    return [_Facet(f.normal, f.offset, frozenset(idx[i] for i in f.members)) for f in facets]


# ---------------------------------------------------------------- Polytope

@dataclass(frozen=True)
class Polytope:
    """conv(points) in Q^dim.  An empty point set is the empty polytope."""

    dim: int
    points: tuple[Vec, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        pts = tuple(as_vec(p) for p in self.points)
        for p in pts:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not live in dimension {self.dim}")
        if not 1 <= self.dim <= 6:
            raise ValueError("ambient dimension must be between 1 and 6")
        object.__setattr__(self, "points", pts)

    @classmethod
    def empty(cls, dim: int) -> "Polytope":
        return cls(dim, ())

    @property
    def is_empty(self) -> bool:
        return not self.points

    def _hull(self):
        if "hull" not in self._cache:
            self._cache["hull"] = _hull_vertices(self.points)
        return self._cache["hull"]

    @cached_property
    def vertices(self) -> tuple[Vec, ...]:
        if self.is_empty:
            return ()
        return tuple(sorted(self.points[i] for i in self._hull()[0]))

    @property
    def affine_dim(self) -> int:
        return -1 if self.is_empty else self._hull()[2]

    def hull(self) -> "Polytope":
        return Polytope(self.dim, self.vertices)

    def contains(self, x: Sequence) -> bool:
        """Membership by LP feasibility of convex weights."""
        if self.is_empty:
            return False
        x = as_vec(x)
        verts = self.vertices
        n = len(verts)
        ineqs = [([-1 if j == i else 0 for j in range(n)], 0) for i in range(n)]
        eqs = [([1] * n, 1)]
        for c in range(self.dim):
            eqs.append(([v[c] for v in verts], x[c]))
        return feasible(n, ineqs, eqs)

    def to_json(self) -> list[list[str]]:
        return [[str(c) for c in v] for v in self.vertices]

    def __eq__(self, other):
        if not isinstance(other, Polytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self):
        return hash((self.dim, self.vertices))


def convex_hull(points: Iterable[Sequence], dim: int | None = None) -> Polytope:
    pts = [as_vec(p) for p in points]
    if dim is None:
        if not pts:
            raise ValueError("convex hull of nothing needs an explicit dimension")
        dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("points have mismatched dimensions")
    P = Polytope(dim, tuple(pts))
    return P.hull()


def minkowski_sum(A: Polytope, B: Polytope) -> Polytope:
    if A.dim != B.dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    if A.is_empty or B.is_empty:
        return Polytope.empty(A.dim)
    sums = {tuple(a + b for a, b in zip(u, v)) for u in A.vertices for v in B.vertices}
    return convex_hull(sorted(sums), A.dim)


def translate(P: Polytope, v: Sequence) -> Polytope:
    v = as_vec(v)
    return Polytope(P.dim, tuple(tuple(a + b for a, b in zip(p, v)) for p in P.vertices))


def scale(P: Polytope, lam) -> Polytope:
    lam = Fraction(lam)
    return Polytope(P.dim, tuple(tuple(lam * a for a in p) for p in P.vertices))


# ------------------------------------------------------------------ volume

def _triangulate(pts: list[Vec], idx: list[int]) -> list[tuple[int, ...]]:
    """Pulling triangulation of conv(pts[idx]) into full-span simplices."""
    sub = [pts[i] for i in idx]
    verts, facets, r, _ = _hull_vertices(sub)
    if r == 0:
        return [(idx[verts[0]],)]
    if r == 1:
        return [tuple(idx[v] for v in verts)]
    apex = verts[0]
    out = []
    for f in facets:
        if apex in f.members:
            continue
        members = sorted(f.members)
        fverts = [m for m in members if m in set(verts)]
        for simplex in _triangulate(sub, fverts):
            out.append((idx[apex],) + tuple(idx[i] for i in simplex))
    return out


def volume(P: Polytope) -> Fraction:
    """Exact Lebesgue volume in Q^dim; zero when the hull is flat."""
    if P.is_empty or P.affine_dim < P.dim:
        return Fraction(0)
    verts = list(P.vertices)
    d = P.dim
    total = Fraction(0)
    for simplex in _triangulate(verts, list(range(len(verts)))):
        base = verts[simplex[0]]
        total += abs(_det([_sub(verts[i], base) for i in simplex[1:]]))
    return total / math.factorial(d)


def mixed_volume(polys: Sequence[Polytope]) -> Fraction:
    """MV(Z_1..Z_d) = sum over nonempty S of (-1)^(d-|S|) Vol(sum_{i in S} Z_i).

    With this normalisation MV(Z, ..., Z) = d! Vol(Z).
    """
    if not polys:
        raise ValueError("mixed volume needs at least one polytope")
    d = polys[0].dim
    if len(polys) != d:
        raise ValueError(f"mixed volume in dimension {d} needs {d} polytopes, got {len(polys)}")
    if any(P.dim != d for P in polys):
        raise ValueError("polytopes live in different dimensions")
    if any(P.is_empty for P in polys):
        return Fraction(0)
    sums: dict[int, Polytope] = {}
    total = Fraction(0)
    for mask in range(1, 1 << d):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        sums[mask] = polys[low].hull() if not rest else minkowski_sum(sums[rest], polys[low])
        sign = -1 if (d - bin(mask).count("1")) % 2 else 1
        total += sign * volume(sums[mask])
    return total


def simplex_cross(d: int, a) -> Polytope:
    """conv{e_1, ..., e_d, a e_1, ..., a e_d}."""
    pts = []
    for i in range(d):
        for s in (1, a):
            pts.append(tuple(Fraction(s) if j == i else Fraction(0) for j in range(d)))
    return convex_hull(pts, d)


def load_polytopes(data) -> list[Polytope]:
    """JSON list of polytopes, each a list of rational-string vectors."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, dict):
        data = data["polytopes"]
    out = []
    for poly in data:
        pts = [as_vec(p) for p in poly]
        if not pts:
            raise ValueError("empty polytope in input")
        out.append(convex_hull(pts))
    return out


# ------------------------------------------------------- cross-check paths

def vertices_bruteforce(points: Sequence[Sequence]) -> list[Vec]:
    """Vertices by enumerating every candidate facet hyperplane.

    A point is a vertex iff the supporting facets through it have normals of
    full rank in the affine span.  Cost is O(n^k) in the affine dimension k.
    """
    pts = sorted({as_vec(p) for p in points})
    r, frame = affine_frame(pts)
    if r == 0:
        return pts
    proj = [tuple(p[c] for c in frame) for p in pts]
    if r == 1:
        return [pts[min(range(len(pts)), key=lambda i: proj[i])], pts[max(range(len(pts)), key=lambda i: proj[i])]]
    normals: dict[int, list] = {i: [] for i in range(len(proj))}
    seen = set()
    for combo in itertools.combinations(range(len(proj)), r):
        diffs = [_sub(proj[i], proj[combo[0]]) for i in combo[1:]]
        if _rank(diffs) < r - 1:
            continue
        n = _normal([proj[i] for i in combo])
        b = _dot(n, proj[combo[0]])
        vals = [_dot(n, q) for q in proj]
        if all(v <= b for v in vals):
            key = (n, b)
        elif all(v >= b for v in vals):
            key = (tuple(-x for x in n), -b)
        else:
            continue
        if key in seen:
            continue
        seen.add(key)
        for i, v in enumerate(vals):
            if v == b:
                normals[i].append(key[0])
    return [pts[i] for i in range(len(pts)) if normals[i] and _rank(normals[i]) == r]


def jarvis_march(points: Sequence[Sequence]) -> list[Vec]:
    """Planar gift wrapping; returns the vertices in counter-clockwise order."""
    pts = sorted({as_vec(p) for p in points})
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def dist2(a, b):
        return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2

    start = pts[0]
    hull = [start]
    current = start
    while True:
        cand = next(p for p in pts if p != current)
        for p in pts:
            if p == current:
                continue
            c = cross(current, cand, p)
            if c < 0 or (c == 0 and dist2(current, p) > dist2(current, cand)):
                cand = p
        if cand == start:
            break
        hull.append(cand)
        current = cand
        if len(hull) > len(pts):
            raise RuntimeError("gift wrapping failed to close")
    return hull


def shoelace(polygon: Sequence[Vec]) -> Fraction:
    n = len(polygon)
    s = sum(polygon[i][0] * polygon[(i + 1) % n][1] - polygon[(i + 1) % n][0] * polygon[i][1] for i in range(n))
    return abs(Fraction(s)) / 2
