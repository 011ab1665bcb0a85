"""Conditional bounds on unexpected degree-d points.

Vanishing orders of the annihilating differentials enter only as a budget:
their total over all residue disks is at most 2r <= 2.  For each residue
class the number of ordered tuples away from the centre is bounded by a
mixed volume of worst-case Newton polygons, which are themselves computed
from two-term integrated series.  The explicit quadratic (p = 3, d = 2) and
cubic (p = 3, d = 3) counts and the generic crude bound B_d are assembled
here.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .curves import CurveModel, good_reduction, reduce_mod
from .errors import HypothesisError, PreconditionError
from .family import f9_structure
from .finite_fields import (
    FFContext,
    MAX_FIELD_SIZE,
    affine_points,
    closed_point_counts,
    closed_points_P1,
    count_points,
    frobenius_orbits,
    is_prime,
)
from .polytopes import Polytope, convex_hull, mixed_volume
from .valued_series import (
    IntegratedSeriesSpec,
    ValuedSeries,
    minimal_exponents,
    truncate_integrated,
    vp,
)

STOLL_BUDGET = 2  # 2r with r <= 1

HYPOTHESIS_TEXT = {
    "rank1": "the Jacobian of C has Mordell-Weil rank at most 1",
    "simple": "the Jacobian of C is geometrically simple",
    "dagger": (
        "condition (dagger): for the chosen differentials, every isolated point of the "
        "common zero locus in the polydisk tropicalizes to an isolated point of the "
        "intersection of the tropicalizations"
    ),
}


@dataclass(frozen=True)
class Hypotheses:
    """Caller declarations.  None of these is checked against the curve."""

    rank_le_1: bool = False
    geometrically_simple: bool = False
    condition_dagger: bool = False
    good_reduction_at: int | None = None

    @classmethod
    def parse(cls, assume: str | None, p: int | None = None) -> "Hypotheses":
        flags = {s.strip() for s in (assume or "").split(",") if s.strip()}
        unknown = flags - set(HYPOTHESIS_TEXT)
        if unknown:
            raise ValueError(f"unknown hypothesis flag(s): {', '.join(sorted(unknown))}")
        return cls("rank1" in flags, "simple" in flags, "dagger" in flags, p)

    def missing(self) -> list[str]:
        out = []
        if not self.rank_le_1:
            out.append("rank1")
        if not self.geometrically_simple:
            out.append("simple")
        if not self.condition_dagger:
            out.append("dagger")
        return out

    def require(self) -> None:
        missing = self.missing()
        if missing:
            lines = "; ".join(f"{k}: {HYPOTHESIS_TEXT[k]}" for k in missing)
            raise HypothesisError(f"bound is conditional on undeclared hypotheses ({lines})")

    def statements(self) -> list[str]:
        return [HYPOTHESIS_TEXT[k] for k in ("rank1", "simple", "dagger")]


# ------------------------------------------------------------ crude bound

def bertrand_prime(d: int) -> int:
    """Smallest prime strictly above d^2 + 3."""
    if d < 2:
        raise ValueError("d must be at least 2")
    n = d * d + 4
    while not is_prime(n):
        n += 1
    return n


@dataclass(frozen=True)
class CrudeBound:
    d: int
    p: int
    value: int
    cap: int


def crude_bound(d: int, p: int) -> CrudeBound:
    """B_d = (3d(2p^d + 1))^d, with the cap at p < 2(d^2 + 3)."""
    if d < 2:
        raise ValueError("d must be at least 2")
    if not is_prime(p) or p <= d * d + 3:
        raise PreconditionError(f"need a prime p > d^2 + 3 = {d * d + 3}, got {p}")
    value = (3 * d * (2 * p**d + 1)) ** d
    cap = (3 * d * (2 * (2 * d * d + 3) ** d + 1)) ** d
    return CrudeBound(d, p, value, cap)


# --------------------------------------------------------- per-disk bound

def axis_reach(order: int, m, p: int) -> int | None:
    """Largest exponent in New_m of any integrated axis series with a unit
    coefficient at index <= order; None when every such polygon is empty.

    A term at exponent n > j+1 can reach the minimum against the unit term at
    j+1 only if the two-term series with the smallest valuations the
    coefficients allow already ties at some weight >= m, so two-term series
    suffice.  The tail certificate caps the exponents to try.
    """
    m = Fraction(m)
    reach = None
    for j in range(order + 1):
        cert = truncate_integrated(IntegratedSeriesSpec(p, (1,) * j + (0,)), m, j + 1)
        if j >= 1:
            # lower exponents with non-unit coefficients may tie with j+1
            reach = max(reach or 0, j + 1)
        for n in range(j + 2, cert.N + 1):
            F = ValuedSeries(1, {(j + 1,): -vp(j + 1, p), (n,): -vp(n, p)})
            if (n,) in minimal_exponents(F, m):
                reach = max(reach or 0, n)
    return reach


@dataclass(frozen=True)
class DiskBound:
    non_center: int
    center: int
    reach: tuple
    polytope: tuple

    @property
    def total(self) -> int:
        return self.non_center + self.center


def per_disk_bound(d: int, vanishing_order, m, p: int, center_unexpected: bool = True) -> DiskBound:
    """Ordered tuples in one residue class: MV of the worst-case polygons,
    plus the centre when it could itself be an unexpected tuple.

    ``vanishing_order`` and ``m`` may be given per coordinate.  When some
    coordinate admits no Newton polygon at all (unit leading coefficient on a
    radius-1 disk), that coordinate's series has no zero off the centre and
    the class contributes nothing beyond the centre.
    """
    orders = tuple(vanishing_order) if isinstance(vanishing_order, (list, tuple)) else (vanishing_order,) * d
    radii = tuple(Fraction(x) for x in m) if isinstance(m, (list, tuple)) else (Fraction(m),) * d
    if len(orders) != d or len(radii) != d:
        raise ValueError("one vanishing order and one radius per coordinate")
    if any(k < 0 or k > STOLL_BUDGET for k in orders):
        raise ValueError("vanishing orders are at most 2")
    center = 1 if center_unexpected else 0
    reach = tuple(axis_reach(k, r, p) for k, r in zip(orders, radii))
    if any(R is None for R in reach):
        return DiskBound(0, center, reach, ())
    pts = []
    for i, R in enumerate(reach):
        for s in (1, R):
            pts.append(tuple(s if j == i else 0 for j in range(d)))
    Z = convex_hull(pts, d)
    mv = mixed_volume([Z] * d)
    assert mv.denominator == 1
    return DiskBound(int(mv), center, reach, tuple(tuple(str(c) for c in v) for v in Z.vertices))


# ------------------------------------------------------------- allocation

@dataclass(frozen=True)
class Allocation:
    active: tuple[int, ...]
    total: int
    spent: int


def allocate_vanishing(groups: Sequence[tuple[int, int, int]], budget: int, fixed: int = 0) -> Allocation:
    """Maximise fixed + sum of gains over activation subsets within budget.

    ``groups`` holds (cost, gain if active, gain if inactive).  Ties go to
    the lexicographically smallest subset of group indices.
    """
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    best = None
    subsets = []
    for k in range(len(groups) + 1):
        subsets.extend(itertools.combinations(range(len(groups)), k))
    for S in sorted(subsets):
        cost = sum(groups[i][0] for i in S)
        if cost > budget:
            continue
        total = fixed + sum(g[1] if i in S else g[2] for i, g in enumerate(groups))
        if best is None or total > best.total:
            best = Allocation(tuple(S), total, cost)
    return best


# ----------------------------------------------------------------- reports

@dataclass
class ConfigurationCount:
    label: str
    radius: list[str]
    vanishing_order: list[int]
    ordered_count: int
    unordered_count: int
    active: bool | None = None
    note: str = ""


@dataclass
class BoundReport:
    curve: dict | None
    d: int
    p: int
    hypotheses: list[str]
    configurations: list[ConfigurationCount] = field(default_factory=list)
    allocation: dict = field(default_factory=dict)
    tuple_bound: int = 0
    point_bound: int = 0
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "curve": self.curve,
            "d": self.d,
            "p": self.p,
            "hypotheses": list(self.hypotheses),
            "configurations": [asdict(c) for c in self.configurations],
            "allocation": self.allocation,
            "tuple_bound": self.tuple_bound,
            "point_bound": self.point_bound,
            "notes": list(self.notes),
        }


# ------------------------------------------------------- explicit p = 3

def _pair_orbits(curve: CurveModel) -> list[tuple]:
    f = list(reversed(reduce_mod(curve, 3)))
    f9 = FFContext(3, 2)
    return [o for o in frobenius_orbits(affine_points(f, f9), f9, include_infinity=False) if len(o) == 2]


def _require_mod3(curve: CurveModel, d: int) -> list[tuple]:
    """Check the F_3 / F_9 point pattern and return the size-2 orbits."""
    if curve.genus <= d:
        raise PreconditionError(f"need genus g > {d}, got g = {curve.genus}")
    if not good_reduction(curve, 3):
        raise PreconditionError("bad reduction at 3")
    s = f9_structure(list(reversed(reduce_mod(curve, 3))))
    if s.count_f3 != 1:
        raise PreconditionError(f"|C(F_3)| = {s.count_f3}, expected 1 (only the point at infinity)")
    if s.count_f9 != 7 or not s.pattern_ok:
        raise PreconditionError(f"|C(F_9)| = {s.count_f9}; expected 7 points (inf and (i, +-alpha), i in F_3)")
    return _pair_orbits(curve)


def _radius(r) -> list[str]:
    return [str(Fraction(x)) for x in r]


def quadratic_pipeline(curve: CurveModel, hyps: Hypotheses, budget: int = STOLL_BUDGET) -> BoundReport:
    """Unexpected quadratic points for a curve with the F_3 / F_9 point pattern."""
    hyps.require()
    pair_orbits = _require_mod3(curve, 2)
    p = 3
    report = BoundReport(curve.to_json(), 2, p, hyps.statements())

    inf_disk = per_disk_bound(2, STOLL_BUDGET, Fraction(1, 2), p, center_unexpected=False)
    inf_unordered = inf_disk.total // 2
    report.configurations.append(
        ConfigurationCount("(inf, inf)", _radius([Fraction(1, 2)] * 2), [STOLL_BUDGET] * 2,
                           inf_disk.total, inf_unordered, None, "both points reduce to inf; ordered count halved")
    )

    on = per_disk_bound(2, 1, 1, p, center_unexpected=False)
    off = per_disk_bound(2, 0, 1, p, center_unexpected=False)
    groups = [(2, on.total, off.total) for _ in pair_orbits]
    alloc = allocate_vanishing(groups, budget, fixed=inf_unordered)
    for idx, orbit in enumerate(pair_orbits):
        active = idx in alloc.active
        k = 1 if active else 0
        gain = groups[idx][1] if active else groups[idx][2]
        report.configurations.append(
            ConfigurationCount(f"F9-pair {list(orbit)}", _radius([1, 1]), [k, k], gain, gain, active,
                               "distinct conjugate reductions; centre is an expected point")
        )
    report.allocation = {"budget": budget, "active_groups": list(alloc.active), "spent": alloc.spent,
                         "tie_break": "lexicographic"}
    report.tuple_bound = alloc.total
    report.point_bound = 2 * alloc.total
    return report


def cubic_pipeline(curve: CurveModel, hyps: Hypotheses, budget: int = STOLL_BUDGET) -> BoundReport:
    """Cubic points for a curve with the F_3 / F_9 point pattern, g >= 4."""
    hyps.require()
    pair_orbits = _require_mod3(curve, 3)
    p = 3
    report = BoundReport(curve.to_json(), 3, p, hyps.statements())

    inf_disk = per_disk_bound(3, STOLL_BUDGET, Fraction(1, 3), p, center_unexpected=False)
    inf_unordered = inf_disk.total // 6
    report.configurations.append(
        ConfigurationCount("(inf, inf, inf)", _radius([Fraction(1, 3)] * 3), [STOLL_BUDGET] * 3,
                           inf_disk.total, inf_unordered, None, "all three reduce to inf; floor of ordered/6")
    )

    mixed_radius = [1, 1, Fraction(1, 3)]
    on = per_disk_bound(3, (1, 1, 0), mixed_radius, p, center_unexpected=False)
    off = per_disk_bound(3, (0, 0, STOLL_BUDGET), mixed_radius, p, center_unexpected=False)
    groups = [(2, on.total, off.total) for _ in pair_orbits]

    f = list(reversed(reduce_mod(curve, 3)))
    f27 = FFContext(3, 3)
    cubic_orbits = [o for o in frobenius_orbits(affine_points(f, f27), f27, include_infinity=False) if len(o) == 3]
    centre_only = per_disk_bound(3, 0, 1, p, center_unexpected=True)
    cap = closed_points_P1(3, 3)
    cubic_classes = min(len(cubic_orbits), cap)
    cubic_total = centre_only.total * cubic_classes

    alloc = allocate_vanishing(groups, budget, fixed=inf_unordered + cubic_total)
    for idx, orbit in enumerate(pair_orbits):
        active = idx in alloc.active
        orders = [1, 1, 0] if active else [0, 0, STOLL_BUDGET]
        gain = groups[idx][1] if active else groups[idx][2]
        report.configurations.append(
            ConfigurationCount(f"(F9-pair {list(orbit)}, inf)", _radius(mixed_radius), orders, gain, gain, active,
                               "radius 1 on the unramified pair, 1/3 on the rational coordinate")
        )
    report.configurations.append(
        ConfigurationCount("F27 cubic orbits", _radius([1, 1, 1]), [0, 0, 0], cubic_total, cubic_total, None,
                           f"{len(cubic_orbits)} size-3 orbits on C; capped by {cap} cubic points of P^1 over F_3; "
                           "centres only")
    )
    report.allocation = {"budget": budget, "active_groups": list(alloc.active), "spent": alloc.spent,
                         "tie_break": "lexicographic"}
    report.tuple_bound = alloc.total
    report.point_bound = 3 * alloc.total
    return report


# ---------------------------------------------------------------- generic

def reduction_tuple_count(d: int, closed: Sequence[int]) -> int:
    """Ordered d-tuples of geometric points whose multiset is Galois stable.

    ``closed[s-1]`` is the number of degree-s closed points.  Every point of a
    closed point carries the same multiplicity c, and the count is
    d! [x^d] prod_s (sum_c x^(cs) / (c!)^s)^(o_s).
    """
    poly = [Fraction(0)] * (d + 1)
    poly[0] = Fraction(1)
    for s in range(1, d + 1):
        o = closed[s - 1] if s - 1 < len(closed) else 0
        factor = [Fraction(0)] * (d + 1)
        for c in range(0, d // s + 1):
            factor[c * s] = Fraction(1, math.factorial(c) ** s)
        for _ in range(o):
            new = [Fraction(0)] * (d + 1)
            for i, a in enumerate(poly):
                if a:
                    for j, b in enumerate(factor):
                        if b and i + j <= d:
                            new[i + j] += a * b
            poly = new
    total = poly[d] * math.factorial(d)
    assert total.denominator == 1
    return int(total)


def generic_pipeline(d: int, curve: CurveModel, hyps: Hypotheses, p: int | None = None,
                     refine: bool = False) -> BoundReport:
    """Degree-d bound from the crude count or from actual point counts.

    Without ``refine`` this is B_d at the Bertrand prime (or the given p).
    With ``refine`` the crude residue count is replaced by the number of
    Frobenius-consistent ordered reduction tuples, each worth 3^d ordered
    tuples of points.  At p = 3 for d = 2, 3 the explicit pipelines apply.
    """
    if d < 2:
        raise PreconditionError("degree d must be at least 2")
    hyps.require()
    if refine and p == 3 and d in (2, 3):
        rep = quadratic_pipeline(curve, hyps) if d == 2 else cubic_pipeline(curve, hyps)
        rep.notes.append("refined generic path delegated to the explicit p = 3 pipeline")
        return rep
    if curve.genus <= d:
        raise PreconditionError(f"need genus g > {d}, got g = {curve.genus}")
    if p is None:
        p = bertrand_prime(d)
    if p <= d * d + 3:
        raise PreconditionError(f"need p > d^2 + 3 = {d * d + 3}, got {p}")
    if not good_reduction(curve, p):
        raise PreconditionError(f"bad reduction at the chosen prime {p}")
    crude = crude_bound(d, p)
    disk = per_disk_bound(d, STOLL_BUDGET, Fraction(1, d * d), p, center_unexpected=True)
    report = BoundReport(curve.to_json(), d, p, hyps.statements())
    if not refine:
        residues = (d * (2 * p**d + 1)) ** d
        ordered = residues * disk.total
        assert ordered == crude.value
        report.configurations.append(
            ConfigurationCount("all residue tuples (crude)", _radius([Fraction(1, d * d)] * d), [STOLL_BUDGET] * d,
                               ordered, ordered // d, None,
                               f"{residues} reduction tuples x {disk.total} ordered tuples each")
        )
        report.tuple_bound = crude.value // d
        report.point_bound = d * report.tuple_bound
        return report
    if p**d > MAX_FIELD_SIZE:
        raise PreconditionError(f"refined count needs F_(p^{d}) with p^d <= {MAX_FIELD_SIZE}")
    f = list(reversed(reduce_mod(curve, p)))
    counts = [count_points(f, FFContext(p, k)) for k in range(1, d + 1)]
    closed = closed_point_counts(counts)
    T = reduction_tuple_count(d, closed)
    ordered = T * disk.total
    report.configurations.append(
        ConfigurationCount("Frobenius-consistent reduction tuples", _radius([Fraction(1, d * d)] * d),
                           [STOLL_BUDGET] * d, ordered, ordered // d, None,
                           f"|C(F_p^k)| = {counts}; closed points by degree {closed}; {T} tuples")
    )
    report.tuple_bound = ordered // d
    report.point_bound = d * report.tuple_bound
    return report
