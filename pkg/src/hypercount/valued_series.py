"""Power series over C_p seen only through their coefficient valuations.

A series is a finite map from exponent vectors to valuations.  The Newton
polygon New_m(F) collects every exponent u that attains a non-unique minimum
of v(a_u) + <w, u> for some weight w with all w_i >= m, and takes the hull.
Each candidate pair (u, u') is decided by exact Fourier-Motzkin feasibility.

Integrated shapes sum a_i/(i+1) t^(i+1) arise from integrating 1-forms; an
infinite series of this kind is made finite by ``truncate_integrated``,
whose certificate proves that no omitted term can ever attain the minimum.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lp import feasible
from .polytopes import Polytope, convex_hull

INF = math.inf

Exponent = tuple[int, ...]


def parse_valuation(v) -> Fraction | float:
    if v is None or v == INF:
        return INF
    if isinstance(v, str) and v.strip().lower() in ("inf", "+inf", "infinity", "oo"):
        return INF
    return Fraction(v)


def vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v_p(0) is infinite")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class TailCertificate:
    """Terms of variable ``var`` with exponent > N never reach the minimum
    for any weight >= m, given a unit coefficient among indices < n0."""

    p: int
    m: Fraction
    n0: int
    N: int
    var: int = 0


@dataclass(frozen=True)
class ValuedSeries:
    """Finite support u -> v(a_u); +inf valuations are dropped.

    ``open_tails`` lists (axis, K) for axes whose series continues past the
    stored terms, with exponents up to K known exactly.  Each open axis needs
    a matching certificate before a Newton polygon is computed.
    """

    nvars: int
    support: Mapping[Exponent, Fraction]
    open_tails: tuple[tuple[int, int], ...] = ()
    certificates: tuple[TailCertificate, ...] = ()

    def __post_init__(self):
        clean = {}
        for u, v in dict(self.support).items():
            u = tuple(int(x) for x in u)
            if len(u) != self.nvars or any(x < 0 for x in u):
                raise ValueError(f"bad exponent {u} for {self.nvars} variables")
            v = parse_valuation(v)
            if v != INF:
                clean[u] = v
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    @property
    def truncated(self) -> bool:
        return bool(self.open_tails)

    @classmethod
    def from_json(cls, data) -> "ValuedSeries":
        if isinstance(data, str):
            data = json.loads(data)
        terms = {tuple(t["u"]): t["v"] for t in data["terms"]}
        return cls(int(data["nvars"]), terms)

    def to_json(self) -> dict:
        return {
            "nvars": self.nvars,
            "terms": [{"u": list(u), "v": str(v)} for u, v in self.support.items()],
        }

    def shifted(self, c) -> "ValuedSeries":
        c = Fraction(c)
        return ValuedSeries(
            self.nvars,
            {u: v + c for u, v in self.support.items()},
            self.open_tails,
            self.certificates,
        )


@dataclass(frozen=True)
class IntegratedSeriesSpec:
    """Valuations v(a_0), v(a_1), ... of a series to be integrated termwise.

    ``complete`` marks the prefix as the whole series (a polynomial);
    otherwise the tail is unknown apart from integrality.
    """

    p: int
    coeff_valuations: tuple
    var: int = 0
    complete: bool = False

    def __post_init__(self):
        vals = tuple(parse_valuation(v) for v in self.coeff_valuations)
        for v in vals:
            if v != INF and v < 0:
                raise ValueError("coefficient valuations must be >= 0")
        object.__setattr__(self, "coeff_valuations", vals)


def integrate_shape(spec: IntegratedSeriesSpec, certificate: TailCertificate | None = None) -> ValuedSeries:
    """Valuations of sum a_i/(i+1) t^(i+1) as a one-variable series."""
    support = {}
    for i, v in enumerate(spec.coeff_valuations):
        if v != INF:
            support[(i + 1,)] = v - vp(i + 1, spec.p)
    certs = ()
    if certificate is not None:
        certs = (TailCertificate(certificate.p, certificate.m, certificate.n0, certificate.N, 0),)
    tails = () if spec.complete else ((0, len(spec.coeff_valuations)),)
    return ValuedSeries(1, support, tails, certs)


def sum_in_distinct_vars(series: Sequence[ValuedSeries], constant_valuation=INF) -> ValuedSeries:
    """Place the i-th one-variable series on axis i and add a constant term."""
    d = len(series)
    support: dict[Exponent, Fraction] = {}
    certs = []
    tails = []
    used = set()
    for pos, s in enumerate(series):
        if s.nvars != 1:
            raise ValueError("sum_in_distinct_vars expects one-variable series")
        axis = pos
        if axis in used:
            raise ValueError(f"variable index {axis} used twice")
        used.add(axis)
        for (e,), v in s.support.items():
            u = tuple(e if j == axis else 0 for j in range(d))
            if e == 0:
                raise ValueError("axis series must not carry a constant term")
            support[u] = v
        for c in s.certificates:
            certs.append(TailCertificate(c.p, c.m, c.n0, c.N, axis))
        for _, known in s.open_tails:
            tails.append((axis, known))
    c = parse_valuation(constant_valuation)
    if c != INF:
        support[(0,) * d] = c
    return ValuedSeries(d, support, tuple(tails), tuple(certs))


def sum_in_distinct_vars_indexed(pairs: Iterable[tuple[int, ValuedSeries]], nvars: int, constant_valuation=INF):
    """Like ``sum_in_distinct_vars`` but with explicit axis indices."""
    slots: list[ValuedSeries | None] = [None] * nvars
    for axis, s in pairs:
        if not 0 <= axis < nvars:
            raise ValueError(f"variable index {axis} out of range")
        if slots[axis] is not None:
            raise ValueError(f"variable index {axis} used twice")
        slots[axis] = s
    filled = [s if s is not None else ValuedSeries(1, {}) for s in slots]
    return sum_in_distinct_vars(filled, constant_valuation)


# ------------------------------------------------------------- truncation

def truncate_integrated(spec: IntegratedSeriesSpec, m, n0: int) -> TailCertificate:
    """Least N >= n0 with n*m - v_p(n) > n0*m for every n > N.

    Omitted terms then exceed the unit term at some exponent <= n0 for every
    weight >= m: such a term is bounded above by n0*w, while an omitted term
    is at least n*w - v_p(n) because the coefficients are integral.
    """
    m = Fraction(m)
    if m <= 0:
        raise ValueError("radius m must be positive")
    head = spec.coeff_valuations[:n0]
    if not any(v == 0 for v in head):
        raise ValueError(f"no unit coefficient among the first {n0}; cannot certify a tail")
    p = spec.p
    a, b = m.numerator, m.denominator
    # past n_mono the function n*m - log_p(n) is increasing
    n_mono = math.ceil(2 / m) + 1
    last_bad = n0
    n = n0 + 1
    while True:
        if n * m - vp(n, p) <= n0 * m:
            last_bad = n
        # p^((n - n0) m) > n  certifies every larger n as well
        if n >= n_mono and p ** ((n - n0) * a) > n**b:
            break
        n += 1
    return TailCertificate(p, m, n0, last_bad, spec.var)


# ----------------------------------------------------------- Newton polygon

def _radii(m, nvars: int) -> tuple[Fraction, ...]:
    if isinstance(m, (list, tuple)):
        if len(m) != nvars:
            raise ValueError("one radius per variable expected")
        radii = tuple(Fraction(x) for x in m)
    else:
        radii = (Fraction(m),) * nvars
    if any(r <= 0 for r in radii):
        raise ValueError("radii must be positive")
    return radii


def _check_tail(F: ValuedSeries, radii) -> None:
    for axis, known in F.open_tails:
        certs = [c for c in F.certificates if c.var == axis]
        if not certs:
            raise ValueError(f"truncated series without a tail certificate for variable {axis}")
        if not any(c.m <= radii[axis] and c.N <= known for c in certs):
            raise ValueError(
                f"tail certificate for variable {axis} does not cover radius {radii[axis]} "
                f"with the known prefix"
            )


def _pair_systems(terms, i, radii):
    d = len(radii)
    u, vu = terms[i]
    ineqs = [([-1 if j == k else 0 for j in range(d)], -radii[k]) for k in range(d)]
    for k, (u2, v2) in enumerate(terms):
        if k != i:
            ineqs.append(([a - b for a, b in zip(u, u2)], v2 - vu))
    return ineqs


def minimal_exponents(F: ValuedSeries, m) -> list[Exponent]:
    """Exponents admitted to New_m(F), in sorted order."""
    radii = _radii(m, F.nvars)
    _check_tail(F, radii)
    terms = list(F.support.items())
    d = F.nvars
    base = [_pair_systems(terms, i, radii) for i in range(len(terms))]
    can_be_min = [feasible(d, base[i]) for i in range(len(terms))]
    included = set()
    for i, j in itertools.combinations(range(len(terms)), 2):
        if not (can_be_min[i] and can_be_min[j]):
            continue
        if i in included and j in included:
            continue
        (u, vu), (u2, v2) = terms[i], terms[j]
        eq = [([a - b for a, b in zip(u, u2)], v2 - vu)]
        if feasible(d, base[i], eq):
            included.update((i, j))
    return sorted(terms[i][0] for i in included)


def newton_polygon(F: ValuedSeries, m) -> Polytope:
    """New_m(F) as an exact polytope; empty when no exponent ties at a minimum.

    ``m`` is a positive rational, or one radius per variable.
    """
    pts = minimal_exponents(F, m)
    if not pts:
        return Polytope.empty(F.nvars)
    return convex_hull(pts, F.nvars)


# ------------------------------------------------------------------ oracle

def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def newton_polygon_oracle(F: ValuedSeries, m) -> list[Exponent]:
    """Minimal-tie exponents by enumerating candidate vertex weights.

    The weights attaining a tie at the minimum form a polyhedron bounded
    below in every coordinate, so when nonempty it has a vertex cut out by d
    of the hyperplanes w_k = m_k or v_u + <w,u> = v_u' + <w,u'>.  Every such
    intersection point is tested directly.
    """
    radii = _radii(m, F.nvars)
    terms = list(F.support.items())
    d = F.nvars
    planes = [([Fraction(int(j == k)) for j in range(d)], radii[k]) for k in range(d)]
    for (u, vu), (u2, v2) in itertools.combinations(terms, 2):
        normal = [Fraction(a - b) for a, b in zip(u, u2)]
        if any(normal):
            planes.append((normal, v2 - vu))
    found = set()
    for combo in itertools.combinations(planes, d):
        w = _solve_square([list(r) for r, _ in combo], [b for _, b in combo])
        if w is None or any(wk < mk for wk, mk in zip(w, radii)):
            continue
        values = [(v + sum(wk * uk for wk, uk in zip(w, u)), u) for u, v in terms]
        low = min(val for val, _ in values)
        at_min = [u for val, u in values if val == low]
        if len(at_min) >= 2:
            found.update(at_min)
    return sorted(found)
