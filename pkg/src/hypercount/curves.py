"""Integer models y^2 = f(x) of hyperelliptic curves with a rational
Weierstrass point at infinity, and exact arithmetic in quadratic fields
for rediscovering unexpected quadratic points.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering
from typing import Sequence

from . import polyarith
from .errors import PreconditionError
from .finite_fields import is_prime


@dataclass(frozen=True)
class CurveModel:
    """y^2 = f(x) with f monic of degree 2g+1.

    ``coeffs`` lists f from the leading coefficient down to the constant
    term, matching the JSON curve format.
    """

    genus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if self.genus < 2:
            raise ValueError("genus must be at least 2")
        if len(coeffs) != 2 * self.genus + 2:
            raise ValueError(f"genus {self.genus} needs {2 * self.genus + 2} coefficients, got {len(coeffs)}")
        if coeffs[0] != 1:
            raise ValueError("f must be monic")
        if polyarith.discriminant(self.ascending) == 0:
            raise ValueError("f is not separable")

    @classmethod
    def from_json(cls, data: dict | str) -> "CurveModel":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["genus"]), tuple(data["coeffs"]))

    @classmethod
    def from_ascending(cls, genus: int, f: Sequence[int]) -> "CurveModel":
        return cls(genus, tuple(reversed(list(f))))

    def to_json(self) -> dict:
        return {"genus": self.genus, "coeffs": list(self.coeffs)}

    @property
    def ascending(self) -> list[int]:
        return list(reversed(self.coeffs))

    @property
    def degree(self) -> int:
        return 2 * self.genus + 1

    @property
    def depressed(self) -> bool:
        return self.coeffs[1] == 0

    def a(self, i: int) -> int:
        """Coefficient a_i of x^(2g+1-i)."""
        return self.coeffs[i]

    @property
    def weighted_coeffs(self) -> dict[int, int]:
        return {i: self.coeffs[i] for i in range(2, self.degree + 1)}

    @cached_property
    def disc(self) -> int:
        d = polyarith.discriminant(self.ascending)
        assert d.denominator == 1
        return int(d)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            e = self.degree - i
            if c:
                mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
                terms.append(f"{c}{'*' if mono else ''}{mono}" if c != 1 or not mono else mono)
        return "y^2 = " + " + ".join(terms)


# ------------------------------------------------------------------ height

@total_ordering
@dataclass(frozen=True, eq=False)
class Height:
    """max_i |a_i|^(1/i), kept as the maximising pair (|a_i|, i).

    Comparison is exact: |a|^(1/i) < |b|^(1/j)  iff  |a|^j < |b|^i.
    """

    value: int
    index: int

    def _key(self, other: "Height") -> tuple[int, int]:
        return self.value**other.index, other.value**self.index

    def __eq__(self, other):
        if not isinstance(other, Height):
            return NotImplemented
        a, b = self._key(other)
        return a == b

    def __lt__(self, other):
        a, b = self._key(other)
        return a < b

    def __hash__(self):
        raise TypeError("Height compares by value across representations; not hashable")

    def __float__(self):
        return float(self.value) ** (1.0 / self.index)

    def __repr__(self):
        return f"Height({self.value}^(1/{self.index}) ~ {float(self):.4f})"


def height(curve: CurveModel) -> Height:
    if not curve.depressed:
        raise PreconditionError("height defined only for minimal-form models")
    best = None
    for i, a in curve.weighted_coeffs.items():
        h = Height(abs(a), i)
        if best is None or h > best:
            best = h
    return best


def _iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0."""
    if n < 2:
        return n
    x = int(round(n ** (1.0 / k)))
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


@dataclass(frozen=True)
class Minimality:
    minimal: bool
    witness: int | None = None


def is_minimal(curve: CurveModel) -> Minimality:
    """True iff no prime p has p^(2i) | a_i for every i >= 2."""
    if not curve.depressed:
        raise PreconditionError("height defined only for minimal-form models")
    nonzero = {i: a for i, a in curve.weighted_coeffs.items() if a}
    bound = min(_iroot(abs(a), 2 * i) for i, a in nonzero.items())
    g = 0
    for a in nonzero.values():
        g = math.gcd(g, a)
    for p in range(2, bound + 1):
        if g % p or not is_prime(p):
            continue
        if all(a % p ** (2 * i) == 0 for i, a in nonzero.items()):
            return Minimality(False, p)
    return Minimality(True)


# -------------------------------------------------------------- reduction

def discriminant(curve: CurveModel) -> int:
    return curve.disc


def good_reduction(curve: CurveModel, p: int) -> bool:
    if p == 2:
        raise PreconditionError("even prime not supported for y^2=f(x) models")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return curve.disc % p != 0


def reduce_mod(curve: CurveModel, p: int) -> tuple[int, ...]:
    """Coefficients of f mod p, leading first."""
    if not good_reduction(curve, p):
        raise PreconditionError(f"bad reduction at {p}: p divides disc(f)")
    return tuple(c % p for c in curve.coeffs)


def good_primes(curve: CurveModel, bound: int) -> list[int]:
    return [p for p in range(3, bound + 1) if is_prime(p) and good_reduction(curve, p)]


# ------------------------------------------------------- quadratic fields

@dataclass(frozen=True)
class QuadElem:
    """u + v*sqrt(D) in Q(sqrt(D))."""

    D: int
    u: Fraction
    v: Fraction = Fraction(0)

    def _lift(self, other):
        if isinstance(other, QuadElem):
            if other.D != self.D:
                raise ValueError("different quadratic fields")
            return other
        return QuadElem(self.D, Fraction(other))

    def __add__(self, other):
        o = self._lift(other)
        return QuadElem(self.D, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.D, -self.u, -self.v)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        return QuadElem(self.D, self.u * o.u + self.D * self.v * o.v, self.u * o.v + self.v * o.u)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = QuadElem(self.D, Fraction(1))
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self):
        return QuadElem(self.D, self.u, -self.v)

    def norm(self) -> Fraction:
        return self.u * self.u - self.D * self.v * self.v

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def quadratic_sqrt(alpha: QuadElem) -> QuadElem | None:
    """A square root of ``alpha`` in Q(sqrt(D)), or None.

    Solves s^2 + D t^2 = u, 2 s t = v over Q.
    """
    D, u, v = alpha.D, alpha.u, alpha.v
    if v == 0:
        s = _rational_sqrt(u)
        if s is not None:
            return QuadElem(D, s)
        t = _rational_sqrt(u / D)
        if t is not None:
            return QuadElem(D, Fraction(0), t)
        return None
    # t^2 = T with D T^2 - u T + v^2/4 = 0
    disc = u * u - D * v * v
    r = _rational_sqrt(disc)
    if r is None:
        return None
    for T in ((u + r) / (2 * D), (u - r) / (2 * D)):
        t = _rational_sqrt(T)
        if t:
            return QuadElem(D, v / (2 * t), t)
    return None


@dataclass(frozen=True)
class QuadraticPoint:
    disc: int
    x: tuple[Fraction, Fraction]
    y: tuple[Fraction, Fraction]

    def to_json(self) -> dict:
        return {
            "D": self.disc,
            "x": [str(self.x[0]), str(self.x[1])],
            "y": [str(self.y[0]), str(self.y[1])],
        }


def _squarefree(n: int) -> bool:
    n = abs(n)
    q = 2
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        q += 1
    return True


def search_quadratic_points(curve: CurveModel, search_bound: int) -> list[QuadraticPoint]:
    """Brute-force unexpected quadratic points with small x.

    x runs over (a + b sqrt(D)) / c with |a|, |D| <= bound, 1 <= b, c <= bound
    and gcd(a, b, c) = 1; one representative per Galois-conjugate pair (b > 0).
    """
    f = curve.ascending
    n = len(f) - 1
    out = []
    discs = [D for D in range(-search_bound, search_bound + 1) if D not in (0, 1) and _squarefree(D)]
    for D in discs:
        for c in range(1, search_bound + 1):
            cpow = [c**k for k in range(n + 1)]
            for b in range(1, search_bound + 1):
                for a in range(-search_bound, search_bound + 1):
                    if math.gcd(math.gcd(a, b), c) != 1:
                        continue
                    # c^n f((a + b sqrt D)/c) = U + V sqrt D, all in Z
                    U, V = 0, 0
                    for k in range(n, -1, -1):
                        U, V = U * a + V * b * D, U * b + V * a
                        U += f[k] * cpow[n - k]
                    if V == 0 and U == 0:
                        ys = [(Fraction(0), Fraction(0))]
                    else:
                        # the norm of a square is a square
                        norm = U * U - D * V * V
                        if norm < 0 or math.isqrt(norm) ** 2 != norm:
                            continue
                        val = QuadElem(D, Fraction(U, cpow[n]), Fraction(V, cpow[n]))
                        root = quadratic_sqrt(val)
                        if root is None:
                            continue
                        ys = [(root.u, root.v), (-root.u, -root.v)]
                    x = (Fraction(a, c), Fraction(b, c))
                    for y in ys:
                        out.append(QuadraticPoint(D, x, y))
    out.sort(key=lambda P: (abs(P.disc), P.disc, P.x, P.y))
    return out


def verify_point(curve: CurveModel, point: QuadraticPoint) -> bool:
    """Re-check y^2 = f(x) with the QuadElem field arithmetic."""
    x = QuadElem(point.disc, *point.x)
    y = QuadElem(point.disc, *point.y)
    fx = QuadElem(point.disc, Fraction(0))
    for c in curve.coeffs:
        fx = fx * x + c
    return (y * y - fx).is_zero()
