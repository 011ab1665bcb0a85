"""Small extension fields F_{p^m}, point counts and Frobenius orbits.

Elements of F_{p^m} = F_p[t]/(modulus) are encoded as integers
``sum(c_i * p**i)`` where ``c_i`` is the coefficient of ``t**i``.  The
scalar ``FFElement`` API is convenient for hand computations; counting
uses a vectorised numpy path over the whole field at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .polyarith import is_irreducible_mod_p, is_squarefree_mod_p, mod_p

MAX_FIELD_SIZE = 10**6

INFINITY = "inf"
"""The single point at infinity of an odd-degree model; always F_p-rational."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    q = 3
    while q * q <= n:
        if n % q == 0:
            return False
        q += 2
    return True


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError("moebius is defined for n >= 1")
    result = 1
    q = 2
    while q * q <= n:
        if n % q == 0:
            n //= q
            if n % q == 0:
                return 0
            result = -result
        q += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [e for e in range(1, n + 1) if n % e == 0]


def closed_points_P1(p: int, d: int) -> int:
    """Number of degree-``d`` closed points of the projective line over F_p."""
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return p + 1
    total = sum(moebius(e) * (p ** (d // e) + 1) for e in divisors(d))
    assert total % d == 0
    return total // d


def irreducible_polynomials(p: int, m: int) -> Iterable[tuple[int, ...]]:
    """Monic irreducibles of degree m, ascending coefficients, in search order.

    The search order enumerates the lower coefficients as the base-p digits
    of 0, 1, 2, ... (constant term least significant).
    """
    for code in range(p**m):
        low = [(code // p**i) % p for i in range(m)]
        cand = low + [1]
        if is_irreducible_mod_p(cand, p):
            yield tuple(cand)


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple[int, ...]:
    return next(iter(irreducible_polynomials(p, m)))


@dataclass(frozen=True)
class FFContext:
    """The field F_{p^m} with a fixed monic irreducible modulus."""

    p: int
    m: int
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.m < 1:
            raise ValueError("extension degree must be positive")
        if self.p**self.m > MAX_FIELD_SIZE:
            raise ValueError(f"field of size {self.p}^{self.m} exceeds the exhaustive-count guard")
        if not self.modulus:
            object.__setattr__(self, "modulus", default_modulus(self.p, self.m))
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.m + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible_mod_p(list(mod), self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.m

    # -------------------------------------------------------- scalar API
    def element(self, coeffs: Sequence[int] | int) -> "FFElement":
        if isinstance(coeffs, int):
            return FFElement(self, (coeffs % self.p,) + (0,) * (self.m - 1))
        rep = [c % self.p for c in coeffs] + [0] * (self.m - len(coeffs))
        if len(rep) > self.m:
            raise ValueError("too many coefficients for this field")
        return FFElement(self, tuple(rep))

    def from_code(self, code: int) -> "FFElement":
        return FFElement(self, tuple((code // self.p**i) % self.p for i in range(self.m)))

    def elements(self) -> list["FFElement"]:
        return [self.from_code(c) for c in range(self.q)]

    def generator(self) -> "FFElement":
        """The class of t, a root of the modulus."""
        if self.m == 1:
            return self.element(-self.modulus[0])
        return self.element([0, 1])

    # ---------------------------------------------------- vector API
    @cached_property
    def _digits(self) -> np.ndarray:
        codes = np.arange(self.q, dtype=np.int64)
        return np.stack([(codes // self.p**i) % self.p for i in range(self.m)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([self.p**i for i in range(self.m)], dtype=np.int64)

    def _encode(self, arr: np.ndarray) -> np.ndarray:
        return arr @ self._weights

    def _mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Row-wise product of two (n, m) coefficient arrays."""
        p, m = self.p, self.m
        prod = np.zeros((a.shape[0], 2 * m - 1), dtype=np.int64)
        for i in range(m):
            prod[:, i:i + m] += a[:, i:i + 1] * b
        prod %= p
        mod = np.array(self.modulus, dtype=np.int64)
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[:, top].copy()
            prod[:, top - m:top + 1] -= c[:, None] * mod[None, :]
            prod %= p
        return prod[:, :m]

    def eval_all(self, f: Sequence[int]) -> np.ndarray:
        """Codes of f(x) for every x, indexed by the code of x.

        ``f`` is ascending with integer coefficients (reduced mod p here).
        """
        x = self._digits
        acc = np.zeros_like(x)
        for c in reversed(list(f)):
            acc = self._mul(acc, x)
            acc[:, 0] = (acc[:, 0] + c) % self.p
        return self._encode(acc)

    @cached_property
    def square_roots(self) -> np.ndarray:
        """``sqrt[c]`` is some y with y*y = c, or -1 when c is a non-square."""
        sq = self._encode(self._mul(self._digits, self._digits))
        table = np.full(self.q, -1, dtype=np.int64)
        table[sq[::-1]] = np.arange(self.q, dtype=np.int64)[::-1]
        return table

    @cached_property
    def square_table(self) -> np.ndarray:
        """Boolean table of nonzero squares."""
        table = self.square_roots >= 0
        table[0] = False
        return table

    def neg_code(self, code: int) -> int:
        return (-self.from_code(code)).code


@dataclass(frozen=True)
class FFElement:
    ctx: FFContext
    rep: tuple[int, ...]

    @property
    def code(self) -> int:
        return sum(c * self.ctx.p**i for i, c in enumerate(self.rep))

    def _check(self, other):
        if isinstance(other, int):
            return self.ctx.element(other)
        if other.ctx != self.ctx:
            raise ValueError("elements live in different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FFElement(self.ctx, tuple((a + b) % self.ctx.p for a, b in zip(self.rep, other.rep)))

    __radd__ = __add__

    def __neg__(self):
        return FFElement(self.ctx, tuple(-a % self.ctx.p for a in self.rep))

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        p, m = self.ctx.p, self.ctx.m
        prod = [0] * (2 * m - 1)
        for i, a in enumerate(self.rep):
            if a:
                for j, b in enumerate(other.rep):
                    prod[i + j] += a * b
        mod = self.ctx.modulus
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[top] % p
            if c:
                for k in range(m + 1):
                    prod[top - m + k] -= c * mod[k]
        return FFElement(self.ctx, tuple(c % p for c in prod[:m]))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.ctx.element(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self):
        if not any(self.rep):
            raise ZeroDivisionError("inverse of zero")
        return self ** (self.ctx.q - 2)

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def frobenius(self):
        return self ** self.ctx.p

    def is_zero(self) -> bool:
        return not any(self.rep)

    def is_square(self) -> bool:
        return bool(self.ctx.square_roots[self.code] >= 0)

    def in_prime_field(self) -> bool:
        return not any(self.rep[1:])

    def __repr__(self):
        return f"FFElement({list(self.rep)} in F_{self.ctx.p}^{self.ctx.m})"


# ------------------------------------------------------------ curves mod p

def _check_curve_poly(f: Sequence[int], p: int) -> list[int]:
    f = mod_p(f, p)
    if len(f) % 2 == 1 or len(f) < 2:
        raise ValueError("need an odd-degree polynomial mod p")
    if not is_squarefree_mod_p(f, p):
        raise ValueError("f is not separable mod p")
    return f


def count_affine_points(f: Sequence[int], ctx: FFContext) -> int:
    """#{(x, y) in F_q^2 : y^2 = f(x)} by exhaustive evaluation.

    ``f`` is ascending; the point at infinity is not included.
    """
    f = _check_curve_poly(f, ctx.p)
    vals = ctx.eval_all(f)
    zero = int(np.count_nonzero(vals == 0))
    squares = int(np.count_nonzero(ctx.square_table[vals]))
    return zero + 2 * squares


def count_points(f: Sequence[int], ctx: FFContext) -> int:
    """Projective count: affine points plus the point at infinity."""
    return count_affine_points(f, ctx) + 1


def affine_points(f: Sequence[int], ctx: FFContext) -> list[tuple[int, int]]:
    """All affine points as (x_code, y_code), sorted."""
    f = _check_curve_poly(f, ctx.p)
    vals = ctx.eval_all(f)
    roots = ctx.square_roots
    pts = []
    for x, v in enumerate(vals.tolist()):
        r = int(roots[v])
        if r < 0:
            continue
        pts.append((x, r))
        if v != 0:
            pts.append((x, ctx.neg_code(r)))
    return sorted(pts)


def _frobenius_point(pt, ctx: FFContext):
    if pt == INFINITY:
        return INFINITY
    x, y = pt
    return (ctx.from_code(x).frobenius().code, ctx.from_code(y).frobenius().code)


def frobenius_orbits(points: Iterable, ctx: FFContext, include_infinity: bool = True) -> list[tuple]:
    """Partition points of C(F_{p^m}) into Frobenius orbits.

    Points are ``(x_code, y_code)`` pairs or ``INFINITY``.  Orbits come
    back sorted by (size, first point) with infinity, a fixed point, first.
    """
    remaining = set(points)
    has_inf = include_infinity or INFINITY in remaining
    remaining.discard(INFINITY)
    orbits = []
    for pt in sorted(remaining):
        if pt not in remaining:
            continue
        orbit = [pt]
        nxt = _frobenius_point(pt, ctx)
        while nxt != pt:
            orbit.append(nxt)
            nxt = _frobenius_point(nxt, ctx)
        for q in orbit:
            remaining.discard(q)
        orbits.append(tuple(orbit))
    orbits.sort(key=lambda o: (len(o), o))
    return ([(INFINITY,)] if has_inf else []) + orbits


def closed_point_counts(point_counts: Sequence[int]) -> list[int]:
    """Closed points of each degree from the counts N_1, ..., N_d.

    ``point_counts[k-1]`` is |C(F_{p^k})|; entry ``s-1`` of the result is
    the number of Frobenius orbits of size exactly s.
    """
    out = []
    for s in range(1, len(point_counts) + 1):
        total = sum(moebius(e) * point_counts[s // e - 1] for e in divisors(s))
        assert total % s == 0
        out.append(total // s)
    return out


def subfield_embedding(small: FFContext, big: FFContext):
    """Embed F_{p^k} into F_{p^{km}} by mapping t to a root of small's modulus."""
    if small.p != big.p or big.m % small.m:
        raise ValueError("no embedding between these fields")
    vals = big.eval_all(list(small.modulus))
    hits = np.flatnonzero(vals == 0)
    if not len(hits):
        raise ValueError("modulus has no root in the larger field")
    root = big.from_code(int(hits[0]))
    powers = [big.element(1)]
    for _ in range(small.m - 1):
        powers.append(powers[-1] * root)

    def embed(a: FFElement) -> FFElement:
        out = big.element(0)
        for c, pw in zip(a.rep, powers):
            out = out + pw * c
        return out

    return embed
