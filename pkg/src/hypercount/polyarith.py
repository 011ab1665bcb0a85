"""Dense univariate polynomial helpers over Z, Q and F_p.

Polynomials are lists of coefficients in *ascending* degree order, so
``[c0, c1, c2]`` is ``c0 + c1*x + c2*x**2``.  Callers that speak the
leading-first convention (curve files) convert at the boundary.

Two independent resultant routes live here: ``resultant`` runs the
Euclidean recursion over Q, ``sylvester_resultant`` takes a fraction-free
determinant of the Sylvester matrix.  Tests play them against each other.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list


def trim(f: Sequence) -> list:
    out = list(f)
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(f: Sequence) -> int:
    """Degree of ``f``; the zero polynomial has degree -1."""
    return len(trim(f)) - 1


def derivative(f: Sequence) -> list:
    return [i * c for i, c in enumerate(f)][1:]


def evaluate(f: Sequence, x):
    acc = 0 * x
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _divmod_q(f: list, g: list) -> tuple[list, list]:
    f = [Fraction(c) for c in f]
    g = [Fraction(c) for c in trim(g)]
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(f) - len(g) + 1, 1)
    r = trim(f)
    lead = g[-1]
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = r[-1] / lead
        q[shift] = c
        for i, gc in enumerate(g):
            r[shift + i] -= c * gc
        r = trim(r)
    return q, r


def resultant(f: Sequence, g: Sequence) -> Fraction:
    """Resultant of ``f`` and ``g`` over Q via the Euclidean recursion."""
    f = trim([Fraction(c) for c in f])
    g = trim([Fraction(c) for c in g])
    if not f or not g:
        return Fraction(0)
    m, n = len(f) - 1, len(g) - 1
    if n == 0:
        return g[0] ** m
    if m == 0:
        return f[0] ** n
    if m < n:
        sign = -1 if (m * n) % 2 else 1
        return sign * resultant(g, f)
    _, r = _divmod_q(f, g)
    if not r:
        return Fraction(0)
    k = len(r) - 1
    sign = -1 if (m * n) % 2 else 1
    return sign * g[-1] ** (m - k) * resultant(g, r)


def discriminant(f: Sequence) -> Fraction:
    """disc(f) = (-1)^(n(n-1)/2) res(f, f') / lc(f)."""
    f = trim(f)
    n = len(f) - 1
    if n < 1:
        raise ValueError("discriminant needs a polynomial of degree >= 1")
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, derivative(f)) / Fraction(f[-1])


def sylvester_matrix(f: Sequence, g: Sequence) -> list[list]:
    """Sylvester matrix with leading coefficients first in each row."""
    f = trim(f)
    g = trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    fd = list(reversed(f))
    gd = list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def sylvester_resultant(f: Sequence[int], g: Sequence[int]) -> int:
    return bareiss_det(sylvester_matrix(f, g))


def sylvester_discriminant(f: Sequence[int]) -> int:
    f = trim(f)
    n = len(f) - 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    res = sylvester_resultant(f, derivative(f))
    q, r = divmod(sign * res, f[-1])
    assert r == 0
    return q


# ---------------------------------------------------------------- F_p[x]

def mod_p(f: Sequence[int], p: int) -> list[int]:
    return trim([c % p for c in f])


def mul_mod_p(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return mod_p(out, p)


def divmod_mod_p(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    g = mod_p(g, p)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = mod_p(f, p)
    q = [0] * max(len(r) - len(g) + 1, 1)
    inv = pow(g[-1], -1, p)
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = r[-1] * inv % p
        q[shift] = c
        for i, gc in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gc) % p
        r = trim(r)
    return trim(q), r


def gcd_mod_p(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Monic gcd over F_p (the zero polynomial if both inputs vanish)."""
    a, b = mod_p(f, p), mod_p(g, p)
    while b:
        _, r = divmod_mod_p(a, b, p)
        a, b = b, r
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def powmod_mod_p(base: Sequence[int], e: int, modulus: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = divmod_mod_p(base, modulus, p)[1]
    while e:
        if e & 1:
            result = divmod_mod_p(mul_mod_p(result, b, p), modulus, p)[1]
        b = divmod_mod_p(mul_mod_p(b, b, p), modulus, p)[1]
        e >>= 1
    return result


def is_squarefree_mod_p(f: Sequence[int], p: int) -> bool:
    f = mod_p(f, p)
    if len(f) <= 1:
        return bool(f)
    df = mod_p(derivative(f), p)
    if not df:
        return False
    return len(gcd_mod_p(f, df, p)) == 1


def prime_factors(n: int) -> list[int]:
    n = abs(n)
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    f = mod_p(f, p)
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if mod_p([a - b for a, b in _pad(powmod_mod_p(x, p**m, f, p), x)], p):
        return False
    for q in prime_factors(m):
        h = powmod_mod_p(x, p ** (m // q), f, p)
        diff = mod_p([a - b for a, b in _pad(h, x)], p)
        if len(gcd_mod_p(f, diff, p)) != 1:
            return False
    return True


def _pad(a: Sequence[int], b: Sequence[int]):
    n = max(len(a), len(b))
    return zip(list(a) + [0] * (n - len(a)), list(b) + [0] * (n - len(b)))
