"""Exact feasibility of small linear systems by Fourier-Motzkin elimination.

Constraints are rows ``(a, b)`` meaning ``a . w <= b`` (inequalities) or
``a . w == b`` (equalities), with ``a`` a sequence of rationals.  The system
sizes that come up here (at most six variables, a few dozen rows) keep the
doubly-exponential worst case out of reach, and every step is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

Row = tuple[tuple[Fraction, ...], Fraction]


def _row(a: Sequence, b) -> Row:
    return tuple(Fraction(x) for x in a), Fraction(b)


def _normalize(row: Row) -> Row:
    """Scale so the first nonzero coefficient has absolute value 1."""
    a, b = row
    for x in a:
        if x:
            s = abs(x)
            return tuple(y / s for y in a), b / s
    return a, b


@dataclass
class _Step:
    var: int
    lower: list[Row]  # rows giving w_var >= ...
    upper: list[Row]  # rows giving w_var <= ...
    equal: Row | None = None  # row used to substitute w_var out


def _bound(row: Row, var: int, point: list[Fraction]) -> Fraction:
    a, b = row
    rest = sum((a[j] * point[j] for j in range(len(a)) if j != var and a[j]), Fraction(0))
    return (b - rest) / a[var]


def solve(
    nvars: int,
    inequalities: Sequence[tuple[Sequence, object]] = (),
    equalities: Sequence[tuple[Sequence, object]] = (),
) -> list[Fraction] | None:
    """A rational point satisfying every constraint, or None if infeasible."""
    ineqs = [_row(a, b) for a, b in inequalities]
    eqs = [_row(a, b) for a, b in equalities]
    for a, _ in ineqs + eqs:
        if len(a) != nvars:
            raise ValueError("constraint width does not match nvars")
    steps: list[_Step] = []
    live = set(range(nvars))

    # equalities first: each one removes a variable outright
    while eqs:
        a, b = eqs.pop()
        pivot = next((j for j in sorted(live) if a[j]), None)
        if pivot is None:
            if b != 0:
                return None
            continue
        piv = (a, b)

        def sub(row: Row) -> Row:
            ra, rb = row
            c = ra[pivot] / a[pivot]
            if not c:
                return row
            return tuple(x - c * y for x, y in zip(ra, a)), rb - c * b

        eqs = [sub(r) for r in eqs]
        ineqs = [sub(r) for r in ineqs]
        steps.append(_Step(pivot, [], [], equal=piv))
        live.discard(pivot)

    ineqs = list({_normalize(r) for r in ineqs})
    while live:
        # eliminate the variable that produces the fewest new rows
        def cost(j):
            pos = sum(1 for a, _ in ineqs if a[j] > 0)
            neg = sum(1 for a, _ in ineqs if a[j] < 0)
            return pos * neg - pos - neg, j

        var = min(live, key=cost)
        lower = [r for r in ineqs if r[0][var] < 0]
        upper = [r for r in ineqs if r[0][var] > 0]
        rest = [r for r in ineqs if r[0][var] == 0]
        new = set(rest)
        for la, lb in lower:
            for ua, ub in upper:
                cl, cu = -la[var], ua[var]
                a = tuple(cu * x + cl * y for x, y in zip(la, ua))
                new.add(_normalize((a, cu * lb + cl * ub)))
        ineqs = []
        for a, b in new:
            if not any(a):
                if b < 0:
                    return None
                continue
            ineqs.append((a, b))
        steps.append(_Step(var, lower, upper))
        live.discard(var)

    # back-substitute to recover a witness
    point = [Fraction(0)] * nvars
    for step in reversed(steps):
        if step.equal is not None:
            point[step.var] = _bound(step.equal, step.var, point)
            continue
        lo = max((_bound(r, step.var, point) for r in step.lower), default=None)
        hi = min((_bound(r, step.var, point) for r in step.upper), default=None)
        if lo is None and hi is None:
            val = Fraction(0)
        elif lo is None:
            val = hi
        elif hi is None:
            val = lo
        else:
            assert lo <= hi
            val = lo
        point[step.var] = val
    return point


def feasible(nvars, inequalities=(), equalities=()) -> bool:
    return solve(nvars, inequalities, equalities) is not None


def satisfies(point, inequalities=(), equalities=()) -> bool:
    def dot(a):
        return sum((Fraction(x) * y for x, y in zip(a, point)), Fraction(0))

    return all(dot(a) <= Fraction(b) for a, b in inequalities) and all(
        dot(a) == Fraction(b) for a, b in equalities
    )


def primitive(a: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (sign kept)."""
    den = 1
    for x in a:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in a]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints) if g else tuple(ints)
