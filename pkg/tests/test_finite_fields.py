import itertools
import math

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hypercount.finite_fields import (
    INFINITY,
    MAX_FIELD_SIZE,
    FFContext,
    affine_points,
    closed_point_counts,
    closed_points_P1,
    count_affine_points,
    count_points,
    divisors,
    frobenius_orbits,
    is_prime,
    moebius,
    subfield_embedding,
)
from hypercount.polyarith import is_squarefree_mod_p

FIELDS = [(3, 1), (3, 2), (3, 3), (5, 2), (7, 2), (11, 1)]


def test_is_prime_and_moebius_against_sympy():
    for n in range(1, 400):
        assert is_prime(n) == sympy.isprime(n)
        assert moebius(n) == sympy.mobius(n)


@pytest.mark.parametrize("p,d,expected", [(3, 3, 8), (3, 1, 4), (5, 2, 10), (2, 1, 3)])
def test_closed_points_examples(p, d, expected):
    assert closed_points_P1(p, d) == expected


@pytest.mark.parametrize("p,d", [(3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (7, 3)])
def test_closed_points_against_orbit_enumeration(p, d):
    # oracle: Frobenius orbits of exact size d on F_{p^d} (plus infinity when d = 1)
    ctx = FFContext(p, d)
    seen, exact = set(), 0
    for a in ctx.elements():
        if a.code in seen:
            continue
        orbit = {a.code}
        b = a.frobenius()
        while b.code not in orbit:
            orbit.add(b.code)
            b = b.frobenius()
        seen |= orbit
        exact += len(orbit) == d
    assert closed_points_P1(p, d) == exact + (1 if d == 1 else 0)


@pytest.mark.parametrize("p,m", FIELDS)
def test_field_has_expected_size_and_generator_root(p, m):
    ctx = FFContext(p, m)
    assert len({a.code for a in ctx.elements()}) == p**m
    t = ctx.generator()
    value = ctx.element(0)
    for c in reversed(ctx.modulus):
        value = value * t + c
    assert value.is_zero()


@pytest.mark.parametrize("p,m", FIELDS)
def test_multiplicative_group_is_cyclic_of_order_q_minus_1(p, m):
    ctx = FFContext(p, m)
    one = ctx.element(1)
    for a in ctx.elements()[1:]:
        assert a ** (ctx.q - 1) == one
        assert a * a.inverse() == one


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, 2), (5, 2), (3, 3)]), st.data())
def test_field_axioms(field, data):
    ctx = FFContext(*field)
    code = st.integers(0, ctx.q - 1)
    a, b, c = (ctx.from_code(data.draw(code)) for _ in range(3))
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == ctx.element(0)
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    if not b.is_zero():
        assert (a / b) * b == a


def test_field_size_guard():
    assert MAX_FIELD_SIZE == 10**6
    with pytest.raises(ValueError):
        FFContext(3, 13)
    with pytest.raises(ValueError):
        FFContext(2, 1)
    with pytest.raises(ValueError):
        FFContext(9, 1)


def _naive_affine(f, ctx):
    n = 0
    for x in ctx.elements():
        fx = ctx.element(0)
        for c in reversed(f):
            fx = fx * x + c
        n += 1 if fx.is_zero() else (2 if fx.is_square() else 0)
    return n


CURVES = [
    [-1, 0, 0, 0, 0, -1, 0, 1],  # x^7 - x^5 - 1
    [-1, 1, 0, 1, 0, 0, 0, 0, 0, 1],  # x^9 + x^3 + x - 1
    [1, 1, 0, 0, 0, 1],
    [2, 0, 1, 0, 0, 0, 0, 1],
]


GOOD = [
    (f, p, m)
    for f in CURVES
    for p, m in [(3, 1), (3, 2), (7, 1), (7, 2), (11, 1)]
    if is_squarefree_mod_p([c % p for c in f], p)
]


@pytest.mark.parametrize("f,p,m", GOOD)
def test_counts_match_naive_and_hasse_weil(f, p, m):
    ctx = FFContext(p, m)
    n = count_affine_points(f, ctx)
    assert n == _naive_affine(f, ctx) == len(affine_points(f, ctx))
    g = (len(f) - 2) // 2
    N = count_points(f, ctx)
    assert (N - ctx.q - 1) ** 2 <= 4 * g * g * ctx.q


def test_bad_models_rejected():
    ctx = FFContext(3, 1)
    with pytest.raises(ValueError):
        count_affine_points([1, 0, 1], ctx)  # even degree
    with pytest.raises(ValueError):
        count_affine_points([0, 0, 1, 1], ctx)  # x^2 (x + 1)


@pytest.mark.parametrize("f", CURVES[:2])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_orbits_partition_points_and_sizes_divide_m(f, m):
    ctx = FFContext(3, m)
    pts = affine_points(f, ctx)
    orbits = frobenius_orbits(pts, ctx)
    assert orbits[0] == (INFINITY,)
    flat = [q for o in orbits[1:] for q in o]
    assert sorted(flat) == sorted(pts)
    assert all(m % len(o) == 0 for o in orbits)


@pytest.mark.parametrize("f", CURVES[:2])
def test_closed_point_counts_invert_the_divisor_sum(f):
    counts = [count_points(f, FFContext(3, k)) for k in range(1, 6)]
    closed = closed_point_counts(counts)
    for k in range(1, 6):
        assert sum(e * closed[e - 1] for e in divisors(k)) == counts[k - 1]
    # direct orbit count over F_27 agrees on the cubic closed points
    ctx = FFContext(3, 3)
    orbits = frobenius_orbits(affine_points(f, ctx), ctx)
    assert closed[2] == sum(1 for o in orbits if len(o) == 3)


def test_family_g3_reduction_structure():
    f = [2, 0, 0, 0, 0, 2, 0, 1]
    assert count_points(f, FFContext(3, 1)) == 1
    assert count_points(f, FFContext(3, 2)) == 7


def test_subfield_embedding_is_a_ring_map():
    small, big = FFContext(3, 2), FFContext(3, 4)
    emb = subfield_embedding(small, big)
    for a, b in itertools.product(small.elements(), repeat=2):
        assert emb(a * b) == emb(a) * emb(b)
        assert emb(a + b) == emb(a) + emb(b)
    images = {emb(a).code for a in small.elements()}
    assert len(images) == 9
    assert all(big.from_code(c) ** 9 == big.from_code(c) for c in images)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert all(sum(1 for _ in divisors(n)) == sympy.divisor_count(n) for n in range(1, 60))
