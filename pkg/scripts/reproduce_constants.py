"""Recompute every explicit constant behind the degree-2 and degree-3 bounds."""

from fractions import Fraction

from hypercount.bounds import (
    Hypotheses,
    allocate_vanishing,
    bertrand_prime,
    crude_bound,
    cubic_pipeline,
    per_disk_bound,
    quadratic_pipeline,
)
from hypercount.curves import CurveModel
from hypercount.family import build_family_member
from hypercount.finite_fields import closed_points_P1
from hypercount.polytopes import mixed_volume, simplex_cross


def main():
    hyps = Hypotheses.parse("rank1,simple,dagger")
    rows = [
        ("MV(Z, Z), a = 3", mixed_volume([simplex_cross(2, 3)] * 2)),
        ("MV(Z, Z, Z), a = 3", mixed_volume([simplex_cross(3, 3)] * 3)),
        ("per-disk, d = 2, m = 1/2", per_disk_bound(2, 2, Fraction(1, 2), 3).non_center),
        ("per-disk, d = 3, m = 1/3", per_disk_bound(3, 2, Fraction(1, 3), 3).non_center),
        ("cubic closed points of P^1 over F_3", closed_points_P1(3, 3)),
        ("allocation, quadratic", allocate_vanishing([(2, 8, 0)] * 3, 2, fixed=4).total),
        ("allocation, cubic", allocate_vanishing([(2, 26, 0)] * 3, 2, fixed=12).total),
    ]
    g3 = CurveModel(3, build_family_member(3).lift())
    g4 = CurveModel(4, build_family_member(4).lift())
    q = quadratic_pipeline(g3, hyps)
    c = cubic_pipeline(g4, hyps)
    rows += [
        ("quadratic pairs / points", f"{q.tuple_bound} / {q.point_bound}"),
        ("cubic triples / points", f"{c.tuple_bound} / {c.point_bound}"),
    ]
    for d in range(2, 6):
        p = bertrand_prime(d)
        rows.append((f"B_{d} at p = {p}", crude_bound(d, p).value))
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name:<{width}}  {value}")


if __name__ == "__main__":
    main()
