"""Exact Newton polygons, mixed volumes and finite-field point counts for
conditional bounds on degree-d points of odd-degree hyperelliptic curves."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    Hypotheses,
    allocate_vanishing,
    bertrand_prime,
    crude_bound,
    cubic_pipeline,
    generic_pipeline,
    per_disk_bound,
    quadratic_pipeline,
)
from .curves import (
    CurveModel,
    QuadraticPoint,
    discriminant,
    good_reduction,
    height,
    is_minimal,
    reduce_mod,
    search_quadratic_points,
)
from .errors import HypothesisError, PreconditionError
from .family import build_family_member, swan_discriminant_trinomial, verify_family_member
from .finite_fields import (
    FFContext,
    FFElement,
    closed_points_P1,
    count_affine_points,
    frobenius_orbits,
    moebius,
)
from .polytopes import Polytope, convex_hull, minkowski_sum, mixed_volume, volume
from .valued_series import (
    IntegratedSeriesSpec,
    ValuedSeries,
    integrate_shape,
    newton_polygon,
    sum_in_distinct_vars,
    truncate_integrated,
)
