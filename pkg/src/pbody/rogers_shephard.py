"""The functional F_p(K) = area(K +_p (-K)) / area(K) and the sharp
planar constant c_{2,p}.

F_p is maximized exactly by triangles with one vertex at the origin, so
the constant can be evaluated three independent ways: a 1-D integral
formula, area bracketing of the closed-form extremal body, and area
bracketing of a generic p-sum of the unit right triangle with its
reflection.  ``verify_extremal_consistency`` cross-checks all three.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyFailure, OriginOutside
from .geometry import Polygon, UnitTrianglePDifference, contains_origin, normalize_angle, unit_triangle
from .measure import AreaBracket, area_bracket, area_polygon
from .psum import as_exponent, convex_hull_union, minkowski_sum_polygons, p_difference_body
from .quadrature import tanh_sinh

C2P_AT_ONE = 6.0        # binom(4, 2): Minkowski-sum endpoint
C2P_AT_INF = 4.0        # 2**2: hull-of-union endpoint
SHARPNESS_SLACK = 1e-7


def triangle_pdiff_support(theta: float, p) -> float:
    """Support function of the extremal p-difference body at one angle."""
    return UnitTrianglePDifference(as_exponent(p)).support(theta)


def triangle_pdiff_boundary(theta: float, p: float) -> tuple[float, float]:
    """Boundary point of the extremal body with outward normal angle theta.

    Valid for finite p > 1.  On [0, pi/2] the point slides linearly along
    the straight edge from (1, 0) to (0, 1); on (pi/2, pi) it follows the
    strictly convex arc in closed form; the other half is the reflection.
    """
    p = float(p)
    if not (1.0 < p < math.inf):
        raise ValueError(f"boundary parametrization needs finite p > 1, got {p}")
    theta = normalize_angle(theta)
    if theta >= math.pi:
        x, y = triangle_pdiff_boundary(theta - math.pi, p)
        return (-x, -y)
    if theta <= 0.5 * math.pi:
        frac = (2.0 / math.pi) * theta
        return (1.0 - frac, frac)
    s = math.sin(theta)
    cbar = -math.cos(theta)
    q = s ** p + cbar ** p
    pref = q ** ((1.0 - p) / p)
    return (-pref * cbar ** (p - 1.0), pref * s ** (p - 1.0))


@functools.lru_cache(maxsize=None)
def _c2p_cached(p: float, abs_tol: float) -> float:
    def integrand(t: np.ndarray) -> np.ndarray:
        s = np.sin(t)
        c = np.cos(t)
        return s ** (p - 2.0) * c ** (p - 2.0) / (s ** p + c ** p) ** (2.0 * (p - 1.0) / p)

    # Symmetric about pi/4; integrate the left half where the t**(p-2)
    # endpoint singularity lives and double it.
    half, _ = tanh_sinh(integrand, 0.0, 0.25 * math.pi, abs_tol / (8.0 * (p - 1.0)))
    return 2.0 + 4.0 * (p - 1.0) * half


def c2p(p, abs_tol: float | None = None) -> float:
    """Sharp constant sup F_p over planar origin-containing bodies.

    Endpoints are exact (6 at p = 1, 4 at p = infinity); in between the
    value comes from tanh-sinh quadrature of the closed-form integral,
    with absolute error at most abs_tol (default 1e-10, loosened to 1e-8
    for p < 1.1 where the integrand is nearly non-integrable).
    """
    p = as_exponent(p)
    if p == 1.0:
        return C2P_AT_ONE
    if math.isinf(p):
        return C2P_AT_INF
    if abs_tol is None:
        abs_tol = 1e-10 if p >= 1.1 else 1e-8
    if abs_tol <= 0.0:
        raise ValueError(f"abs_tol must be positive, got {abs_tol}")
    return _c2p_cached(p, abs_tol)


@dataclass(frozen=True)
class FpReport:
    """Evaluation record for F_p(K)."""

    p: float
    body_area: float
    pdiff_area: AreaBracket
    fp: float
    slack: float

    def fp_halfwidth(self) -> float:
        """Half-width of F_p implied by the area bracket."""
        return 0.5 * self.pdiff_area.width / self.body_area


def fp(k: Polygon, p, rel_tol: float = 1e-6) -> FpReport:
    """F_p(K) for a polygon containing the origin.

    Uses the exact Minkowski-sum and hull oracles at p = 1 and p = inf;
    everything else goes through area bracketing of the symbolic p-sum at
    the given relative tolerance.
    """
    p = as_exponent(p)
    if not contains_origin(k, strict=False):
        raise OriginOutside("F_p requires the origin inside the body")
    area = area_polygon(k)
    if p == 1.0:
        exact = area_polygon(minkowski_sum_polygons(k, k.reflected()))
        bracket = AreaBracket(exact, exact, 0)
    elif math.isinf(p):
        exact = area_polygon(convex_hull_union(k, k.reflected()))
        bracket = AreaBracket(exact, exact, 0)
    else:
        bracket = area_bracket(p_difference_body(k, p), rel_tol)
    value = bracket.midpoint / area
    return FpReport(p=p, body_area=area, pdiff_area=bracket, fp=value,
                    slack=c2p(p) - value)


@dataclass(frozen=True)
class ConsistencyReport:
    """c_{2,p} evaluated along three independent pipelines."""

    p: float
    quadrature: float
    closed_form_bracket: float
    generic_bracket: float
    max_rel_deviation: float

    def values(self) -> tuple[float, float, float]:
        return (self.quadrature, self.closed_form_bracket, self.generic_bracket)


def verify_extremal_consistency(p, rel_tol: float) -> ConsistencyReport:
    """Cross-check the constant: integral formula vs. closed-form body
    bracket vs. generic p-sum bracket, all divided by the triangle area 1/2.

    Raises ConsistencyFailure when the worst pairwise relative deviation
    exceeds rel_tol.
    """
    p = as_exponent(p)
    if rel_tol <= 0.0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol}")
    tri = unit_triangle()
    tri_area = area_polygon(tri)
    quad = c2p(p)
    if p == 1.0:
        closed = area_bracket(UnitTrianglePDifference(p), rel_tol / 10.0).midpoint / tri_area
        generic = area_polygon(minkowski_sum_polygons(tri, tri.reflected())) / tri_area
    elif math.isinf(p):
        closed = area_bracket(UnitTrianglePDifference(p), rel_tol / 10.0).midpoint / tri_area
        generic = area_polygon(convex_hull_union(tri, tri.reflected())) / tri_area
    else:
        closed = area_bracket(UnitTrianglePDifference(p), rel_tol / 10.0).midpoint / tri_area
        generic = area_bracket(p_difference_body(tri, p), rel_tol / 10.0).midpoint / tri_area
    vals = (quad, closed, generic)
    dev = max(abs(a - b) / max(abs(a), abs(b))
              for i, a in enumerate(vals) for b in vals[i + 1:])
    report = ConsistencyReport(p=p, quadrature=quad, closed_form_bracket=closed,
                               generic_bracket=generic, max_rel_deviation=dev)
    if dev > rel_tol:
        raise ConsistencyFailure(
            f"pipelines disagree at p={p}: {vals}, max rel deviation {dev:.3e} > {rel_tol}")
    return report
