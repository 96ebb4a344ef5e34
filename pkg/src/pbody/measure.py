"""Area computation: exact shoelace for polygons, convergent inner/outer
bracketing via support sampling for everything else.

The inner approximation is the convex hull of boundary support points
zeta(theta) = h*u + h'*u'; the outer one intersects the supporting
halfplanes of equally spaced directions.  Both areas sandwich the true
area, and doubling the direction count refines the bracket monotonically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import DegenerateInput, ToleranceNotReached
from .geometry import (
    Body,
    Polygon,
    TWO_PI,
    polygon_from_vertices,
    support_deriv_grid,
    support_grid,
)

BRACKET_START = 64
BRACKET_CAP = 1 << 22


def area_polygon(p: Polygon) -> float:
    """Shoelace area, exact up to floating point."""
    a = p.as_array()
    b = np.roll(a, -1, axis=0)
    return 0.5 * abs(float(np.sum(a[:, 0] * b[:, 1] - b[:, 0] * a[:, 1])))


def _grid(n: int) -> np.ndarray:
    return TWO_PI * np.arange(n) / n


def _support_points(body: Body, thetas: np.ndarray) -> np.ndarray:
    h = support_grid(body, thetas)
    hp = support_deriv_grid(body, thetas, side="right")
    c = np.cos(thetas)
    s = np.sin(thetas)
    return np.stack([h * c - hp * s, h * s + hp * c], axis=1)


def _chain_area(pts: np.ndarray) -> float:
    nxt = np.roll(pts, -1, axis=0)
    return 0.5 * float(np.sum(pts[:, 0] * nxt[:, 1] - nxt[:, 0] * pts[:, 1]))


def _inner_hull(body: Body, n: int) -> ConvexHull:
    pts = _support_points(body, _grid(n))
    try:
        return ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateInput(f"support points collapse at N={n}: {exc}") from exc


def _halfplane_chain(body: Body, n: int) -> np.ndarray:
    """Vertices of the intersection of the N supporting halfplanes.

    Directions are equally spaced, so consecutive-constraint intersections
    are exactly the intersection-polygon vertices: for support-function
    constraints the corner of two neighbouring halfplanes can never violate
    the one between them.
    """
    if n < 4:
        raise ValueError(f"need at least 4 directions, got {n}")
    gap = TWO_PI / n
    if gap < 1e-9:
        raise DegenerateInput("direction gap below 1e-9; intersection ill-conditioned")
    thetas = _grid(n)
    h = support_grid(body, thetas)
    c = np.cos(thetas)
    s = np.sin(thetas)
    hn = np.roll(h, -1)
    cn = np.roll(c, -1)
    sn = np.roll(s, -1)
    det = math.sin(gap)
    x = (h * sn - hn * s) / det
    y = (c * hn - cn * h) / det
    return np.stack([x, y], axis=1)


def inner_approx(body: Body, n: int) -> Polygon:
    """Hull of N boundary support points; a polygon contained in the body."""
    if n < 8:
        raise ValueError(f"need at least 8 sample directions, got {n}")
    hull = _inner_hull(body, n)
    return polygon_from_vertices(hull.points[hull.vertices])


def outer_approx(body: Body, n: int) -> Polygon:
    """Intersection of N supporting halfplanes; a polygon containing the body."""
    return polygon_from_vertices(_halfplane_chain(body, n))


@dataclass(frozen=True)
class AreaBracket:
    """Certified area interval: lower from an inner polygon, upper from an
    outer one, with the direction count that produced them."""

    lower: float
    upper: float
    samples: int

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def rel_width(self) -> float:
        return self.width / self.upper if self.upper > 0.0 else math.inf


def area_bracket(body: Body, rel_tol: float, *, start: int = BRACKET_START,
                 cap: int = BRACKET_CAP) -> AreaBracket:
    """Bracket the area of a body to a relative tolerance.

    Doubles the direction count from ``start`` until
    (upper - lower)/upper <= rel_tol.  Raises ToleranceNotReached (with the
    best bracket attached) once the count would exceed ``cap``.
    """
    if rel_tol <= 0.0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol}")
    n = start
    lower = 0.0
    upper = math.inf
    while True:
        lower = max(lower, _inner_hull(body, n).volume)
        upper = min(upper, _chain_area(_halfplane_chain(body, n)))
        if upper > 0.0 and upper - lower <= rel_tol * upper:
            return AreaBracket(lower, upper, n)
        n *= 2
        if n > cap:
            raise ToleranceNotReached(
                f"bracket width {upper - lower:.3e} above rel_tol={rel_tol} at N={n // 2}",
                bracket=AreaBracket(lower, upper, n // 2))
