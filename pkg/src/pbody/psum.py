"""Firey p-sum algebra and the exact endpoint oracles.

The p-sum of two origin-containing bodies is defined through support
functions, so for general p the result stays symbolic in the body tree
and is only measured later.  The endpoints have exact polygon oracles:
p = 1 is the Minkowski sum (edge-wise merge), p = infinity the convex
hull of the union.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NegativeSupport
from .geometry import (
    Body,
    Polygon,
    PSumBody,
    TWO_PI,
    polygon_from_vertices,
    support_grid,
)

ORIGIN_CHECK_SAMPLES = 4096


def as_exponent(p) -> float:
    """Validate a p-sum exponent: a real >= 1, or infinity ('inf' accepted)."""
    if isinstance(p, str):
        if p.strip().lower() in ("inf", "infinity", "oo"):
            return math.inf
        p = float(p)
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ValueError(f"p-sum exponent must be >= 1 or inf, got {p}")
    return p


def _min_support(body: Body) -> float:
    """Lower estimate of min_theta h: exact for polygons, sampled otherwise."""
    if isinstance(body, Polygon):
        angles = body.edge_normal_angles()
        return float(support_grid(body, angles).min())
    thetas = TWO_PI * np.arange(ORIGIN_CHECK_SAMPLES) / ORIGIN_CHECK_SAMPLES
    return float(support_grid(body, thetas).min())


def _require_origin(body: Body, name: str) -> None:
    m = _min_support(body)
    if m < -1e-12:
        raise NegativeSupport(
            f"operand {name} does not contain the origin (min support {m:.3e})")


def p_sum(a: Body, b: Body, p) -> Body:
    """Firey p-sum A +_p B of two bodies containing the origin."""
    p = as_exponent(p)
    _require_origin(a, "A")
    _require_origin(b, "B")
    return PSumBody(p, a, b)


def p_difference_body(k: Body, p) -> Body:
    """The origin-symmetric body K +_p (-K)."""
    return p_sum(k, k.reflected(), p)


def _edges_from_lowest(poly: Polygon) -> tuple[tuple[float, float], np.ndarray, np.ndarray]:
    """Start vertex (lowest y, then lowest x), edge vectors and their angles."""
    arr = poly.as_array()
    start = int(np.lexsort((arr[:, 0], arr[:, 1]))[0])
    rolled = np.roll(arr, -start, axis=0)
    edges = np.roll(rolled, -1, axis=0) - rolled
    ang = np.arctan2(edges[:, 1], edges[:, 0])
    ang = np.where(ang < 0.0, ang + TWO_PI, ang)
    return (float(rolled[0, 0]), float(rolled[0, 1])), edges, ang


def minkowski_sum_polygons(p: Polygon, q: Polygon) -> Polygon:
    """Exact Minkowski sum P + Q by merging edges in normal order.

    Both edge fans are angularly sorted when traversal starts at the
    bottom-most vertex, so a single merge pass yields the sum boundary in
    O(m + n); each output vertex is an exact sum of one vertex of P and
    one of Q.
    """
    sp, ep, ap = _edges_from_lowest(p)
    sq, eq, aq = _edges_from_lowest(q)
    cur = (sp[0] + sq[0], sp[1] + sq[1])
    chain = [cur]
    i = j = 0
    while i < len(ep) or j < len(eq):
        if j >= len(eq) or (i < len(ep) and ap[i] <= aq[j]):
            step = ep[i]
            i += 1
        else:
            step = eq[j]
            j += 1
        cur = (cur[0] + float(step[0]), cur[1] + float(step[1]))
        chain.append(cur)
    return polygon_from_vertices(chain)


def convex_hull_union(p: Polygon, q: Polygon) -> Polygon:
    """Exact convex hull of P union Q."""
    return polygon_from_vertices(list(p.vertices) + list(q.vertices))
