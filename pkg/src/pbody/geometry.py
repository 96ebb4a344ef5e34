"""Planar convex-geometry primitives.

Directions on the unit circle, convex polygons with exact support
functions, and an immutable expression tree of bodies closed under
reflection, scaling, Firey p-sums and the closed-form p-difference body
of the unit right triangle.  Every body evaluates its support function
h(theta) and the one-sided angular derivative h'(theta+-).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateInput, SingularMatrix

TWO_PI = 2.0 * math.pi

# Relative tolerance used for argmax ties, collinearity and angle hygiene.
TIE_EPS = 1e-12


def normalize_angle(theta: float) -> float:
    """Reduce an angle to [0, 2*pi), snapping values within 1e-12 of 2*pi to 0."""
    t = math.fmod(float(theta), TWO_PI)
    if t < 0.0:
        t += TWO_PI
    if TWO_PI - t < TIE_EPS:
        t = 0.0
    return t


@dataclass(frozen=True)
class Direction:
    """A unit direction on S^1 stored as an angle in [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def unit(self) -> tuple[float, float]:
        return (math.cos(self.theta), math.sin(self.theta))

    @property
    def tangent(self) -> tuple[float, float]:
        """d/dtheta of the unit vector; orthogonal to it, pointing counterclockwise."""
        return (-math.sin(self.theta), math.cos(self.theta))


def _as_theta(d) -> float:
    return d.theta if isinstance(d, Direction) else float(d)


def _frames(thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit vectors u(theta) and tangents u'(theta) as (N, 2) arrays."""
    c = np.cos(thetas)
    s = np.sin(thetas)
    return np.stack([c, s], axis=1), np.stack([-s, c], axis=1)


class Body:
    """A planar convex body given through its support function.

    Subclasses implement ``_h`` (support values on direction vectors) and
    ``_dh`` (one-sided angular derivatives on unit frames).  Both are
    vectorized; scalar accessors below wrap them.  Instances are immutable
    and all evaluations are pure.
    """

    def _h(self, u: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _dh(self, u: np.ndarray, t: np.ndarray, right: bool) -> np.ndarray:
        raise NotImplementedError

    def support(self, d) -> float:
        """h(theta): supremum of <x, u(theta)> over the body."""
        u, _ = _frames(np.array([_as_theta(d)]))
        return float(self._h(u)[0])

    def support_vector(self, w) -> float:
        """1-homogeneous support evaluated at an arbitrary vector."""
        return float(self._h(np.asarray([w], dtype=float))[0])

    def support_deriv(self, d, side: str = "right") -> float:
        """One-sided derivative of theta -> h(theta)."""
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        u, t = _frames(np.array([_as_theta(d)]))
        return float(self._dh(u, t, side == "right")[0])

    def reflected(self) -> "Body":
        return ReflectedBody(self)

    def scaled(self, c: float) -> "Body":
        return ScaledBody(c, self)


def support_grid(body: Body, thetas: np.ndarray, block: int = 1 << 16) -> np.ndarray:
    """Support values on an angle grid, evaluated in blocks to bound memory."""
    thetas = np.asarray(thetas, dtype=float)
    out = np.empty(thetas.shape[0])
    for i in range(0, thetas.shape[0], block):
        u, _ = _frames(thetas[i:i + block])
        out[i:i + block] = body._h(u)
    return out


def support_deriv_grid(body: Body, thetas: np.ndarray, side: str = "right",
                       block: int = 1 << 16) -> np.ndarray:
    """One-sided support derivatives on an angle grid."""
    thetas = np.asarray(thetas, dtype=float)
    out = np.empty(thetas.shape[0])
    for i in range(0, thetas.shape[0], block):
        u, t = _frames(thetas[i:i + block])
        out[i:i + block] = body._dh(u, t, side == "right")
    return out


class Polygon(Body):
    """Convex polygon: counterclockwise vertices, lexicographically
    smallest vertex first, no duplicate or collinear triples.

    Construct through :func:`polygon_from_vertices`, which hulls and
    canonicalizes arbitrary point input.  The direct constructor only
    accepts data already in convex position (it rotates the start vertex
    into place but will not reorder or drop points).
    """

    __slots__ = ("_verts", "_arr")

    def __init__(self, vertices: Sequence[tuple[float, float]]):
        verts = [(float(x), float(y)) for x, y in vertices]
        if len(verts) < 3:
            raise DegenerateInput(f"polygon needs >= 3 vertices, got {len(verts)}")
        start = min(range(len(verts)), key=lambda i: verts[i])
        verts = verts[start:] + verts[:start]
        arr = np.asarray(verts, dtype=float)
        ext = float(np.ptp(arr, axis=0).max())
        if ext <= 0.0:
            raise DegenerateInput("polygon has zero extent")
        a = arr
        b = np.roll(arr, -1, axis=0)
        c = np.roll(arr, -2, axis=0)
        crosses = (b[:, 0] - a[:, 0]) * (c[:, 1] - b[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - b[:, 0])
        if np.min(crosses) <= TIE_EPS * ext * ext:
            raise DegenerateInput("vertices are not in strictly convex CCW position")
        self._verts = tuple(verts)
        arr.setflags(write=False)
        self._arr = arr

    @property
    def vertices(self) -> tuple[tuple[float, float], ...]:
        return self._verts

    def as_array(self) -> np.ndarray:
        return self._arr

    def __len__(self) -> int:
        return len(self._verts)

    def __eq__(self, other) -> bool:
        return isinstance(other, Polygon) and self._verts == other._verts

    def __hash__(self) -> int:
        return hash(self._verts)

    def __repr__(self) -> str:
        return f"Polygon({list(self._verts)!r})"

    def _h(self, u: np.ndarray) -> np.ndarray:
        return (self._arr @ u.T).max(axis=0)

    def _dh(self, u: np.ndarray, t: np.ndarray, right: bool) -> np.ndarray:
        dots = self._arr @ u.T
        h = dots.max(axis=0)
        active = dots >= h - TIE_EPS * (1.0 + np.abs(h))
        td = self._arr @ t.T
        if right:
            return np.where(active, td, -np.inf).max(axis=0)
        return np.where(active, td, np.inf).min(axis=0)

    def reflected(self) -> "Polygon":
        """The body -K; exact, since vertex negation is exact."""
        return Polygon([(-x, -y) for x, y in reversed(self._verts)])

    def translated(self, dx: float, dy: float) -> "Polygon":
        return Polygon([(x + dx, y + dy) for x, y in self._verts])

    def edge_normal_angles(self) -> np.ndarray:
        """Outward normal angle of each edge, in [0, 2*pi)."""
        a = self._arr
        b = np.roll(a, -1, axis=0)
        e = b - a
        return np.mod(np.arctan2(-e[:, 0], e[:, 1]) + TWO_PI, TWO_PI)

    def diameter(self) -> float:
        a = self._arr
        d = a[:, None, :] - a[None, :, :]
        return float(np.sqrt((d * d).sum(axis=2)).max())


def polygon_from_vertices(points: Iterable[tuple[float, float]]) -> Polygon:
    """Convex hull of the input points as a canonical Polygon.

    Duplicates and collinear interior points are dropped (collinearity is
    judged at 1e-12 relative to the point-set extent).  Raises
    DegenerateInput when the hull has fewer than 3 vertices.
    """
    pts = sorted({(float(x), float(y)) for x, y in points})
    if len(pts) < 3:
        raise DegenerateInput(f"need >= 3 distinct points, got {len(pts)}")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    ext = max(max(xs) - min(xs), max(ys) - min(ys))
    if ext <= 0.0:
        raise DegenerateInput("points have zero extent")
    eps = TIE_EPS * ext * ext

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    def chain(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and cross(out[-2], out[-1], p) <= eps:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        raise DegenerateInput("hull is degenerate (all points within a line)")
    return Polygon(hull)


def unit_triangle() -> Polygon:
    """Right triangle with vertices at the origin, (1, 0) and (0, 1)."""
    return Polygon([(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)])


def linear_map(p: Polygon, m) -> Polygon:
    """Image of a polygon under a nonsingular 2x2 matrix, re-canonicalized."""
    m = np.asarray(m, dtype=float)
    if m.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {m.shape}")
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-14:
        raise SingularMatrix(f"|det M| = {abs(det):.3e} < 1e-14")
    return polygon_from_vertices(p.as_array() @ m.T)


def contains_origin(p: Polygon, strict: bool = False) -> bool:
    """Whether the origin lies in the polygon (strict: in its interior).

    Equivalent to the support being >= 0 (> 0) at every edge normal.
    """
    a = p.as_array()
    b = np.roll(a, -1, axis=0)
    c = (b[:, 0] - a[:, 0]) * (-a[:, 1]) - (b[:, 1] - a[:, 1]) * (-a[:, 0])
    return bool(np.all(c > 0.0)) if strict else bool(np.all(c >= 0.0))


def point_in_polygon(p: Polygon, q, strict: bool = False) -> bool:
    qx, qy = float(q[0]), float(q[1])
    a = p.as_array()
    b = np.roll(a, -1, axis=0)
    c = (b[:, 0] - a[:, 0]) * (qy - a[:, 1]) - (b[:, 1] - a[:, 1]) * (qx - a[:, 0])
    return bool(np.all(c > 0.0)) if strict else bool(np.all(c >= 0.0))


class ReflectedBody(Body):
    """Reflection through the origin: h_{-K}(u) = h_K(-u)."""

    __slots__ = ("child",)

    def __init__(self, child: Body):
        self.child = child

    def _h(self, u):
        return self.child._h(-u)

    def _dh(self, u, t, right):
        # d/dtheta h_K(-u(theta)) walks -u counterclockwise with tangent -u'.
        return self.child._dh(-u, -t, right)

    def reflected(self) -> Body:
        return self.child


class ScaledBody(Body):
    """Nonnegative dilation c*K."""

    __slots__ = ("c", "child")

    def __init__(self, c: float, child: Body):
        c = float(c)
        if c < 0.0:
            raise ValueError(f"scale factor must be >= 0, got {c}")
        self.c = c
        self.child = child

    def _h(self, u):
        return self.c * self.child._h(u)

    def _dh(self, u, t, right):
        return self.c * self.child._dh(u, t, right)


def reflect(b: Body) -> Body:
    """The reflected body -B, with support h_{-B}(theta) = h_B(theta + pi)."""
    return b.reflected()


class PSumBody(Body):
    """Firey p-sum of two origin-containing bodies.

    h = (h_A^p + h_B^p)^(1/p) for finite p >= 1; h = max(h_A, h_B) at
    p = infinity.  Operand validation happens in :func:`pbody.psum.p_sum`;
    this class only evaluates.
    """

    __slots__ = ("p", "a", "b")

    def __init__(self, p: float, a: Body, b: Body):
        self.p = float(p)
        if self.p < 1.0:
            raise ValueError(f"p must be >= 1, got {p}")
        self.a = a
        self.b = b

    def _h(self, u):
        ha = self.a._h(u)
        hb = self.b._h(u)
        if math.isinf(self.p):
            return np.maximum(ha, hb)
        return _pnorm(ha, hb, self.p)

    def _dh(self, u, t, right):
        ha = self.a._h(u)
        hb = self.b._h(u)
        da = self.a._dh(u, t, right)
        db = self.b._dh(u, t, right)
        if math.isinf(self.p):
            m = np.maximum(ha, hb)
            eps = TIE_EPS * (1.0 + np.abs(m))
            aa = ha >= m - eps
            ab = hb >= m - eps
            if right:
                sel = np.where(aa, da, -np.inf)
                sel = np.maximum(sel, np.where(ab, db, -np.inf))
            else:
                sel = np.where(aa, da, np.inf)
                sel = np.minimum(sel, np.where(ab, db, np.inf))
            return sel
        p = self.p
        h = _pnorm(ha, hb, p)
        denom = np.where(h > 0.0, h, 1.0)
        wa = np.power(np.where(h > 0.0, ha / denom, 0.0), p - 1.0)
        wb = np.power(np.where(h > 0.0, hb / denom, 0.0), p - 1.0)
        d = wa * da + wb * db
        zero = h == 0.0
        if np.any(zero):
            # Both operands vanish: the one-sided slopes combine in p-norm.
            if right:
                d = np.where(zero, _pnorm(np.maximum(da, 0.0), np.maximum(db, 0.0), p), d)
            else:
                d = np.where(zero, -_pnorm(np.maximum(-da, 0.0), np.maximum(-db, 0.0), p), d)
        return d


def _pnorm(x: np.ndarray, y: np.ndarray, p: float) -> np.ndarray:
    """(x^p + y^p)^(1/p) for x, y >= 0, scaled to avoid overflow."""
    m = np.maximum(x, y)
    with np.errstate(divide="ignore", invalid="ignore"):
        rx = np.where(m > 0.0, x / np.where(m > 0.0, m, 1.0), 0.0)
        ry = np.where(m > 0.0, y / np.where(m > 0.0, m, 1.0), 0.0)
        return m * np.power(np.power(rx, p) + np.power(ry, p), 1.0 / p)


class UnitTrianglePDifference(Body):
    """Closed-form p-difference body of the unit right triangle.

    The support function is pi-periodic and piecewise on [0, pi):
    cos(phi) on [0, pi/4), sin(phi) on [pi/4, pi/2), and the p-norm of
    (sin(phi), -cos(phi)) on [pi/2, pi).  At p = infinity the last branch
    degenerates to max(sin(phi), -cos(phi)).
    """

    __slots__ = ("p",)

    K1 = math.pi / 4.0
    K2 = math.pi / 2.0

    def __init__(self, p: float):
        self.p = float(p)
        if self.p < 1.0:
            raise ValueError(f"p must be >= 1, got {p}")

    def _phi(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        norms = np.sqrt(u[:, 0] ** 2 + u[:, 1] ** 2)
        theta = np.mod(np.arctan2(u[:, 1], u[:, 0]), TWO_PI)
        return np.mod(theta, math.pi), norms

    def _branch_values(self, phi: np.ndarray) -> np.ndarray:
        s = np.maximum(np.sin(phi), 0.0)
        cbar = np.maximum(-np.cos(phi), 0.0)
        if math.isinf(self.p):
            third = np.maximum(s, cbar)
        else:
            third = _pnorm(s, cbar, self.p)
        return np.where(phi < self.K1, np.cos(phi),
                        np.where(phi < self.K2, np.sin(phi), third))

    def _h(self, u):
        phi, norms = self._phi(u)
        return norms * self._branch_values(phi)

    def _third_deriv(self, phi: np.ndarray) -> np.ndarray:
        s = np.maximum(np.sin(phi), 0.0)
        c = np.cos(phi)
        cbar = np.maximum(-c, 0.0)
        p = self.p
        with np.errstate(divide="ignore", invalid="ignore"):
            base = np.power(s, p) + np.power(cbar, p)
            pref = np.where(base > 0.0, np.power(np.where(base > 0.0, base, 1.0), (1.0 - p) / p), 0.0)
        return pref * (np.power(s, p - 1.0) * c + np.power(cbar, p - 1.0) * np.sin(phi))

    def _dh(self, u, t, right):
        phi, _ = self._phi(u)
        tol = TIE_EPS
        if math.isinf(self.p):
            s = np.sin(phi)
            c = np.cos(phi)
            cbar = -c
            d_sin = c       # derivative of the sin branch
            d_cbar = s      # derivative of the -cos branch
            if right:
                third = np.where(np.abs(s - cbar) <= tol, np.maximum(d_sin, d_cbar),
                                 np.where(s > cbar, d_sin, d_cbar))
            else:
                third = np.where(np.abs(s - cbar) <= tol, np.minimum(d_sin, d_cbar),
                                 np.where(s > cbar, d_sin, d_cbar))
        else:
            third = self._third_deriv(phi)
        first = -np.sin(phi)
        second = np.cos(phi)
        if right:
            # Half-open branches [a, b) shifted left by tol so that each kink
            # angle picks up the branch on its counterclockwise side.
            out = np.where(phi < self.K1 - tol, first,
                           np.where(phi < self.K2 - tol, second, third))
            out = np.where(phi >= math.pi - tol, -np.sin(phi - math.pi), out)
        else:
            out = np.where(phi <= self.K1 + tol, first,
                           np.where(phi <= self.K2 + tol, second, third))
            # phi ~ 0 wraps to the end of the previous period: the left
            # derivative there is the third-branch limit at pi.
            out = np.where(phi <= tol, self._third_limit_at_pi(), out)
        return out

    def _third_limit_at_pi(self) -> float:
        # One-sided slope of the third branch at phi = pi: 0 for p > 1, -1 at p = 1.
        if math.isinf(self.p):
            return 0.0
        return -float(np.power(0.0, self.p - 1.0))


def support(body: Body, d) -> float:
    """Support function h_B(theta); accepts a Direction or a float angle."""
    return body.support(d)


def support_derivative(body: Body, d, side: str = "right") -> float:
    """One-sided derivative of the support function at an angle."""
    return body.support_deriv(d, side)
