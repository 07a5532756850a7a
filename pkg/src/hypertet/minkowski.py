"""Linear algebra of Minkowski space E^{3,1}.

Vectors are 4-tuples ``(x0, x1, x2, x3)`` with the indefinite form
``<u, v> = -u0 v0 + u1 v1 + u2 v2 + u3 v3``.  Hyperbolic space is the upper
sheet ``<x, x> = -1, x0 > 0``; a spacelike unit vector ``v`` describes the
plane ``{w : <w, v> = 0}`` and the closed half-space ``{w : <w, v> >= 0}``.

Every function here is pure; the vector types are immutable tuples and can be
passed straight to numpy.
"""

from __future__ import annotations

import math
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DegenerateSpan,
    IdealContact,
    LightlikeVector,
    PlanesDoNotIntersect,
    PointAtInfinity,
)

EPS_NORM = 1e-9
EPS_LIGHT = 1e-12
EPS_IDEAL = 1e-9

# signature of the form, used to lower an index
SIGNATURE = np.array([-1.0, 1.0, 1.0, 1.0])


class _Coords(NamedTuple):
    x0: float
    x1: float
    x2: float
    x3: float


class MinkowskiVector(_Coords):
    """A vector of E^{3,1}; all coordinates must be finite."""

    __slots__ = ()

    def __new__(cls, x0, x1, x2, x3):
        vals = (float(x0), float(x1), float(x2), float(x3))
        if not all(math.isfinite(c) for c in vals):
            raise ValueError(f"non-finite coordinates {vals}")
        return super().__new__(cls, *vals)

    @classmethod
    def of(cls, seq: Sequence[float]):
        return cls(*seq)

    def array(self) -> np.ndarray:
        return np.array(self, dtype=float)


class HyperbolicPoint(MinkowskiVector):
    """A point on the upper sheet of the hyperboloid."""

    __slots__ = ()

    def __new__(cls, x0, x1, x2, x3):
        self = super().__new__(cls, x0, x1, x2, x3)
        if abs(inner(self, self) + 1.0) > EPS_NORM or self.x0 <= 0:
            raise ValueError(f"{tuple(self)} is not on the upper hyperboloid sheet")
        return self


class PlaneNormal(MinkowskiVector):
    """A spacelike unit vector (the inward normal of a half-space)."""

    __slots__ = ()

    def __new__(cls, x0, x1, x2, x3):
        self = super().__new__(cls, x0, x1, x2, x3)
        if abs(inner(self, self) - 1.0) > EPS_NORM:
            raise ValueError(f"{tuple(self)} is not a unit spacelike vector")
        return self


class BallPoint(NamedTuple):
    y1: float
    y2: float
    y3: float

    @property
    def norm2(self) -> float:
        return self.y1 * self.y1 + self.y2 * self.y2 + self.y3 * self.y3


def inner(u: Sequence[float], v: Sequence[float]) -> float:
    return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2] + u[3] * v[3]


def normalize(v: Sequence[float], eps: float = EPS_LIGHT) -> PlaneNormal | HyperbolicPoint:
    """Scale ``v`` to unit length.

    Spacelike vectors become a :class:`PlaneNormal`; timelike vectors become a
    :class:`HyperbolicPoint`, flipped onto the upper sheet if necessary.
    """
    q = inner(v, v)
    if abs(q) <= eps:
        raise LightlikeVector(f"{tuple(v)} is (numerically) lightlike: <v,v> = {q:.3g}")
    if q > 0:
        s = math.sqrt(q)
        return PlaneNormal(*(c / s for c in v))
    s = math.sqrt(-q)
    if v[0] < 0:
        s = -s
    return HyperbolicPoint(*(c / s for c in v))


def dihedral_angle(v: Sequence[float], w: Sequence[float], eps: float = EPS_IDEAL) -> float:
    """Dihedral angle between the half-spaces with unit normals ``v`` and ``w``."""
    c = inner(v, w)
    c2 = c * c
    if c2 >= 1.0 + eps:
        raise PlanesDoNotIntersect(f"<v,w>^2 = {c2!r} > 1: planes are ultraparallel")
    if c2 > 1.0 - eps:
        raise IdealContact(f"<v,w>^2 = {c2!r}: planes meet at infinity")
    return math.acos(-c)


def distance(p: Sequence[float], q: Sequence[float]) -> float:
    # clamp: coincident points may give -<p,q> = 1 - ulp
    return math.acosh(max(1.0, -inner(p, q)))


def to_ball(p: Sequence[float]) -> BallPoint:
    d = 1.0 + p[0]
    return BallPoint(p[1] / d, p[2] / d, p[3] / d)


def from_ball(y: Sequence[float]) -> HyperbolicPoint:
    r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2]
    if not r2 < 1.0:
        raise PointAtInfinity(f"|y|^2 = {r2!r} is not inside the unit ball")
    d = 1.0 - r2
    return HyperbolicPoint((1.0 + r2) / d, 2 * y[0] / d, 2 * y[1] / d, 2 * y[2] / d)


def orthocomplement(v1: Sequence[float], v2: Sequence[float], v3: Sequence[float],
                    rtol: float = 1e-12) -> MinkowskiVector:
    """Return the Minkowski-orthogonal direction to three independent vectors.

    The 3x4 system ``<w, v_i> = 0`` is reduced by Gaussian elimination with full
    pivoting.  The result has unit Euclidean norm and its largest-magnitude
    coordinate (first one on ties) is positive, so the output is reproducible.
    """
    a = np.array([v1, v2, v3], dtype=float) * SIGNATURE
    scale = np.abs(a).max()
    if scale == 0.0:
        raise DegenerateSpan("all input vectors are zero")
    cols = list(range(4))
    for r in range(3):
        sub = np.abs(a[r:, r:])
        i, j = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[i, j] <= rtol * scale:
            raise DegenerateSpan(f"input vectors span rank {r} < 3")
        i += r
        j += r
        a[[r, i]] = a[[i, r]]
        a[:, [r, j]] = a[:, [j, r]]
        cols[r], cols[j] = cols[j], cols[r]
        a[r] /= a[r, r]
        for k in range(3):
            if k != r:
                a[k] -= a[k, r] * a[r]
    # reduced form: x_pivot_r + a[r,3] * x_free = 0
    w = np.empty(4)
    w[cols[3]] = 1.0
    for r in range(3):
        w[cols[r]] = -a[r, 3]
    w /= np.linalg.norm(w)
    k = int(np.argmax(np.abs(w)))
    if w[k] < 0:
        w = -w
    return MinkowskiVector(*w)
