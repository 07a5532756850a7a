"""Scalar trigonometric kernels for trivalent vertices and triangular faces.

All angles are in radians.  At a finite trivalent vertex the link is a
spherical triangle whose angles are the three dihedral angles and whose sides
are the face angles; most of what follows is the spherical law of cosines
and its consequences.
"""

from __future__ import annotations

import enum
import math

from .errors import DegenerateInput, OutOfDomain

EPS_CLAMP = 1e-9
EPS_LIGHT = 1e-12


class VertexKind(enum.Enum):
    FINITE = "finite"
    IDEAL = "ideal"
    NO_INTERSECTION = "no_intersection"


def face_angle(opposite: float, a: float, b: float, clamp: float = EPS_CLAMP) -> float:
    """Face angle at a vertex from the three dihedral angles there.

    ``a`` and ``b`` are the dihedral angles on the two edges bounding the face
    at the vertex; ``opposite`` is the dihedral angle on the third edge.
    Ratios within ``clamp`` of [-1, 1] are clamped; pass ``clamp=math.inf``
    to clamp unconditionally.
    """
    sab = math.sin(a) * math.sin(b)
    if sab < EPS_LIGHT:
        raise DegenerateInput(f"sin({a})*sin({b}) = {sab:.3g} is too small")
    r = (math.cos(opposite) + math.cos(a) * math.cos(b)) / sab
    if r > 1.0:
        if r > 1.0 + clamp:
            raise OutOfDomain(f"cos(face angle) = {r!r} > 1")
        return 0.0
    if r < -1.0:
        if r < -1.0 - clamp:
            raise OutOfDomain(f"cos(face angle) = {r!r} < -1")
        return math.pi
    return math.acos(r)


def vertex_form(a: float, b: float, c: float) -> float:
    """Determinant of the 3x3 Gram block of three planes with dihedral angles a, b, c."""
    ca, cb, cc = math.cos(a), math.cos(b), math.cos(c)
    return 1.0 - 2.0 * ca * cb * cc - ca * ca - cb * cb - cc * cc


def vertex_form_factored(a: float, b: float, c: float) -> float:
    return -4.0 * (math.cos((a + b + c) / 2) * math.cos((a - b + c) / 2)
                   * math.cos((a + b - c) / 2) * math.cos((-a + b + c) / 2))


def classify_vertex(a: float, b: float, c: float, tol: float) -> VertexKind:
    """Where three pairwise-intersecting non-obtuse planes meet."""
    excess = a + b + c - math.pi
    if excess > tol:
        return VertexKind.FINITE
    if excess >= -tol:
        return VertexKind.IDEAL
    return VertexKind.NO_INTERSECTION


def face_angle_ratio(x: float, y: float, z: float) -> float:
    return (math.cos(x) + math.cos(y) * math.cos(z)) / (math.sin(y) * math.sin(z))


def face_angle_partials(x: float, y: float, z: float) -> tuple[float, float, float]:
    """Gradient of ``F(x, y, z) = (cos x + cos y cos z) / (sin y sin z)``.

    Each component is non-positive on (0, pi/2]^3 and strictly negative on
    the open cube, so every face angle is non-decreasing in every dihedral
    angle at its vertex.
    """
    sy, sz = math.sin(y), math.sin(z)
    if sy * sz < EPS_LIGHT:
        raise DegenerateInput(f"sin({y})*sin({z}) = {sy * sz:.3g} is too small")
    cx, cy, cz = math.cos(x), math.cos(y), math.cos(z)
    dx = -math.sin(x) / (sy * sz)
    dy = -(cz + cx * cy) / (sy * sy * sz)
    dz = -(cy + cx * cz) / (sy * sz * sz)
    return dx, dy, dz


def gram_det_factored(bi: float, bj: float, bk: float,
                      al: float, am: float, an: float) -> float:
    """det of the tetrahedron's Gram matrix, written through a single face.

    ``bi, bj, bk`` are the face angles of one face and ``al, am, an`` the
    dihedral angles on the three edges bounding that face.
    """
    sines = (1 - math.cos(al) ** 2) * (1 - math.cos(am) ** 2) * (1 - math.cos(an) ** 2)
    return sines * vertex_form_factored(bi, bj, bk)
