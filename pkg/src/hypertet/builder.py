"""Construct the compact tetrahedron with prescribed dihedral angles.

The route is purely geometric: face angles give the edge lengths (dual
hyperbolic law of cosines), face 4 is placed with its vertices on the
positive x, y, z axes of the Poincare ball, the last vertex is trilaterated
from its three edge lengths, and the face normals are read off as
orthocomplements of vertex triples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import minkowski as mk
from .errors import InconsistentLengths, NotAMember, NumericalBreakdown, ObtuseTriangle
from .membership import (
    EDGES,
    FACES,
    VERTICES,
    DihedralAngles,
    FaceAngleTable,
    classify,
    Kind,
    edge_index,
    face_angles,
    face_vertices,
)
from .trig import EPS_CLAMP

EPS_LEN = 1e-9


@dataclass(frozen=True)
class EdgeLengths:
    lengths: tuple[float, ...]                  # canonical edge order
    per_face: tuple[tuple[float, float], ...]   # (from face i, from face j) for e_ij

    @property
    def discrepancy(self) -> float:
        return max(abs(u - v) for u, v in self.per_face)


@dataclass(frozen=True)
class Tetrahedron:
    normals: tuple[mk.PlaneNormal, ...]      # normals[f - 1] bounds face f
    vertices: tuple[mk.HyperbolicPoint, ...]  # vertices[l - 1] is opposite face l

    def vertex(self, triple: tuple[int, int, int]) -> mk.HyperbolicPoint:
        (l,) = set(FACES) - set(triple)
        return self.vertices[l - 1]

    def check(self, tol: float = 1e-9) -> None:
        """Raise ``AssertionError`` unless incidence and half-space invariants hold."""
        for l, p in zip(FACES, self.vertices):
            for f, v in zip(FACES, self.normals):
                ip = mk.inner(p, v)
                if f == l:
                    assert ip > 0, f"vertex {l} outside half-space {f}: {ip}"
                else:
                    assert abs(ip) <= tol, f"vertex {l} off face {f}: {ip}"


def _require_member(a: DihedralAngles) -> None:
    verdict = classify(a)
    if verdict.kind is not Kind.INTERIOR:
        raise NotAMember(f"{tuple(a)} is {verdict.kind.value}: {verdict.codes()}")


def _edge_from_face(beta: FaceAngleTable, face: int, other: int) -> float:
    """Length of edge e_{face,other} computed inside ``face``."""
    ends = [v for v in face_vertices(face) if other in v]
    (far,) = [v for v in face_vertices(face) if other not in v]
    bu, bv, bw = beta[(face, ends[0])], beta[(face, ends[1])], beta[(face, far)]
    c = (math.cos(bu) * math.cos(bv) + math.cos(bw)) / (math.sin(bu) * math.sin(bv))
    return math.acosh(max(c, 1.0))


def edge_lengths(a: DihedralAngles, eps: float = EPS_LEN) -> EdgeLengths:
    _require_member(a)
    beta = face_angles(a)
    pairs = tuple((_edge_from_face(beta, i, j), _edge_from_face(beta, j, i)) for i, j in EDGES)
    for (i, j), (u, v) in zip(EDGES, pairs):
        if abs(u - v) > eps:
            raise InconsistentLengths(f"e{i}{j}: face {i} gives {u!r}, face {j} gives {v!r}")
    return EdgeLengths(tuple((u + v) / 2 for u, v in pairs), pairs)


def axis_intercepts(s1: float, s2: float, s3: float) -> tuple[float, float, float]:
    """Axis distances of a triangle placed on the positive x, y, z axes.

    ``s1`` is the side opposite the x-axis vertex (between the y and z
    vertices), and cyclically.  Solves ``cosh s_i = cosh a_j cosh a_k``.
    """
    c1, c2, c3 = math.cosh(s1), math.cosh(s2), math.cosh(s3)
    quotients = (c2 * c3 / c1, c3 * c1 / c2, c1 * c2 / c3)
    for q in quotients:
        if q < 1.0 - EPS_CLAMP:
            raise ObtuseTriangle(f"cosh^2 of an intercept would be {q!r} < 1")
    return tuple(math.acosh(math.sqrt(max(q, 1.0))) for q in quotients)


def _axis_point(axis: int, d: float) -> np.ndarray:
    p = np.zeros(4)
    p[0] = math.cosh(d)
    p[axis] = math.sinh(d)
    return p


def _trilaterate(base: list[np.ndarray], dists: list[float], tol: float) -> np.ndarray:
    """The point at the given distances from three base points, on the positive-orientation side."""
    P = np.array(base)
    G = np.array([[mk.inner(p, q) for q in base] for p in base])
    if abs(np.linalg.det(G)) < tol:
        raise NumericalBreakdown("base vertices are (nearly) collinear")
    c = np.linalg.solve(G, [-math.cosh(d) for d in dists])
    w0 = c @ P
    n = mk.normalize(mk.orthocomplement(*base))
    lam2 = -1.0 - mk.inner(w0, w0)
    if lam2 < -tol:
        raise NumericalBreakdown(f"trilateration has no real solution (lambda^2 = {lam2:.3g})")
    lam = math.sqrt(max(lam2, 0.0))
    for w in (w0 + lam * np.array(n), w0 - lam * np.array(n)):
        if np.linalg.det(np.vstack([P, w])) > 0:
            return w
    raise NumericalBreakdown("fourth vertex is coplanar with the base face")


def _normals_from_vertices(vertices) -> tuple[mk.PlaneNormal, ...]:
    normals = []
    for f in FACES:
        on_face = [vertices[l - 1] for l in FACES if l != f]
        n = np.array(mk.orthocomplement(*on_face))
        if mk.inner(vertices[f - 1], n) < 0:
            n = -n
        normals.append(mk.normalize(n))
    return tuple(normals)


def vertices_from_normals(normals) -> tuple[mk.HyperbolicPoint, ...]:
    """Vertices of the tetrahedron bounded by four inward normals."""
    out = []
    for l in FACES:
        p = mk.normalize(mk.orthocomplement(*(normals[f - 1] for f in FACES if f != l)))
        if not isinstance(p, mk.HyperbolicPoint):
            raise NumericalBreakdown(f"vertex {l} is not a finite point")
        if mk.inner(p, normals[l - 1]) <= 0:
            raise NumericalBreakdown(f"vertex {l} lies outside the half-space of face {l}")
        out.append(p)
    return tuple(out)


def build(a: DihedralAngles, tol: float = 1e-9) -> Tetrahedron:
    """The unique compact tetrahedron with dihedral angles ``a``, in canonical pose.

    p234, p134, p124 sit on the positive x, y, z axes; p123 is chosen so that
    the 4x4 matrix of vertex coordinates has positive determinant.
    """
    s = edge_lengths(a).lengths
    # face 4: p234-p134 along e34, p134-p124 along e14, p124-p234 along e24
    a1, a2, a3 = axis_intercepts(s[edge_index(1, 4)], s[edge_index(2, 4)], s[edge_index(3, 4)])
    base = [_axis_point(1, a1), _axis_point(2, a2), _axis_point(3, a3)]
    # p123 reaches p234 along e23, p134 along e13, p124 along e12
    dists = [s[edge_index(2, 3)], s[edge_index(1, 3)], s[edge_index(1, 2)]]
    top = _trilaterate(base, dists, tol)
    vertices = tuple(mk.normalize(p) for p in (*base, top))
    if not all(isinstance(p, mk.HyperbolicPoint) for p in vertices):
        raise NumericalBreakdown("a constructed vertex is not timelike")
    return Tetrahedron(_normals_from_vertices(vertices), vertices)


@dataclass(frozen=True)
class Measurement:
    dihedrals: DihedralAngles
    edges: tuple[float, ...]
    face_angle_check: FaceAngleTable


def measure(T: Tetrahedron) -> Measurement:
    dihedrals = DihedralAngles(*(mk.dihedral_angle(T.normals[i - 1], T.normals[j - 1]) for i, j in EDGES))
    edges = []
    for i, j in EDGES:
        p, q = (T.vertex(v) for v in VERTICES if i in v and j in v)
        edges.append(mk.distance(p, q))
    return Measurement(dihedrals, tuple(edges), face_angles(dihedrals))


def export_off(T: Tetrahedron) -> str:
    """Geomview OFF mesh of ``T`` in Poincare-ball coordinates.

    Edges are straight Euclidean chords between the ball points, not geodesic
    arcs.  Faces are wound counter-clockwise seen from outside.
    """
    pts = [np.array(mk.to_ball(p)) for p in T.vertices]
    lines = ["OFF", "4 4 6"]
    lines += [" ".join(format(float(c), ".17g") for c in p) for p in pts]
    for f in FACES:
        a, b, c = (l - 1 for l in FACES if l != f)
        away = pts[a] - pts[f - 1]
        if np.dot(np.cross(pts[b] - pts[a], pts[c] - pts[a]), away) < 0:
            b, c = c, b
        lines.append(f"3 {a} {b} {c}")
    return "\n".join(lines) + "\n"
