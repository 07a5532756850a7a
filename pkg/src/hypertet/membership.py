"""Membership of dihedral-angle 6-tuples in the compact non-obtuse region.

Labelling convention (used throughout the package):

* faces are numbered 1..4;
* the edge where faces i and j meet is ``e_ij`` (i < j), and angle vectors are
  stored in the order e12, e13, e14, e23, e24, e34;
* the vertex where faces i, j, k meet is ``p_ijk``; vertex number l is the one
  opposite face l, so vertices are listed as p234, p134, p124, p123;
* vertex p_ijk carries the edges e_ij, e_ik, e_jk and face i is bounded by
  e_ij, e_ik, e_il.

A tuple is a member when (1) every angle lies in (0, pi/2], (2) every vertex
angle sum exceeds pi and (3) every face's angle sum is below pi.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

from . import trig
from .errors import UndefinedFaceAngle

TOL = 1e-9
HALF_PI = math.pi / 2

FACES = (1, 2, 3, 4)
EDGES = ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))
EDGE_NAMES = tuple(f"e{i}{j}" for i, j in EDGES)
VERTICES = ((2, 3, 4), (1, 3, 4), (1, 2, 4), (1, 2, 3))
VERTEX_NAMES = tuple("p" + "".join(map(str, v)) for v in VERTICES)


_EDGE_INDEX = {**{e: n for n, e in enumerate(EDGES)}, **{e[::-1]: n for n, e in enumerate(EDGES)}}


def edge_index(i: int, j: int) -> int:
    return _EDGE_INDEX[(i, j)]


_VERTEX_EDGES = {(i, j, k): (edge_index(i, j), edge_index(i, k), edge_index(j, k)) for i, j, k in VERTICES}


def vertex_edges(vertex: tuple[int, int, int]) -> tuple[int, int, int]:
    return _VERTEX_EDGES[vertex]


def face_edges(face: int) -> tuple[int, int, int]:
    return tuple(edge_index(face, o) for o in FACES if o != face)


_FACE_VERTICES = {f: tuple(v for v in VERTICES if f in v) for f in FACES}


def face_vertices(face: int) -> tuple[tuple[int, int, int], ...]:
    return _FACE_VERTICES[face]


def parse_edge(name: str) -> int:
    """``'e13'`` -> 1; also accepts ``'e31'``."""
    name = name.strip().lower()
    if len(name) != 3 or name[0] != "e" or not name[1:].isdigit():
        raise ValueError(f"bad edge name {name!r}")
    i, j = int(name[1]), int(name[2])
    if i == j or not {i, j} <= set(FACES):
        raise ValueError(f"bad edge name {name!r}")
    return edge_index(i, j)


class DihedralAngles(NamedTuple):
    e12: float
    e13: float
    e14: float
    e23: float
    e24: float
    e34: float

    @classmethod
    def of(cls, values) -> "DihedralAngles":
        vals = tuple(float(v) for v in values)
        if len(vals) != 6:
            raise ValueError(f"expected 6 angles, got {len(vals)}")
        for name, v in zip(EDGE_NAMES, vals):
            if not (0.0 < v < math.pi):
                raise ValueError(f"angle {name} = {v!r} is not in (0, pi)")
        return cls(*vals)

    def at(self, i: int, j: int) -> float:
        return self[edge_index(i, j)]

    def vertex_sum(self, vertex: tuple[int, int, int]) -> float:
        a, b, c = (self[k] for k in vertex_edges(vertex))
        return a + b + c

    def relabel(self, perm: dict[int, int]) -> "DihedralAngles":
        """Angles of the same tetrahedron with face ``f`` renamed ``perm[f]``."""
        out = [0.0] * 6
        for (i, j), v in zip(EDGES, self):
            out[edge_index(perm[i], perm[j])] = v
        return DihedralAngles(*out)


class FaceAngleTable:
    """The twelve face angles, keyed by ``(face, vertex)`` incident pairs."""

    def __init__(self, values: dict[tuple[int, tuple[int, int, int]], float]):
        self._values = dict(values)

    def __getitem__(self, key: tuple[int, tuple[int, int, int]]) -> float:
        return self._values[key]

    def __iter__(self) -> Iterator[tuple[int, tuple[int, int, int]]]:
        return iter(self._values)

    def __len__(self) -> int:
        return len(self._values)

    def items(self):
        return self._values.items()

    def face(self, face: int) -> tuple[float, float, float]:
        return tuple(self._values[(face, v)] for v in face_vertices(face))

    def face_sum(self, face: int) -> float:
        return sum(self.face(face))

    def __repr__(self) -> str:
        body = ", ".join(f"F{f}@p{''.join(map(str, v))}={b:.6g}" for (f, v), b in self._values.items())
        return f"FaceAngleTable({body})"


def _angles_at_vertex(a, vertex, clamp):
    """Face angles of the three faces meeting at ``vertex``."""
    i, j, k = vertex
    aij, aik, ajk = a.at(i, j), a.at(i, k), a.at(j, k)
    return {
        (i, vertex): trig.face_angle(ajk, aij, aik, clamp=clamp),
        (j, vertex): trig.face_angle(aik, aij, ajk, clamp=clamp),
        (k, vertex): trig.face_angle(aij, aik, ajk, clamp=clamp),
    }


def face_angles(a: DihedralAngles) -> FaceAngleTable:
    """All twelve face angles; raises :class:`UndefinedFaceAngle` if a vertex has no link triangle."""
    values = {}
    for v in VERTICES:
        if trig.vertex_form(*(a[k] for k in vertex_edges(v))) < -trig.EPS_CLAMP:
            raise UndefinedFaceAngle(v)
        values.update(_angles_at_vertex(a, v, clamp=math.inf))
    return FaceAngleTable({key: values[key] for f in FACES for key in ((f, v) for v in face_vertices(f))})


class Kind(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


class Status(enum.Enum):
    PASS = "pass"
    EQUAL = "equal"
    FAIL = "fail"
    NOT_EVALUABLE = "not_evaluable"


class Item(NamedTuple):
    label: str
    value: float | None
    status: Status


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    condition1: tuple[Item, ...]
    condition2: tuple[Item, ...]
    condition3: tuple[Item, ...]
    face_angles: FaceAngleTable | None

    def items(self) -> Iterator[tuple[int, Item]]:
        for n, cond in enumerate((self.condition1, self.condition2, self.condition3), 1):
            for item in cond:
                yield n, item

    def codes(self) -> str:
        """Compact failure taxonomy: ``'1!e12;2=p123;3?F4'``, or ``'-'`` when clean.

        ``!`` marks a strict failure, ``=`` an equality within tolerance and
        ``?`` a face whose angles are undefined.
        """
        mark = {Status.FAIL: "!", Status.EQUAL: "=", Status.NOT_EVALUABLE: "?"}
        parts = [f"{n}{mark[it.status]}{it.label}" for n, it in self.items() if it.status is not Status.PASS]
        return ";".join(parts) or "-"


def _band(x: float, tol: float) -> Status:
    """Status of the constraint ``x > 0``."""
    if x > tol:
        return Status.PASS
    if x >= -tol:
        return Status.EQUAL
    return Status.FAIL


def classify(a: DihedralAngles, tol: float = TOL) -> Verdict:
    c1 = []
    for name, v in zip(EDGE_NAMES, a):
        if v > HALF_PI + tol:
            st = Status.FAIL
        else:
            st = _band(v, tol)
        c1.append(Item(name, v, st))

    c2 = []
    fa = {}
    for name, vert in zip(VERTEX_NAMES, VERTICES):
        s = a.vertex_sum(vert)
        st = _band(s - math.pi, tol)
        c2.append(Item(name, s, st))
        # an equality-band vertex is treated as ideal: its face angles are clamped to the limit
        if st is Status.EQUAL or (
            st is Status.PASS and trig.vertex_form(*(a[k] for k in vertex_edges(vert))) >= -trig.EPS_CLAMP
        ):
            fa.update(_angles_at_vertex(a, vert, clamp=math.inf))

    c3 = []
    for f in FACES:
        keys = [(f, v) for v in face_vertices(f)]
        if all(k in fa for k in keys):
            s = sum(fa[k] for k in keys)
            c3.append(Item(f"F{f}", s, _band(math.pi - s, tol)))
        else:
            c3.append(Item(f"F{f}", None, Status.NOT_EVALUABLE))

    statuses = [it.status for cond in (c1, c2, c3) for it in cond]
    if all(s is Status.PASS for s in statuses):
        kind = Kind.INTERIOR
    elif Status.FAIL not in statuses and Status.EQUAL in statuses:
        kind = Kind.BOUNDARY
    else:
        kind = Kind.EXTERIOR

    table = None
    if len(fa) == 12:
        table = FaceAngleTable({k: fa[k] for f in FACES for k in ((f, v) for v in face_vertices(f))})
    return Verdict(kind, tuple(c1), tuple(c2), tuple(c3), table)


def is_member(a: DihedralAngles) -> bool:
    return classify(a).kind is Kind.INTERIOR
