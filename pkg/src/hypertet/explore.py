"""Exploring the space of realizable angle 6-tuples.

* :func:`slice` classifies a 2-D grid through the space (two free edges, the
  other four fixed) and renders it to CSV or PGM;
* :func:`midpoint_counterexample` scans such a grid for two interior nodes whose
  midpoint is exterior, i.e. a witness of non-convexity;
* :func:`boundary_path` follows the three-stage monotone path that carries a
  member to the part of the boundary where three vertices are ideal.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSpec, NotAMember, NumericalBreakdown
from .membership import (
    EDGE_NAMES,
    TOL,
    VERTEX_NAMES,
    VERTICES,
    DihedralAngles,
    Kind,
    Verdict,
    classify,
    face_edges,
    face_vertices,
    parse_edge,
    vertex_edges,
)

HALF_PI = math.pi / 2
PGM_LEVEL = {Kind.INTERIOR: 255, Kind.BOUNDARY: 128, Kind.EXTERIOR: 0}


@dataclass(frozen=True)
class SliceSpec:
    fixed: dict[int, float]                         # edge index -> angle
    free: tuple[int, int]                           # edge indices along x, y
    ranges: tuple[tuple[float, float, int], tuple[float, float, int]]

    def __post_init__(self):
        used = sorted([*self.fixed, *self.free])
        if used != list(range(6)):
            raise InvalidSpec(f"fixed and free edges must cover each edge once, got {used}")
        for lo, hi, n in self.ranges:
            if not (0 < lo < hi <= HALF_PI) or int(n) != n or n < 2:
                raise InvalidSpec(f"bad range ({lo}, {hi}, {n}): need 0 < lo < hi <= pi/2, n >= 2")
        for e, v in self.fixed.items():
            if not (0 < v < math.pi):
                raise InvalidSpec(f"fixed angle {EDGE_NAMES[e]} = {v} is not in (0, pi)")

    @classmethod
    def make(cls, fixed: dict[str, float], free: tuple[str, str],
             range_: tuple[float, float, int], range_y: tuple[float, float, int] | None = None):
        """Build from edge names, e.g. ``make({'e14': 1.3, ...}, ('e12', 'e13'), (0.01, pi/2, 100))``."""
        try:
            fx = {parse_edge(k): float(v) for k, v in fixed.items()}
            fr = (parse_edge(free[0]), parse_edge(free[1]))
        except ValueError as exc:
            raise InvalidSpec(str(exc)) from None
        if len(fx) != len(fixed):
            raise InvalidSpec("an edge is fixed twice")
        return cls(fx, fr, (tuple(range_), tuple(range_y or range_)))

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return tuple(np.linspace(lo, hi, int(n)) for lo, hi, n in self.ranges)

    def angles(self, x: float, y: float) -> DihedralAngles:
        vals = [0.0] * 6
        for e, v in self.fixed.items():
            vals[e] = v
        vals[self.free[0]] = float(x)
        vals[self.free[1]] = float(y)
        return DihedralAngles(*vals)

    def swapped(self) -> "SliceSpec":
        return SliceSpec(dict(self.fixed), self.free[::-1], self.ranges[::-1])


@dataclass
class SliceGrid:
    spec: SliceSpec
    xs: np.ndarray
    ys: np.ndarray
    verdicts: list[list[Verdict]]  # verdicts[i][j] at (xs[i], ys[j])

    @property
    def kinds(self) -> list[list[Kind]]:
        return [[v.kind for v in row] for row in self.verdicts]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,y,kind,codes\n")
        for x, row in zip(self.xs, self.verdicts):
            for y, v in zip(self.ys, row):
                buf.write(f"{x:.17g},{y:.17g},{v.kind.value},{v.codes()}\n")
        return buf.getvalue()

    def to_pgm(self) -> bytes:
        """Binary PGM: column = x index, top row = largest y."""
        img = np.array([[PGM_LEVEL[v.kind] for v in row] for row in self.verdicts], dtype=np.uint8)
        img = img.T[::-1]
        h, w = img.shape
        return f"P5\n{w} {h}\n255\n".encode("ascii") + img.tobytes()


def slice(spec: SliceSpec, tol: float = TOL, workers: int = 1) -> SliceGrid:  # noqa: A001
    xs, ys = spec.axes()

    def row(i):
        return [classify(spec.angles(xs[i], y), tol) for y in ys]

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(row, range(len(xs))))
    else:
        verdicts = [row(i) for i in range(len(xs))]
    return SliceGrid(spec, xs, ys, verdicts)


def _certainly_interior(A: np.ndarray, tol: float, margin: float = 1e-7) -> np.ndarray:
    """Vectorised, conservative interior test over rows of ``A`` (shape (N, 6)).

    True only where every constraint clears its band by ``margin``; rows that
    come back False still have to be decided by :func:`classify`.
    """
    ok = np.all((A > tol + margin) & (A < HALF_PI + tol - margin), axis=1)
    cos, sin = np.cos(A), np.sin(A)
    for v in VERTICES:
        e = list(vertex_edges(v))
        ok &= A[:, e].sum(axis=1) > math.pi + tol + margin
    beta = {}
    for v in VERTICES:
        i, j, k = v
        idx = {frozenset(p): e for p, e in zip(((i, j), (i, k), (j, k)), vertex_edges(v))}
        for f in v:
            g, h = [x for x in v if x != f]
            opp, s1, s2 = idx[frozenset((g, h))], idx[frozenset((f, g))], idx[frozenset((f, h))]
            with np.errstate(divide="ignore", invalid="ignore"):
                r = (cos[:, opp] + cos[:, s1] * cos[:, s2]) / (sin[:, s1] * sin[:, s2])
            beta[(f, v)] = np.arccos(np.clip(r, -1.0, 1.0))
    for f in (1, 2, 3, 4):
        s = sum(beta[(f, v)] for v in face_vertices(f))
        ok &= s < math.pi - tol - margin
    return ok


@dataclass(frozen=True)
class Counterexample:
    a: DihedralAngles
    b: DihedralAngles
    mid: DihedralAngles
    verdicts: tuple[Verdict, Verdict, Verdict]
    a_node: tuple[int, int]
    b_node: tuple[int, int]


def midpoint(a: DihedralAngles, b: DihedralAngles) -> DihedralAngles:
    return DihedralAngles(*((x + y) / 2 for x, y in zip(a, b)))


def midpoint_counterexample(spec: SliceSpec, tol: float = TOL,
                            grid: SliceGrid | None = None) -> Counterexample | None:
    """First pair of interior grid nodes with an exterior midpoint.

    Nodes are numbered row-major (x index, then y index) and pairs ``(a, b)``
    with ``a < b`` are scanned lexicographically.
    """
    grid = grid or slice(spec, tol)
    nodes = [(i, j) for i in range(len(grid.xs)) for j in range(len(grid.ys))
             if grid.verdicts[i][j].kind is Kind.INTERIOR]
    if len(nodes) < 2:
        return None
    angles = [spec.angles(grid.xs[i], grid.ys[j]) for i, j in nodes]
    A = np.array(angles)
    for n, a in enumerate(angles[:-1]):
        mids = (A[n] + A[n + 1:]) / 2
        for m in np.flatnonzero(~_certainly_interior(mids, tol)):
            b = angles[n + 1 + m]
            mid = midpoint(a, b)
            vm = classify(mid, tol)
            if vm.kind is Kind.EXTERIOR:
                ia, ib = nodes[n], nodes[n + 1 + m]
                return Counterexample(a, b, mid, (grid.verdicts[ia[0]][ia[1]], grid.verdicts[ib[0]][ib[1]], vm),
                                      ia, ib)
    return None


@dataclass(frozen=True)
class Stage:
    edges: tuple[str, ...]     # the edges being scaled
    start: float
    end: float                 # breakpoint value of the scale parameter
    saturated: str             # vertex whose angle sum reaches pi at the breakpoint


@dataclass(frozen=True)
class PathSample:
    stage: int
    param: float
    angles: DihedralAngles
    verdict: Verdict


@dataclass
class PathTrace:
    stages: list[Stage] = field(default_factory=list)
    samples: list[PathSample] = field(default_factory=list)
    end: DihedralAngles | None = None


def _scaled(a, edges, s) -> DihedralAngles:
    return DihedralAngles(*(s * x if e in edges else x for e, x in enumerate(a)))


def _first_saturating(candidates):
    """(index, parameter) of the largest breakpoint; lowest index wins ties."""
    best = None
    for k, p in candidates:
        if best is None or p > best[1]:
            best = (k, p)
    return best


def boundary_path(a: DihedralAngles, samples_per_stage: int = 8, tol: float = TOL) -> PathTrace:
    """Monotone path from a member to the set where three vertex sums equal pi.

    Stage 1 scales all angles by t until the smallest vertex sum hits pi.
    Stage 2 scales the three edges of the face opposite that vertex by u until
    a second vertex saturates.  Stage 3 scales the one edge touching neither
    saturated vertex by w until a third does.  All breakpoints are closed form.
    """
    if samples_per_stage < 2:
        raise ValueError("need at least two samples per stage")
    verdict = classify(a, tol)
    if verdict.kind is not Kind.INTERIOR:
        raise NotAMember(f"{tuple(a)} is {verdict.kind.value}: {verdict.codes()}")
    trace = PathTrace()

    def run(stage, start_angles, edges, end, saturated):
        trace.stages.append(Stage(tuple(EDGE_NAMES[e] for e in sorted(edges)), 1.0, end, VERTEX_NAMES[saturated]))
        for s in np.linspace(1.0, end, samples_per_stage):
            pt = _scaled(start_angles, edges, float(s))
            trace.samples.append(PathSample(stage, float(s), pt, classify(pt, tol)))
        return _scaled(start_angles, edges, end)

    # stage 1: uniform scaling
    sums = [a.vertex_sum(v) for v in VERTICES]
    k1 = min(range(4), key=lambda k: (sums[k], k))
    b = run(1, a, set(range(6)), math.pi / sums[k1], k1)

    # stage 2: edges of the face opposite the first saturated vertex
    s2 = set(face_edges(k1 + 1))
    cands = []
    for k, v in enumerate(VERTICES):
        if k == k1:
            continue
        inside = sum(b[e] for e in vertex_edges(v) if e in s2)
        rest = sum(b[e] for e in vertex_edges(v) if e not in s2)
        cands.append((k, (math.pi - rest) / inside))
    k2, u = _first_saturating(cands)
    c = run(2, b, s2, u, k2)

    # stage 3: the single edge avoiding both saturated vertices
    (e3,) = set(range(6)) - set(vertex_edges(VERTICES[k1])) - set(vertex_edges(VERTICES[k2]))
    cands = []
    for k, v in enumerate(VERTICES):
        if k in (k1, k2):
            continue
        rest = sum(c[e] for e in vertex_edges(v) if e != e3)
        cands.append((k, (math.pi - rest) / c[e3]))
    k3, w = _first_saturating(cands)
    if w <= 0:
        raise NumericalBreakdown(f"stage 3 would drive {EDGE_NAMES[e3]} to {w * c[e3]!r}")
    trace.end = run(3, c, {e3}, w, k3)
    return trace
