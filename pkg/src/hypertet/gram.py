"""Gram matrices of tetrahedra: construction, Milnor's criterion, factorization.

For inward unit normals ``v_1..v_4`` the Gram matrix is ``M_ij = <v_i, v_j>``,
so ``M_ij = -cos(alpha_ij)`` off the diagonal.  A symmetric unidiagonal 4x4
matrix comes from a compact tetrahedron exactly when ``det M < 0`` and every
proper principal submatrix is positive definite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import NotRealizable, NumericalBreakdown
from .membership import EDGES, TOL, DihedralAngles
from .minkowski import PlaneNormal


class GramMatrix:
    """A read-only symmetric unidiagonal 4x4 matrix."""

    def __init__(self, m):
        m = np.array(m, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.array_equal(m, m.T):
            raise ValueError("Gram matrix must be exactly symmetric")
        if not np.array_equal(np.diag(m), np.ones(4)):
            raise ValueError("Gram matrix must have a unit diagonal")
        m.setflags(write=False)
        self.m = m

    def __getitem__(self, ij):
        return self.m[ij]

    def __repr__(self) -> str:
        return f"GramMatrix({self.m.tolist()!r})"


def det(m) -> float:
    """Determinant of a small square matrix by cofactor expansion along the first row."""
    rows = [list(map(float, r)) for r in m]
    return _det(rows)


def _det(rows) -> float:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = 0.0
    for j in range(n):
        if rows[0][j] == 0.0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def gram_from_angles(a: DihedralAngles) -> GramMatrix:
    m = np.eye(4)
    for (i, j), alpha in zip(EDGES, a):
        m[i - 1, j - 1] = m[j - 1, i - 1] = -math.cos(alpha)
    return GramMatrix(m)


@dataclass(frozen=True)
class MinorReport:
    indices: tuple[int, ...]  # 1-based face labels
    det: float
    leading: tuple[float, ...]
    positive_definite: bool


@dataclass(frozen=True)
class MilnorReport:
    valid: bool
    det: float
    det_negative: bool
    minors: dict[tuple[int, ...], MinorReport]

    @property
    def all_minors_positive_definite(self) -> bool:
        return all(r.positive_definite for r in self.minors.values())

    def failures(self) -> list[str]:
        out = []
        if not self.det_negative:
            out.append(f"det = {self.det:.6g} is not negative")
        out += [f"minor {''.join(map(str, k))} not positive definite"
                for k, r in self.minors.items() if not r.positive_definite]
        return out


def principal_minor(M: GramMatrix, indices, tol: float = TOL, _rows=None) -> MinorReport:
    """Sylvester test on the principal submatrix picked out by 1-based ``indices``."""
    rows = _rows or M.m.tolist()
    idx = [i - 1 for i in indices]
    leading = tuple(_det([[rows[r][c] for c in idx[:k]] for r in idx[:k]]) for k in range(1, len(idx) + 1))
    return MinorReport(tuple(indices), leading[-1], leading, all(x > tol for x in leading))


def milnor_check(M: GramMatrix, tol: float = TOL) -> MilnorReport:
    rows = M.m.tolist()
    minors = {}
    for size in (1, 2, 3):
        for idx in combinations(range(1, 5), size):
            minors[idx] = principal_minor(M, idx, tol, rows)
    d = _det(rows)
    neg = d < -tol
    return MilnorReport(neg and all(r.positive_definite for r in minors.values()), d, neg, minors)


def normals_from_gram(M: GramMatrix, tol: float = TOL) -> tuple[PlaneNormal, ...]:
    """Four inward unit normals whose pairwise products reproduce ``M``.

    ``v1, v2, v3`` come from the Cholesky factor of the leading 3x3 block and
    have zero time coordinate.  ``v4 = (t, x)`` with ``L x = M[:3, 3]`` and
    ``t = -sqrt(|x|^2 - 1)``; the sign puts vertex p123 = (1, 0, 0, 0) inside
    the half-space of face 4, so all vertices land on the upper sheet.
    """
    report = milnor_check(M, tol)
    if not report.valid:
        raise NotRealizable("; ".join(report.failures()))
    L = np.linalg.cholesky(M.m[:3, :3])
    x = np.linalg.solve(L, M.m[:3, 3])
    q = float(x @ x) - 1.0
    if q < -tol:
        raise NumericalBreakdown(f"|x|^2 - 1 = {q:.3g} < 0 while solving for the fourth normal")
    t = -math.sqrt(max(q, 0.0))
    vs = [PlaneNormal(0.0, *L[i]) for i in range(3)]
    vs.append(PlaneNormal(t, *x))
    return tuple(vs)
