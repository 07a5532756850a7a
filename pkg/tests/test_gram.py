import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import HALF, INTERIOR, QUARTER_FACE, REGULAR_IDEAL, random_members
from hypertet import minkowski as mk
from hypertet.errors import NotRealizable
from hypertet.gram import (
    GramMatrix,
    det,
    gram_from_angles,
    milnor_check,
    normals_from_gram,
    principal_minor,
)
from hypertet.membership import EDGES, DihedralAngles, is_member
from hypertet.trig import vertex_form

R = 1 / math.sqrt(2)


def test_gram_matrix_validation():
    with pytest.raises(ValueError):
        GramMatrix(np.eye(3))
    m = np.eye(4)
    m[0, 1] = 0.1
    with pytest.raises(ValueError):
        GramMatrix(m)
    with pytest.raises(ValueError):
        GramMatrix(2 * np.eye(4))
    g = GramMatrix(np.eye(4))
    with pytest.raises(ValueError):
        g.m[0, 0] = 3


def test_gram_from_angles():
    assert np.allclose(gram_from_angles(DihedralAngles(*[HALF] * 6)).m, np.eye(4), atol=1e-16)
    g = gram_from_angles(QUARTER_FACE)
    assert g[0, 3] == pytest.approx(-R) and g[1, 3] == pytest.approx(-R) and g[2, 3] == pytest.approx(-R)
    assert g[0, 1] == pytest.approx(0, abs=1e-16)
    assert gram_from_angles(INTERIOR)[3, 2] == pytest.approx(-0.6)


def test_milnor_interior_example():
    # hand oracle: det = 1 - 3 * 0.36, and each 3x3 minor containing face 4 is 1 - 2 * 0.36
    rep = milnor_check(gram_from_angles(INTERIOR))
    assert rep.valid and rep.det_negative
    assert rep.det == pytest.approx(-0.08, abs=1e-15)
    assert rep.minors[(1, 2, 4)].det == pytest.approx(0.28, abs=1e-15)
    assert rep.minors[(1, 2, 3)].det == pytest.approx(1, abs=1e-15)
    assert len(rep.minors) == 4 + 6 + 4
    assert rep.failures() == []


def test_milnor_quarter_face_is_degenerate():
    # the three vertices on face 4 are ideal: 1 - 2 * (1/2) = 0
    rep = milnor_check(gram_from_angles(QUARTER_FACE))
    assert rep.det == pytest.approx(-0.5, abs=1e-15)
    assert rep.det_negative
    for k in ((1, 2, 4), (1, 3, 4), (2, 3, 4)):
        assert rep.minors[k].det == pytest.approx(0, abs=1e-15)
        assert not rep.minors[k].positive_definite
    assert not rep.valid
    assert len(rep.failures()) == 3


def test_principal_minor_leading():
    rep = principal_minor(gram_from_angles(INTERIOR), (1, 4))
    assert rep.leading == pytest.approx((1, 0.64))
    assert rep.positive_definite


@settings(max_examples=200)
@given(st.lists(st.floats(-1, 1), min_size=16, max_size=16))
def test_cofactor_det_matches_numpy(xs):
    m = np.array(xs).reshape(4, 4)
    assert det(m) == pytest.approx(np.linalg.det(m), abs=1e-12)


def test_normals_from_gram_interior():
    M = gram_from_angles(INTERIOR)
    vs = normals_from_gram(M)
    for v in vs[:3]:
        assert v.x0 == 0
    got = np.array([[mk.inner(u, w) for w in vs] for u in vs])
    assert np.max(np.abs(got - M.m)) < 1e-12
    for (i, j), alpha in zip(EDGES, INTERIOR):
        assert mk.dihedral_angle(vs[i - 1], vs[j - 1]) == pytest.approx(alpha, abs=1e-12)
    # p123 = (1, 0, 0, 0) lies strictly inside face 4
    assert mk.inner(vs[3], (1, 0, 0, 0)) > 0


def test_normals_from_gram_rejects():
    with pytest.raises(NotRealizable):
        normals_from_gram(gram_from_angles(REGULAR_IDEAL))
    with pytest.raises(NotRealizable):
        normals_from_gram(gram_from_angles(DihedralAngles(*[HALF] * 6)))


def test_normals_round_trip_members(members):
    for a in members:
        M = gram_from_angles(a)
        vs = normals_from_gram(M)
        got = np.array([[mk.inner(u, w) for w in vs] for u in vs])
        assert np.max(np.abs(got - M.m)) < 1e-12


def test_milnor_agrees_with_membership():
    rng = np.random.default_rng(21)
    n_members = 0
    for row in rng.uniform(0.3, HALF, (5_000, 6)):
        a = DihedralAngles(*map(float, row))
        m = is_member(a)
        n_members += m
        assert milnor_check(gram_from_angles(a)).valid == m
    for a in random_members(100, seed=22):
        assert milnor_check(gram_from_angles(a)).valid


@given(st.tuples(*[st.floats(0.05, HALF)] * 6))
def test_three_minors_track_vertex_form(t):
    # minor {i, j, k} is the Gram matrix of the vertex opposite face l, and its
    # determinant is exactly the vertex form of the three edges there
    a = DihedralAngles(*t)
    M = gram_from_angles(a)
    for idx, (x, y, z) in {
        (1, 2, 3): (a.e12, a.e13, a.e23),
        (1, 2, 4): (a.e12, a.e14, a.e24),
        (1, 3, 4): (a.e13, a.e14, a.e34),
        (2, 3, 4): (a.e23, a.e24, a.e34),
    }.items():
        assert principal_minor(M, idx).det == pytest.approx(vertex_form(x, y, z), abs=1e-12)
