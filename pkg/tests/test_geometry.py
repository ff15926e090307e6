import math

import numpy as np
import pytest

from tukeyregion import (Arc, PointCloud, check_general_position, complement_basis, generate_gaussian,
                         lift_direction, polar_angles)
from tukeyregion.errors import DegenerateProjection, RankDeficient
from tukeyregion.geometry import ComplementBasis, tuple_normals


def test_pointcloud_validation():
    with pytest.raises(ValueError):
        PointCloud(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        PointCloud(np.array([[0.0, np.nan], [1, 1], [2, 0]]))
    c = PointCloud([[0, 0], [1, 0], [0, 1]])
    assert (c.n, c.p) == (3, 2)
    with pytest.raises(ValueError):
        c.points[0, 0] = 5.0


def test_complement_basis_axis_aligned():
    c = PointCloud([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])
    b = complement_basis(c, (0, 1))
    M = b.matrix()
    assert np.allclose(M.T @ M, np.eye(2))
    assert np.allclose(M[0], 0.0)  # spans the yz-plane


def test_complement_basis_diagonal():
    c = PointCloud([[0, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1]])
    b = complement_basis(c, (0, 1))
    assert abs(b.e1 @ [1, 1, 0]) < 1e-12 and abs(b.e2 @ [1, 1, 0]) < 1e-12
    assert abs(b.e1 @ b.e2) < 1e-12


def test_complement_basis_p2_is_canonical(square):
    b = complement_basis(square, (2,))
    assert np.allclose(b.matrix(), np.eye(2))


def test_complement_basis_rank_deficient():
    c = PointCloud([[0, 0, 0], [0, 0, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1]])
    with pytest.raises(RankDeficient):
        complement_basis(c, (0, 1))


def test_polar_angles_conventions():
    c = PointCloud([[0, 0], [1, 0], [0, -1], [-1, 0]])
    b = complement_basis(c, (0,))
    th = polar_angles(c, (0,), b)
    assert th[1] == 0.0
    assert th[2] == pytest.approx(-math.pi / 2)
    assert th[3] == -math.pi


def test_polar_angles_degenerate():
    c = PointCloud([[0, 0], [0, 0], [1, 1]])
    with pytest.raises(DegenerateProjection):
        polar_angles(c, (0,), complement_basis(c, (0,)))


@pytest.mark.parametrize("theta,side,expected", [
    (0.0, Arc.HIGH, [0, 1]),
    (0.0, Arc.LOW, [0, -1]),
    (math.pi / 2, Arc.HIGH, [-1, 0]),
])
def test_lift_direction(theta, side, expected):
    b = ComplementBasis(0, np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    assert np.allclose(lift_direction(b, theta, side), expected, atol=1e-15)


def test_tuple_normals_unit_and_orthogonal():
    c = generate_gaussian(12, 4, 3)
    t = np.array([[0, 1, 2, 3], [4, 7, 9, 11]])
    N = tuple_normals(c.points, t)
    assert np.allclose(np.linalg.norm(N, axis=1), 1.0)
    for nv, tt in zip(N, t):
        proj = c.points[tt] @ nv
        assert np.ptp(proj) < 1e-12


def test_general_position(square):
    assert check_general_position(square).passed
    bad = check_general_position(PointCloud([[0, 0], [1, 1], [2, 2], [0, 1]]))
    assert not bad.passed
    assert any(set(v[1]) >= {0, 1, 2} for v in bad.violations)
    rep = check_general_position(generate_gaussian(20, 3, 1))
    assert rep.passed and rep.exhaustive and rep.checked == math.comb(20, 3)


def test_general_position_spot_check_is_labelled():
    rep = check_general_position(generate_gaussian(60, 3, 2), cap=10, samples=200)
    assert not rep.exhaustive and "not exhaustively" in rep.summary()
