
import numpy as np
import pytest

from tukeyregion import (Halfspace, Membership, Status, check_corollary_bound, contains,
                         generate_gaussian, halfspace_intersection, interior_point, tukey_region)
from tukeyregion.errors import InconsistentOffset, UnboundedLP
from tukeyregion.region import build_halfspaces
from tukeyregion.search import CriticalHyperplane, Side

SQ_HS = [Halfspace(np.array(u, float), b) for u, b in
         [([1, 0], 0), ([-1, 0], -1), ([0, 1], 0), ([0, -1], -1)]]


def test_interior_point_square():
    z, s, st = interior_point(SQ_HS)
    assert np.allclose(z, [0.5, 0.5]) and s == pytest.approx(0.5) and st is Status.FULLDIM


def test_interior_point_unbounded():
    with pytest.raises(UnboundedLP):
        interior_point(SQ_HS[:2])
    with pytest.raises(UnboundedLP):
        hs = SQ_HS[:3] + [Halfspace(np.array([1.0, 1.0]), 0.0)]
        z, s, st = interior_point(hs)
        halfspace_intersection(hs, z)


def test_intersection_square_with_redundant():
    hs = SQ_HS + [Halfspace(np.array([1.0, 1.0]) / np.sqrt(2), -1 / np.sqrt(2))]
    geo = halfspace_intersection(hs, [0.5, 0.5])
    V = geo["vertices"]
    assert sorted(map(tuple, np.round(V, 12))) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert len(geo["facets"]) == 4
    assert geo["redundant"].tolist() == [False] * 4 + [True]


def test_intersection_cube():
    hs = []
    for i in range(3):
        e = np.eye(3)[i]
        hs += [Halfspace(e, 0.0), Halfspace(-e, -1.0)]
    geo = halfspace_intersection(hs, [0.5, 0.5, 0.5])
    assert len(geo["vertices"]) == 8 and len(geo["facets"]) == 6
    assert all(len(f.vertices) == 4 for f in geo["facets"])


def test_square_regions(square):
    r = tukey_region(square, 0.25)
    assert r.status is Status.FULLDIM and len(r.vertices) == 4 and len(r.facets) == 4
    d = tukey_region(square, 0.5)
    assert d.status is Status.DEGENERATE and abs(d.chebyshev_slack) <= 1e-9
    assert np.allclose(d.interior_point, [0.5, 0.5], atol=1e-12)
    assert len(d.vertices) == 0
    e = tukey_region(square, 0.6)
    assert e.status is Status.EMPTY and e.chebyshev_slack < -1e-9


def test_contains(square):
    r = tukey_region(square, 0.25)
    assert contains(r, [0.5, 0.5]) is Membership.INSIDE
    assert contains(r, [0, 0.5]) is Membership.BOUNDARY
    assert contains(r, [2, 2]) is Membership.OUTSIDE


def test_offset_is_order_statistic():
    c = generate_gaussian(30, 3, 5)
    r = tukey_region(c, 0.2, seed=1)
    for h in r.halfspaces:
        proj = np.sort(c.points @ h.normal)
        assert proj[r.k_tau - 1] == pytest.approx(h.offset, abs=1e-12)


def test_tau_one_over_n_halfspaces_contain_all_points():
    c = generate_gaussian(20, 2, 3)
    r = tukey_region(c, 1 / 20, seed=2)
    for h in r.halfspaces:
        assert (c.points @ h.normal >= h.offset - 1e-12).all()


def test_inconsistent_offset(square):
    bad = CriticalHyperplane((0, 1), Side.LOW, np.array([0.6, 0.8]), 0.0)
    with pytest.raises(InconsistentOffset):
        build_halfspaces(square, [bad])


@pytest.mark.parametrize("n,p,count,ok", [(125, 3, 258, True), (125, 3, 7271, True), (4, 2, 4, True),
                                          (4, 2, 9, False)])
def test_corollary_bound(n, p, count, ok):
    bc = check_corollary_bound(n, p, count)
    assert bc.passed is ok
    assert bc.bound == {125: 15500, 4: 8}[n]


def test_facets_are_cyclic_ccw_from_outside():
    c = generate_gaussian(30, 3, 2)
    r = tukey_region(c, 0.1, seed=1)
    for f in r.facets:
        P = r.vertices[list(f.vertices)]
        if len(P) < 3:
            continue
        area = sum(np.cross(P[i] - P[0], P[i + 1] - P[0]) for i in range(1, len(P) - 1))
        assert area @ (-r.halfspaces[f.halfspace].normal) > 0
