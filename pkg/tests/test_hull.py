import itertools

import numpy as np
import pytest
from scipy.spatial import ConvexHull

from tukeyregion import convex_hull, generate_gaussian
from tukeyregion.errors import DegenerateInput


def test_square_and_center():
    sq = np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]], dtype=float)
    h = convex_hull(sq[:4])
    assert len(h.facets) == 4
    h5 = convex_hull(sq)
    assert h5.vertices.tolist() == [0, 1, 2, 3]
    assert len(h5.facets) == 4


def test_cube_merges_to_six_facets():
    cube = np.array(list(itertools.product([0.0, 1.0], repeat=3)))
    h = convex_hull(cube)
    assert len(h.facets) == 6 and all(len(f) == 4 for f in h.facets)


def test_euler_simplicial():
    pts = generate_gaussian(10, 3, 1).points
    h = convex_hull(pts)
    V, F = len(h.vertices), len(h.simplices)
    E = len(h.edges())
    assert E * 2 == 3 * F
    assert V - E + F == 2


@pytest.mark.parametrize("d", [2, 3, 4, 5])
@pytest.mark.parametrize("seed", range(5))
def test_matches_scipy(d, seed):
    pts = np.random.default_rng(seed).standard_normal((30 + 10 * d, d))
    ours = convex_hull(pts)
    ref = ConvexHull(pts)
    assert ours.vertices.tolist() == sorted(ref.vertices.tolist())
    assert np.all(pts @ ours.normals.T <= ours.offsets + 1e-9)


def test_degenerate_input():
    with pytest.raises(DegenerateInput):
        convex_hull(np.array([[0, 0], [1, 1], [2, 2], [3, 3]], dtype=float))
