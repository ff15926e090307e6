
import numpy as np
import pytest

from tukeyregion import (cutoff_count, depth_count_exact, depth_exact_small, depth_upper_bound,
                         generate_gaussian, tukey_region, verify_region)
from tukeyregion.errors import CapExceeded
from tukeyregion.region import Halfspace


def test_cutoff_count_square(square):
    u = np.array([-1.0, 1.0]) / np.sqrt(2)
    assert tuple(cutoff_count(square, u, 0.0)) == (1, 2, 1)
    assert tuple(cutoff_count(square, [1, 0], -1.0)) == (0, 0, 4)


@pytest.mark.parametrize("x,depth", [([0.5, 0.5], 0.5), ([0.0, 0.0], 0.25), ([5.0, 5.0], 0.0),
                                     ([0.5, 0.0], 0.25), ([0.25, 0.5], 0.25)])
def test_depth_exact_square(square, x, depth):
    assert depth_exact_small(square, x) == depth


def test_depth_cap(square):
    with pytest.raises(CapExceeded):
        depth_exact_small(generate_gaussian(40, 4, 1), np.zeros(4), cap=100)


def test_upper_bound(square):
    assert depth_upper_bound(square, [0.5, 0.5], m=10_000, rng=0) == 0.5
    assert depth_upper_bound(square, [5, 5], m=1, directions=[[-1, -1]]) == 0.0
    assert depth_upper_bound(square, [0.5, 0.5], directions=[[1, 0]]) == 0.5


@pytest.mark.parametrize("p", [2, 3])
def test_exact_never_above_monte_carlo(p):
    c = generate_gaussian(15, p, 7)
    rng = np.random.default_rng(0)
    for x in rng.standard_normal((10, p)) * 0.7:
        assert depth_exact_small(c, x) <= depth_upper_bound(c, x, m=4000, rng=1)


def test_exact_against_subset_removal():
    # depth count = smallest number of points whose removal puts x outside the hull
    from itertools import combinations
    from scipy.optimize import linprog

    def in_hull(P, x):
        m = len(P)
        res = linprog(np.zeros(m), A_eq=np.vstack([P.T, np.ones(m)]), b_eq=np.append(x, 1),
                      bounds=[(0, None)] * m, method="highs")
        return res.status == 0

    c = generate_gaussian(9, 2, 11)
    for x in np.random.default_rng(3).standard_normal((6, 2)) * 0.5:
        ref = 0
        for r in range(c.n + 1):
            if any(not in_hull(np.delete(c.points, list(s), axis=0), x)
                   for s in combinations(range(c.n), r)):
                ref = r
                break
        assert depth_count_exact(c, x) == ref


def test_verify_square(square):
    rep = verify_region(square, tukey_region(square, 0.25))
    assert rep.passed, rep.lines()


def test_verify_detects_corrupted_offset(square):
    r = tukey_region(square, 0.25)
    h = r.halfspaces[0]
    r.halfspaces[0] = Halfspace(h.normal, h.offset + 0.1, h.provenance)
    rep = verify_region(square, r)
    assert not rep.passed
    assert rep.failures()[0][0] == "cut-count certificates"


def test_verify_nesting():
    c = generate_gaussian(20, 3, 2)
    outer = tukey_region(c, 0.05, seed=1)
    inner = tukey_region(c, 0.1, seed=1)
    rep = verify_region(c, inner, coarser=outer)
    assert rep.passed, rep.lines()
    assert any(name == "nesting" for name, _, _ in rep.checks)
