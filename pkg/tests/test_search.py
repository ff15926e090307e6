import numpy as np
import pytest

from tukeyregion import (PointCloud, Side, algorithm1, algorithm2, corollary_bound, cutoff_count,
                         find_critical, generate_gaussian, level_count, scan_ridge, seed_search)
from tukeyregion.errors import SeedingFailed, TiedProjection


def _tuples_sides(hs):
    return sorted((h.tuple, h.side.value) for h in hs)


def test_level_count():
    assert level_count(4, 0.25) == 1
    assert level_count(10, 0.3) == 3  # 0.3 * 10 is 3.0000000000000004
    assert level_count(4, 0.6) == 3
    assert level_count(4, 0.6, rule="floor") == 2
    assert level_count(10, 0.05) == 1
    with pytest.raises(ValueError):
        level_count(10, 0.15, rule="round")


def test_scan_ridge_square_k2(square):
    hs = scan_ridge(square, (0,), 2)
    assert [h.tuple for h in hs] == [(0, 2), (0, 2)]
    assert {h.side for h in hs} == {Side.LOW, Side.HIGH}


def test_scan_ridge_square_k1(square):
    hs = scan_ridge(square, (0,), 1)
    assert sorted(h.tuple for h in hs) == [(0, 1), (0, 3)]
    for h in hs:
        assert tuple(cutoff_count(square, h.normal, h.offset)) == (0, 2, 2)


def test_scan_ridge_no_hits(square):
    assert scan_ridge(square, (0,), 4) == []


def test_algorithm1_square(square):
    r1 = algorithm1(square, 0.25)
    assert sorted(h.tuple for h in r1) == [(0, 1), (0, 3), (1, 2), (2, 3)]
    r2 = algorithm1(square, 0.5)
    assert _tuples_sides(r2) == [((0, 2), "high"), ((0, 2), "low"), ((1, 3), "high"), ((1, 3), "low")]


def test_diagonal_halfspace_normal(square):
    # the side of the diagonal that cuts off (1, 0)
    hs = [h for h in algorithm1(square, 0.5) if h.tuple == (0, 2)]
    h = next(h for h in hs if h.normal @ [1, 0] < h.offset)
    assert np.allclose(h.normal, np.array([-1, 1]) / np.sqrt(2))
    assert abs(h.offset) < 1e-15


@pytest.mark.parametrize("tau,expected", [(0.25, 2), (0.5, 3)])
def test_seed_search_square(square, tau, expected):
    st = seed_search(square, tau, rng=42)
    assert len(st.queue) == expected
    assert st.seed_hyperplane is not None


def test_seed_search_ties():
    c = PointCloud([[0, 0], [0, 0], [1, 0], [0, 1], [1, 1]])
    with pytest.raises(TiedProjection):
        seed_search(c, 0.2, rng=0)


def test_seed_search_failure_lists_directions(square):
    with pytest.raises(SeedingFailed, match="tried"):
        seed_search(square, k=4, rng=0, max_retries=3)


@pytest.mark.parametrize("tau", [0.25, 0.5])
def test_algorithm2_square(square, tau):
    assert algorithm2(square, tau, rng=42).keys() == algorithm1(square, tau).keys()


@pytest.mark.parametrize("seed", range(1, 7))
def test_algorithm2_matches_algorithm1_gaussian(seed):
    c = generate_gaussian(40, 3, seed)
    assert algorithm2(c, 0.05, rng=seed).keys() == algorithm1(c, 0.05).keys()


def test_bound_and_parallel_agree():
    c = generate_gaussian(20, 3, 4)
    r = algorithm1(c, 0.1)
    assert len(r) <= corollary_bound(20, 3) == 380
    assert algorithm1(c, 0.1, parallel=True, batch_size=7).keys() == r.keys()
    assert algorithm2(c, 0.1, rng=1, parallel=True, batch_size=5).keys() == r.keys()


def test_hash_visited_set_gives_same_result():
    c = generate_gaussian(30, 3, 2)
    assert algorithm2(c, 0.1, rng=3, visited_budget=0).keys() == algorithm2(c, 0.1, rng=3).keys()


def test_find_critical_dispatch(square):
    assert find_critical(square, 0.25, "naive").algorithm == "naive"
    assert find_critical(square, 0.25, "bfs", seed=1).algorithm == "bfs"
    with pytest.raises(ValueError):
        find_critical(square, 0.25, "sweep")
