"""Brute-force validators, independent of the search code paths.

``depth_exact_small`` computes Tukey depth by enumerating candidate
directions.  With ``w_i = x_i - x``, the depth count is
``n - max_u #{i : u . w_i > 0}``.  The maximum is attained in an open cell of
the arrangement of hyperplanes ``w_i^perp``; every such cell has an extreme
ray orthogonal to ``d - 1`` independent ``w_i``.  At that ray ``u0`` the
points with ``u0 . w_i != 0`` keep their sign under small perturbations, and
the best perturbation for the ones on the ray's hyperplanes is the same
problem one dimension lower.  Near-zero inner products (within ``tol.geom``)
count as zero, which resolves points lying exactly on a candidate hyperplane
without an explicit epsilon rotation.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded
from .geometry import PointCloud
from .hull import convex_hull
from .region import RegionPolytope, Status, check_corollary_bound
from .tolerances import DEFAULT_TOL, Tolerances

__all__ = [
    "CutCount",
    "cutoff_count",
    "depth_exact_small",
    "depth_count_exact",
    "depth_upper_bound",
    "VerificationReport",
    "verify_region",
]


@dataclass(frozen=True)
class CutCount:
    below: int
    on: int
    above: int

    def __iter__(self):
        return iter((self.below, self.on, self.above))


def cutoff_count(cloud: PointCloud, u, b: float, tol: float = DEFAULT_TOL.geom) -> CutCount:
    """Classify every observation against the hyperplane ``u . z = b``."""
    s = cloud.points @ np.asarray(u, dtype=float) - b
    below = int((s < -tol).sum())
    on = int((np.abs(s) <= tol).sum())
    return CutCount(below, on, cloud.n - below - on)


def _null_vectors(W: np.ndarray, subsets: np.ndarray) -> np.ndarray:
    """Unit vectors orthogonal to each (d-1)-subset of rows of W (cofactors)."""
    d = W.shape[1]
    M = W[subsets]  # (K, d-1, d)
    cof = np.empty((subsets.shape[0], d))
    cols = np.arange(d)
    for i in range(d):
        cof[:, i] = (-1) ** i * np.linalg.det(M[:, :, cols != i]) if d > 1 else 1.0
    norms = np.linalg.norm(cof, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        return cof / norms[:, None], norms


def _max_positive(W: np.ndarray, tol: float) -> int:
    """max over u of #{i : u . W[i] > 0}, exactly, in the span of W."""
    if W.shape[0] == 0:
        return 0
    W = W[np.linalg.norm(W, axis=1) > tol]
    if W.shape[0] == 0:
        return 0
    _, sv, vt = np.linalg.svd(W, full_matrices=False)
    r = int((sv > tol * max(1.0, sv[0])).sum())
    W = W @ vt[:r].T  # coordinates in the span
    if r == 1:
        x = W[:, 0]
        return int(max((x > tol).sum(), (x < -tol).sum()))
    best = 0
    m = W.shape[0]
    subsets = np.array(list(itertools.combinations(range(m), r - 1)), dtype=np.intp)
    U, norms = _null_vectors(W, subsets)
    ok = norms > tol
    U, subsets = U[ok], subsets[ok]
    S = W @ U.T  # (m, K)
    zero = np.abs(S) <= tol
    pos = (S > tol).sum(axis=0)
    neg = (S < -tol).sum(axis=0)
    zc = zero.sum(axis=0)
    for j in range(U.shape[0]):
        if zc[j] == r - 1:
            extra = r - 1  # the defining subset is independent: all can be positive
        else:
            Z = W[zero[:, j]]
            Z = Z - np.outer(Z @ U[j], U[j])
            extra = _max_positive(Z, tol)
        best = max(best, pos[j] + extra, neg[j] + extra)
    return int(best)


def depth_count_exact(cloud: PointCloud, x, cap: int = 1_000_000,
                      tol: Tolerances = DEFAULT_TOL) -> int:
    """``n * depth(x)``; see :func:`depth_exact_small`."""
    n, p = cloud.n, cloud.p
    if math.comb(n, p - 1) > cap:
        raise CapExceeded(f"C({n}, {p - 1}) candidate directions exceed cap {cap}")
    W = cloud.points - np.asarray(x, dtype=float)
    return n - _max_positive(W, tol.geom)


def depth_exact_small(cloud: PointCloud, x, cap: int = 1_000_000,
                      tol: Tolerances = DEFAULT_TOL) -> float:
    """Exact Tukey depth of ``x`` by exhaustive candidate directions.

    The depth is ``min_u #{i : u . x_i <= u . x} / n``.

    Raises
    ------
    CapExceeded
        If ``C(n, p - 1)`` exceeds ``cap``.
    """
    return depth_count_exact(cloud, x, cap, tol) / cloud.n


def depth_upper_bound(cloud: PointCloud, x, m: int = 10_000, rng=None,
                      directions: np.ndarray | None = None) -> float:
    """Monte-Carlo upper bound: minimum count over ``m`` random directions."""
    if directions is None:
        rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        directions = rng.standard_normal((m, cloud.p))
        directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    directions = np.atleast_2d(np.asarray(directions, dtype=float))
    W = cloud.points - np.asarray(x, dtype=float)
    counts = (W @ directions.T <= 0).sum(axis=0)
    return float(counts.min()) / cloud.n


@dataclass
class VerificationReport:
    """Named pass/fail checks with details."""

    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append((name, bool(passed), detail))

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c[1]]

    def __bool__(self) -> bool:
        return self.passed

    def lines(self) -> list[str]:
        return [f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else "")
                for name, ok, detail in self.checks]


def verify_region(cloud: PointCloud, region: RegionPolytope, *, coarser: RegionPolytope | None = None,
                  oracle_cap: int = 1_000_000, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """Recompute the certificates of a region from the raw data.

    Checks
    ------
    * every halfspace cuts off exactly ``k - 1`` observations with ``p`` on it;
    * the number of halfspaces is within ``2 C(n, p - 1)``;
    * for ``k = 1``, the vertices are the extreme points of the data;
    * every vertex has exact depth at least ``k / n`` (when under ``oracle_cap``);
    * every vertex satisfies all halfspaces of ``coarser`` (nesting), if given.
    """
    rep = VerificationReport()
    k, p = region.k_tau, region.p
    bad = []
    for j, h in enumerate(region.halfspaces):
        cc = cutoff_count(cloud, h.normal, h.offset, tol.geom)
        if (cc.below, cc.on) != (k - 1, p):
            bad.append((j, tuple(cc)))
    rep.add("cut-count certificates", not bad,
            f"{len(region.halfspaces)} halfspaces" if not bad else f"{len(bad)} bad, first {bad[:3]}")
    bc = check_corollary_bound(cloud.n, p, region.num_directions)
    rep.add("direction-count bound", bc.passed, f"{bc.count} <= {bc.bound}")

    if region.status is Status.FULLDIM:
        V = region.vertices
        viol = region.slacks(V).min() if len(V) else 0.0
        rep.add("vertex feasibility", viol >= -tol.vertex, f"min slack {viol:.3g}")
        if k == 1:
            hv = cloud.points[convex_hull(cloud.points, tol).vertices]
            ok = len(hv) == len(V) and _match(hv, V, tol.geom)
            rep.add("k=1 hull recovery", ok, f"{len(V)} vertices vs {len(hv)} extreme points")
        if math.comb(cloud.n, p - 1) <= oracle_cap:
            low = [i for i, v in enumerate(V) if depth_count_exact(cloud, v, oracle_cap, tol) < k]
            rep.add("vertex depth", not low, f"{len(V)} vertices" if not low else f"vertices {low[:5]} below k")
    if coarser is not None and coarser.status is not Status.EMPTY and len(region.vertices):
        worst = float(coarser.slacks(region.vertices).min())
        rep.add("nesting", worst >= -tol.geom, f"min slack {worst:.3g}")
    return rep


def _match(A: np.ndarray, B: np.ndarray, tol: float) -> bool:
    used = np.zeros(len(B), dtype=bool)
    for a in A:
        d = np.abs(B - a).max(axis=1)
        d[used] = np.inf
        j = int(np.argmin(d))
        if d[j] > tol:
            return False
        used[j] = True
    return True
