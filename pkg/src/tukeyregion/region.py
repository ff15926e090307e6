"""Depth regions as explicit polytopes.

The region of level ``k / n`` is the intersection of the halfspaces
``{z : u . z >= b}`` of all critical hyperplanes.  Turning that H-description
into vertices and facets takes three steps:

1. a max-min slack LP gives a point deep inside (or certifies emptiness);
2. after centering at that point each halfspace maps to the dual point
   ``u / -b``; the convex hull of the dual points is computed;
3. every dual hull facet is one primal vertex, every dual hull vertex one
   primal facet.  Dual points strictly inside the hull are redundant
   halfspaces.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import InconsistentOffset, NumericalDegeneracy, UnboundedLP
from .geometry import PointCloud
from .hull import convex_hull
from .search import CriticalHyperplane, SearchResult, corollary_bound, find_critical, level_count
from .tolerances import DEFAULT_TOL, Tolerances

logger = logging.getLogger(__name__)

__all__ = [
    "Halfspace",
    "Status",
    "Membership",
    "Facet",
    "RegionPolytope",
    "BoundCheck",
    "build_halfspaces",
    "interior_point",
    "halfspace_intersection",
    "contains",
    "check_corollary_bound",
    "tukey_region",
]


@dataclass(frozen=True, eq=False)
class Halfspace:
    """``{z : normal . z >= offset}``."""

    normal: np.ndarray
    offset: float
    provenance: CriticalHyperplane | None = None

    def slack(self, z) -> float:
        return float(self.normal @ np.asarray(z, dtype=float) - self.offset)


class Status(str, Enum):
    EMPTY = "Empty"
    DEGENERATE = "Degenerate"
    FULLDIM = "FullDim"


class Membership(str, Enum):
    INSIDE = "Inside"
    BOUNDARY = "Boundary"
    OUTSIDE = "Outside"


@dataclass(frozen=True)
class Facet:
    vertices: tuple
    halfspace: int


@dataclass
class RegionPolytope:
    """A depth region with its H- and V-descriptions.

    ``vertices`` is empty unless ``status`` is FULLDIM.  ``redundant[j]`` is
    True when halfspace ``j`` supports no facet.
    """

    n: int
    p: int
    tau: float | None
    k_tau: int
    halfspaces: list
    status: Status
    interior_point: np.ndarray
    chebyshev_slack: float
    vertices: np.ndarray
    facets: list = field(default_factory=list)
    redundant: np.ndarray | None = None
    search: SearchResult | None = None

    @property
    def num_directions(self) -> int:
        return len(self.halfspaces)

    @property
    def normals(self) -> np.ndarray:
        return np.array([h.normal for h in self.halfspaces]).reshape(-1, self.p)

    @property
    def offsets(self) -> np.ndarray:
        return np.array([h.offset for h in self.halfspaces], dtype=float)

    def slacks(self, x) -> np.ndarray:
        """``u_j . x - b_j`` for every halfspace (rows for 2-d input)."""
        x = np.asarray(x, dtype=float)
        return x @ self.normals.T - self.offsets

    def __repr__(self) -> str:
        return (f"RegionPolytope(k={self.k_tau}/{self.n}, status={self.status.value}, "
                f"halfspaces={self.num_directions}, vertices={len(self.vertices)}, "
                f"facets={len(self.facets)})")


@dataclass(frozen=True)
class BoundCheck:
    passed: bool
    count: int
    bound: int

    @property
    def margin(self) -> int:
        return self.bound - self.count


def build_halfspaces(cloud: PointCloud, criticals: Sequence[CriticalHyperplane],
                     tol: Tolerances = DEFAULT_TOL) -> list[Halfspace]:
    """One halfspace ``{u . z >= u . x_j}`` per critical hyperplane.

    Raises
    ------
    InconsistentOffset
        If the tuple's points disagree on the offset by more than ``tol.geom``.
    """
    out = []
    for h in criticals:
        proj = cloud.points[list(h.tuple)] @ h.normal
        if np.ptp(proj) > tol.geom:
            raise InconsistentOffset(f"tuple {h.tuple}: offsets spread {np.ptp(proj):.3g}")
        out.append(Halfspace(np.asarray(h.normal, dtype=float), float(h.offset), h))
    return out


def _classify(s: float, tol: Tolerances) -> Status:
    if s < -tol.slack:
        return Status.EMPTY
    if s <= tol.slack:
        return Status.DEGENERATE
    return Status.FULLDIM


def interior_point(halfspaces: Sequence[Halfspace], tol: Tolerances = DEFAULT_TOL):
    """Solve ``max s`` subject to ``u_j . z - b_j >= s``.

    Returns
    -------
    z : ndarray
    s : float
        The minimum slack at ``z`` (recomputed, not the solver's objective).
    status : Status

    Raises
    ------
    UnboundedLP
        If the halfspaces do not bound the LP.
    """
    if not halfspaces:
        raise UnboundedLP("no halfspaces")
    U = np.array([h.normal for h in halfspaces], dtype=float)
    b = np.array([h.offset for h in halfspaces], dtype=float)
    m, p = U.shape
    if m < p + 1:
        raise UnboundedLP(f"{m} halfspaces cannot bound a polytope in R^{p}")
    c = np.zeros(p + 1)
    c[-1] = -1.0
    A = np.column_stack([-U, np.ones(m)])
    res = linprog(c, A_ub=A, b_ub=-b, bounds=[(None, None)] * (p + 1), method="highs")
    if res.status == 3:
        raise UnboundedLP("slack LP is unbounded: halfspaces do not enclose a polytope")
    if res.status != 0:
        raise NumericalDegeneracy(f"slack LP failed: {res.message}")
    z = res.x[:p]
    s_lp = res.x[p]
    z, s = _polish(U, b, z, s_lp)
    return z, s, _classify(s, tol)


def _polish(U, b, z, s_lp):
    """Re-solve the active constraints exactly when they pin a unique optimum."""
    slack = U @ z - b
    s = float(slack.min())
    scale = max(1.0, float(np.abs(b).max()))
    active = np.flatnonzero(slack - s_lp <= 1e-7 * scale)
    p = U.shape[1]
    M = np.column_stack([U[active], -np.ones(active.size)])
    if np.linalg.matrix_rank(M) == p + 1:
        sol, *_ = np.linalg.lstsq(M, b[active], rcond=None)
        z2 = sol[:p]
        s2 = float((U @ z2 - b).min())
        if s2 >= s - 1e-9 * scale:
            return z2, s2
    return z, s


def _cyclic_order(points: np.ndarray, idx: list, outward: np.ndarray) -> list:
    P = points[idx]
    c = P.mean(axis=0)
    a = P[0] - c
    if np.linalg.norm(a) == 0:
        return list(idx)
    a /= np.linalg.norm(a)
    bvec = np.cross(outward, a)
    ang = np.arctan2((P - c) @ bvec, (P - c) @ a)
    return [idx[i] for i in np.argsort(ang, kind="stable")]


def halfspace_intersection(halfspaces: Sequence[Halfspace], interior,
                           tol: Tolerances = DEFAULT_TOL) -> dict:
    """Vertices and facets of a full-dimensional intersection of halfspaces.

    Parameters
    ----------
    interior : array_like
        A point with every slack positive.

    Returns
    -------
    dict
        ``vertices`` (V, p) array, ``facets`` list of :class:`Facet`,
        ``redundant`` boolean array over the halfspaces.

    Raises
    ------
    UnboundedLP
        If the intersection is unbounded.
    NumericalDegeneracy
        If a vertex system is singular or its solution violates the
        supporting equations.
    """
    U = np.array([h.normal for h in halfspaces], dtype=float)
    b = np.array([h.offset for h in halfspaces], dtype=float)
    c = np.asarray(interior, dtype=float)
    m, p = U.shape
    shifted = b - U @ c
    if (shifted >= -tol.slack).any():
        raise ValueError("interior point is not strictly inside every halfspace")
    dual = U / (-shifted)[:, None]
    hull = convex_hull(dual, tol)
    # bounded iff the origin is strictly inside the dual hull
    if (hull.offsets <= tol.geom * max(1.0, float(np.abs(dual).max()))).any():
        raise UnboundedLP("halfspaces do not enclose a bounded polytope")

    scale = max(1.0, float(np.abs(b).max()), float(np.abs(c).max()))
    vertices = []
    for members in hull.facets:
        J = list(members)
        A = U[J]
        sv = np.linalg.svd(A, compute_uv=False)
        if sv[-1] <= 1e-12 * sv[0]:
            raise NumericalDegeneracy(f"vertex system of halfspaces {J} is singular")
        v, *_ = np.linalg.lstsq(A, b[J], rcond=None)
        if np.abs(A @ v - b[J]).max() > tol.vertex * scale:
            raise NumericalDegeneracy(f"halfspaces {J} do not meet in a single vertex")
        vertices.append(v)
    V = np.array(vertices).reshape(-1, p)

    redundant = np.ones(m, dtype=bool)
    redundant[hull.vertices] = False
    incident: dict[int, list] = {}
    for vi, members in enumerate(hull.facets):
        for j in members:
            incident.setdefault(j, []).append(vi)
    facets = []
    for j in np.flatnonzero(~redundant):
        vs = sorted(incident.get(int(j), []))
        if p == 3 and len(vs) >= 3:
            vs = _cyclic_order(V, vs, -U[j])
        facets.append(Facet(tuple(int(v) for v in vs), int(j)))
    return {"vertices": V, "facets": facets, "redundant": redundant}


def contains(region: RegionPolytope, x, tol: Tolerances = DEFAULT_TOL) -> Membership:
    """Classify ``x`` against every halfspace of the region."""
    if region.status is Status.EMPTY or not region.halfspaces:
        return Membership.OUTSIDE
    s = float(region.slacks(x).min())
    if s > tol.geom:
        return Membership.INSIDE
    if s >= -tol.geom:
        return Membership.BOUNDARY
    return Membership.OUTSIDE


def check_corollary_bound(n: int, p: int, criticals) -> BoundCheck:
    """``|criticals| <= 2 C(n, p - 1)``; ``criticals`` may be a count."""
    count = criticals if isinstance(criticals, int) else len(criticals)
    bound = corollary_bound(n, p)
    return BoundCheck(count <= bound, count, bound)


def region_from_halfspaces(n: int, p: int, halfspaces: list, *, tau=None, k_tau: int,
                           search: SearchResult | None = None,
                           tol: Tolerances = DEFAULT_TOL) -> RegionPolytope:
    """Build a :class:`RegionPolytope` from an H-description."""
    z, s, status = interior_point(halfspaces, tol)
    region = RegionPolytope(n, p, tau, k_tau, list(halfspaces), status, z, s,
                            np.zeros((0, p)), [], np.zeros(len(halfspaces), dtype=bool), search)
    if status is Status.FULLDIM:
        geo = halfspace_intersection(halfspaces, z, tol)
        region.vertices = geo["vertices"]
        region.facets = geo["facets"]
        region.redundant = geo["redundant"]
    return region


def tukey_region(cloud: PointCloud, tau: float | None = None, *, k: int | None = None,
                 algorithm: str = "bfs", seed=None, rule: str = "ceil",
                 tol: Tolerances = DEFAULT_TOL, **search_kwargs) -> RegionPolytope:
    """Compute the depth region ``{x : depth(x) >= k / n}``.

    Parameters
    ----------
    tau : float
        Depth level; converted to ``k`` with :func:`level_count` and ``rule``.
    algorithm : {"bfs", "naive"}
    seed : int or numpy Generator
        Seed of the random first direction of the breadth-first search.
    """
    if k is None:
        k = level_count(cloud.n, tau, rule)
    res = find_critical(cloud, algorithm=algorithm, seed=seed, k=k, tol=tol, **search_kwargs)
    hs = build_halfspaces(cloud, res.hyperplanes, tol)
    return region_from_halfspaces(cloud.n, cloud.p, hs, tau=tau, k_tau=k, search=res, tol=tol)
