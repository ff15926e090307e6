"""Linear-algebra kernels for ridge geometry.

A *ridge* is a set of ``p - 1`` observations.  Its affine hull has a
two-dimensional orthogonal complement; every hyperplane through the ridge is
determined by a direction in that plane, so counting points on either side of
such hyperplanes reduces to counting polar angles.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import Enum
import numpy as np

from .errors import DegenerateProjection, RankDeficient
from .tolerances import DEFAULT_TOL, Tolerances

__all__ = [
    "PointCloud",
    "ComplementBasis",
    "Arc",
    "GeneralPositionReport",
    "complement_basis",
    "complement_bases",
    "polar_angles",
    "lift_direction",
    "tuple_normals",
    "check_general_position",
]


@dataclass(frozen=True, eq=False)
class PointCloud:
    """n observations in R^p.

    Parameters
    ----------
    points : array_like, shape (n, p)
        Coordinates; converted to a read-only float64 array.
    general_position : bool or None
        Result of the last general-position check, if one was run.
    """

    points: np.ndarray
    general_position: bool | None = field(default=None)

    def __post_init__(self):
        pts = np.array(self.points, dtype=np.float64, copy=True)
        if pts.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {pts.shape}")
        n, p = pts.shape
        if p < 2:
            raise ValueError(f"dimension must be at least 2, got p={p}")
        if n <= p:
            raise ValueError(f"need n > p, got n={n}, p={p}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("points contain NaN or Inf")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def p(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointCloud(n={self.n}, p={self.p})"


@dataclass(frozen=True, eq=False)
class ComplementBasis:
    """Orthonormal basis (e1, e2) of the plane orthogonal to a ridge span."""

    origin_index: int
    e1: np.ndarray
    e2: np.ndarray

    def matrix(self) -> np.ndarray:
        """Return the ``(p, 2)`` matrix ``[e1 e2]``."""
        return np.column_stack([self.e1, self.e2])


class Arc(Enum):
    """Which open half-circle a lifted direction cuts off.

    ``LOW`` designates the arc ``(theta, theta + pi)``, ``HIGH`` the arc
    ``(theta - pi, theta)``.
    """

    LOW = "low"
    HIGH = "high"


def _ridge_array(ridge) -> np.ndarray:
    idx = getattr(ridge, "indices", ridge)
    return np.asarray(idx, dtype=np.intp).reshape(-1)


def complement_bases(points: np.ndarray, ridges: np.ndarray,
                     tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Batched orthonormal complement bases.

    Parameters
    ----------
    points : ndarray, shape (n, p)
    ridges : ndarray of int, shape (B, p - 1)

    Returns
    -------
    ndarray, shape (B, p, 2)
        Column pairs ``(e1, e2)`` for every ridge.
    """
    points = np.asarray(points, dtype=np.float64)
    ridges = np.asarray(ridges, dtype=np.intp)
    n, p = points.shape
    B = ridges.shape[0]
    if p == 2:
        out = np.zeros((B, 2, 2))
        out[:, 0, 0] = 1.0
        out[:, 1, 1] = 1.0
        return out
    anchor = points[ridges[:, 0]]
    diffs = points[ridges[:, 1:]] - anchor[:, None, :]  # (B, p-2, p)
    q, r = np.linalg.qr(np.swapaxes(diffs, 1, 2), mode="complete")
    diag = np.abs(np.diagonal(r[:, : p - 2, : p - 2], axis1=1, axis2=2))
    scale = np.maximum(np.linalg.norm(diffs, axis=2).max(axis=1), 1.0)
    bad = (diag <= tol.zero * scale[:, None] * 1e3).any(axis=1)
    if bad.any():
        which = ridges[np.flatnonzero(bad)[0]]
        raise RankDeficient(f"ridge {tuple(int(i) for i in which)} is affinely degenerate")
    return q[:, :, p - 2:]


def complement_basis(cloud: PointCloud, ridge, tol: Tolerances = DEFAULT_TOL) -> ComplementBasis:
    """Orthonormal basis of the orthogonal complement of a ridge's span.

    The span is that of ``x[i_k] - x[i_1]`` over the ridge; for ``p = 2`` it
    is ``{0}`` and the canonical basis of R^2 is returned.

    Raises
    ------
    RankDeficient
        If the ridge points are affinely dependent.
    """
    idx = _ridge_array(ridge)
    if idx.size != cloud.p - 1:
        raise ValueError(f"ridge must have {cloud.p - 1} indices, got {idx.size}")
    if len(set(idx.tolist())) != idx.size or idx.min() < 0 or idx.max() >= cloud.n:
        raise ValueError(f"invalid ridge {tuple(idx.tolist())}")
    basis = complement_bases(cloud.points, idx[None, :], tol)[0]
    return ComplementBasis(int(idx[0]), basis[:, 0].copy(), basis[:, 1].copy())


def _normalize_angles(theta: np.ndarray) -> np.ndarray:
    theta = np.where(theta >= np.pi, theta - 2.0 * np.pi, theta)
    return theta


def polar_angles(cloud: PointCloud, ridge, basis: ComplementBasis,
                 tol: Tolerances = DEFAULT_TOL) -> dict[int, float]:
    """Polar angle in ``[-pi, pi)`` of every non-ridge point in the basis plane.

    Raises
    ------
    DegenerateProjection
        If a projected point has (near) zero length, i.e. it lies on the
        ridge's affine hull.
    """
    idx = _ridge_array(ridge)
    others = np.setdiff1d(np.arange(cloud.n), idx)
    rel = cloud.points[others] - cloud.points[basis.origin_index]
    coords = rel @ basis.matrix()
    norms = np.hypot(coords[:, 0], coords[:, 1])
    if (norms < tol.zero).any():
        k = int(others[np.argmin(norms)])
        raise DegenerateProjection(f"point {k} lies on the affine hull of ridge {tuple(idx.tolist())}")
    theta = _normalize_angles(np.arctan2(coords[:, 1], coords[:, 0]))
    return {int(k): float(t) for k, t in zip(others, theta)}


def lift_direction(basis: ComplementBasis, theta: float, side: Arc) -> np.ndarray:
    """Unit normal of the hyperplane through the ridge at polar angle ``theta``.

    Points whose angle lies strictly inside the arc designated by ``side``
    get a negative inner product with the returned vector.
    """
    if side is Arc.LOW:
        phi = theta - 0.5 * np.pi
    elif side is Arc.HIGH:
        phi = theta + 0.5 * np.pi
    else:
        raise ValueError(f"unknown side {side!r}")
    return math.cos(phi) * basis.e1 + math.sin(phi) * basis.e2


def _cofactors(points: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    p = points.shape[1]
    d = points[tuples[:, 1:]] - points[tuples[:, :1]]  # (E, p-1, p)
    cof = np.empty((tuples.shape[0], p))
    cols = np.arange(p)
    for i in range(p):
        cof[:, i] = (-1) ** i * np.linalg.det(d[:, :, cols != i])
    return cof


def tuple_normals(points: np.ndarray, tuples: np.ndarray) -> np.ndarray:
    """Canonical unit normals of observation hyperplanes.

    For each sorted p-tuple the normal is the generalized cross product of
    ``x[j_k] - x[j_1]`` (cofactor expansion), normalized.  It depends only on
    the tuple, so hyperplanes found from different ridges agree bitwise.

    Parameters
    ----------
    tuples : ndarray of int, shape (E, p)

    Returns
    -------
    ndarray, shape (E, p)
        Rows are unit vectors; a row is all-NaN if the tuple is degenerate.
    """
    points = np.asarray(points, dtype=np.float64)
    tuples = np.asarray(tuples, dtype=np.intp)
    p = points.shape[1]
    if tuples.shape[0] == 0:
        return np.zeros((0, p))
    cof = _cofactors(points, tuples)
    norms = np.linalg.norm(cof, axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        out = cof / norms[:, None]
    out[norms == 0] = np.nan
    return out


@dataclass
class GeneralPositionReport:
    """Outcome of :func:`check_general_position`."""

    passed: bool
    exhaustive: bool
    checked: int
    violations: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.passed

    def summary(self) -> str:
        mode = "exhaustive" if self.exhaustive else "not exhaustively verified (spot-check)"
        status = "pass" if self.passed else f"{len(self.violations)} violation(s)"
        return f"general position: {status}, {self.checked} p-subsets, {mode}"


def _subset_violations(points, tuples, tol, limit):
    n, p = points.shape
    found = []
    cof = _cofactors(points, tuples)
    vol = np.linalg.norm(cof, axis=1)
    d = points[tuples[:, 1:]] - points[tuples[:, :1]]
    # volume relative to edge lengths: a sine-like conditioning measure
    degenerate = vol <= tol.geom * np.maximum(np.linalg.norm(d, axis=2).prod(axis=1), tol.zero)
    with np.errstate(invalid="ignore", divide="ignore"):
        normals = cof / vol[:, None]
    for t in tuples[degenerate][:limit]:
        found.append(("affinely dependent", tuple(int(i) for i in t)))
    ok = ~degenerate
    if ok.any():
        nrm = normals[ok]
        tup = tuples[ok]
        offs = np.einsum("ij,ij->i", nrm, points[tup[:, 0]])
        dist = np.abs(points @ nrm.T - offs[None, :])  # (n, E)
        member = np.zeros_like(dist, dtype=bool)
        member[tup.T, np.arange(tup.shape[0])[None, :]] = True
        hit = (dist <= tol.geom) & ~member
        for e in np.flatnonzero(hit.any(axis=0))[: max(limit - len(found), 0)]:
            extra = np.flatnonzero(hit[:, e])
            found.append(("coplanar", tuple(int(i) for i in tup[e]) + tuple(int(i) for i in extra)))
    return found


def check_general_position(cloud: PointCloud, cap: int = 2_000_000, samples: int = 20_000,
                           rng: np.random.Generator | None = None,
                           tol: Tolerances = DEFAULT_TOL,
                           max_report: int = 50) -> GeneralPositionReport:
    """Check that no hyperplane through p observations contains another one.

    Exhaustive when ``C(n, p) <= cap``, otherwise ``samples`` random p-subsets
    are checked and the report is marked as not exhaustive.  Violations are
    reported, never raised.
    """
    n, p = cloud.n, cloud.p
    total = math.comb(n, p)
    pts = cloud.points
    violations: list = []
    if total <= cap:
        exhaustive = True
        it = itertools.combinations(range(n), p)
        batch = max(1, 4_000_000 // max(n, 1))
        checked = 0
        while True:
            chunk = np.array(list(itertools.islice(it, batch)), dtype=np.intp)
            if chunk.size == 0:
                break
            checked += chunk.shape[0]
            violations += _subset_violations(pts, chunk.reshape(-1, p), tol, max_report - len(violations))
            if len(violations) >= max_report:
                break
    else:
        exhaustive = False
        rng = np.random.default_rng(0) if rng is None else rng
        chunk = np.sort(np.array([rng.choice(n, size=p, replace=False) for _ in range(samples)]), axis=1)
        checked = chunk.shape[0]
        violations = _subset_violations(pts, chunk, tol, max_report)
    return GeneralPositionReport(not violations, exhaustive, checked, violations)
