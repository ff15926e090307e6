"""Critical-hyperplane search.

A hyperplane through p observations is *critical* at level ``k`` when one of
its open sides holds exactly ``k - 1`` observations.  The halfspaces on the
other side, intersected, give the depth region of level ``k / n``.

Two searches produce the same set of critical hyperplanes:

* :func:`algorithm1` scans every ridge (set of ``p - 1`` observations);
* :func:`algorithm2` starts from one critical hyperplane and walks from ridge
  to ridge, scanning only ridges of hyperplanes already found.

Both rely on :func:`scan_ridges`, which for a batch of ridges counts, for
every remaining observation ``k``, the points strictly inside the half-circle
``(theta_k, theta_k + pi)`` of polar angles around the ridge.
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np

from .combinatorics import (
    DEFAULT_BITSET_BUDGET,
    RidgeQueue,
    VisitedSet,
    colex_combinations,
    encode_tuple,
    make_ridge,
)
from .errors import DegenerateProjection, GeneralPositionError, SeedingFailed, TiedProjection
from .geometry import PointCloud, complement_bases, tuple_normals
from .tolerances import DEFAULT_TOL, Tolerances

logger = logging.getLogger(__name__)

__all__ = [
    "Side",
    "CriticalHyperplane",
    "SearchResult",
    "SearchState",
    "level_count",
    "scan_ridges",
    "scan_ridge",
    "algorithm1",
    "seed_search",
    "algorithm2",
    "corollary_bound",
]

_ROW_SPAN = 8.0 * np.pi


class Side(str, Enum):
    """Orientation of a critical halfspace relative to its tuple.

    The reference orientation of a sorted tuple ``j_1 < ... < j_p`` is the
    cofactor normal of ``x[j_2] - x[j_1], ..., x[j_p] - x[j_1]``.  ``HIGH``
    means the halfspace normal equals that reference, ``LOW`` its negation.
    """

    LOW = "low"
    HIGH = "high"

    @property
    def sign(self) -> float:
        return 1.0 if self is Side.HIGH else -1.0


@dataclass(frozen=True, eq=False)
class CriticalHyperplane:
    """An observation hyperplane together with the side it keeps.

    ``normal . z >= offset`` is the enveloping halfspace; the ``k - 1``
    cut-off observations satisfy ``normal . x < offset``.
    Equality and hashing use ``(tuple, side)`` only.
    """

    tuple: tuple
    side: Side
    normal: np.ndarray
    offset: float

    @property
    def key(self) -> tuple:
        return (self.tuple, self.side.value)

    def code(self, n: int):
        return encode_tuple(self.tuple, n)

    def __eq__(self, other):
        if not isinstance(other, CriticalHyperplane):
            return NotImplemented
        return self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"CriticalHyperplane({self.tuple}, {self.side.value}, offset={self.offset:.6g})"


@dataclass
class SearchResult:
    """Deduplicated critical hyperplanes plus search statistics.

    Iterating yields hyperplanes sorted by ``(tuple, side)``.
    """

    n: int
    p: int
    k: int
    hyperplanes: list
    algorithm: str
    ridges_scanned: int = 0
    seeds_tried: int = 0
    bound_exceeded: bool = False

    def __iter__(self) -> Iterator[CriticalHyperplane]:
        return iter(self.hyperplanes)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def keys(self) -> set:
        return {h.key for h in self.hyperplanes}

    def tuples(self) -> set:
        return {h.tuple for h in self.hyperplanes}


@dataclass
class SearchState:
    """Mutable state of the breadth-first search."""

    visited: VisitedSet
    queue: RidgeQueue
    k_tau: int
    found: dict = field(default_factory=dict)
    seed_directions: list = field(default_factory=list)
    seed_hyperplane: CriticalHyperplane | None = None
    ridges_scanned: int = 0


def level_count(n: int, tau: float, rule: str = "ceil") -> int:
    """Order-statistic index ``k`` for depth level ``tau``.

    ``rule="ceil"`` gives the smallest ``k`` with ``k / n >= tau``, so that the
    region is exactly ``{depth >= tau}``; ``rule="floor"`` gives
    ``floor(n * tau)``.  Both snap to the nearest integer when ``n * tau`` is
    within 1e-9 of it, absorbing binary rounding of values like ``0.3 * 10``.
    """
    x = n * tau
    r = round(x)
    if abs(x - r) <= 1e-9:
        return int(r)
    if rule == "ceil":
        return math.ceil(x)
    if rule == "floor":
        return math.floor(x)
    raise ValueError(f"unknown rule {rule!r}")


def corollary_bound(n: int, p: int) -> int:
    """Upper bound ``2 C(n, p-1)`` on the number of critical directions."""
    return 2 * math.comb(n, p - 1)


def _batch_size(n: int, p: int) -> int:
    return max(1, 1_500_000 // (n * (p + 2)))


@dataclass
class _Hits:
    ridge_pos: np.ndarray   # position of the source ridge in the batch
    cand: np.ndarray        # candidate observation index
    tuples: np.ndarray      # (E, p) sorted
    high: np.ndarray        # bool, canonical side
    normals: np.ndarray     # (E, p)
    offsets: np.ndarray     # (E,)


def scan_ridges(points: np.ndarray, ridges: np.ndarray, k: int,
                tol: Tolerances = DEFAULT_TOL) -> _Hits:
    """Find all critical hyperplanes through each ridge of a batch.

    Parameters
    ----------
    points : ndarray, shape (n, p)
    ridges : ndarray of int, shape (B, p - 1), rows sorted
    k : int
        Level; a hyperplane is critical when an open side holds ``k - 1`` points.

    Returns
    -------
    _Hits
        One entry per (ridge, candidate, side) hit, ordered by ridge then by
        candidate index.  A hyperplane hit from both sides appears twice.
    """
    points = np.asarray(points, dtype=np.float64)
    ridges = np.asarray(ridges, dtype=np.intp).reshape(-1, points.shape[1] - 1)
    n, p = points.shape
    B = ridges.shape[0]
    m = n - p + 1
    if B == 0:
        return _Hits(*(np.zeros((0,), np.intp),) * 2, np.zeros((0, p), np.intp),
                     np.zeros(0, bool), np.zeros((0, p)), np.zeros(0))
    bases = complement_bases(points, ridges, tol)  # (B, p, 2)

    mask = np.ones((B, n), dtype=bool)
    mask[np.arange(B)[:, None], ridges] = False
    others = np.nonzero(mask)[1].reshape(B, m)
    rel = points[others] - points[ridges[:, 0]][:, None, :]  # (B, m, p)
    coords = np.einsum("bmp,bpk->bmk", rel, bases)
    norms = np.hypot(coords[..., 0], coords[..., 1])
    if (norms < tol.zero).any():
        b, j = np.unravel_index(np.argmin(norms), norms.shape)
        raise DegenerateProjection(
            f"point {others[b, j]} lies on the affine hull of ridge {tuple(ridges[b].tolist())}")
    theta = np.arctan2(coords[..., 1], coords[..., 0])
    theta[theta >= np.pi] -= 2.0 * np.pi

    order = np.argsort(theta, axis=1, kind="stable")
    ts = np.take_along_axis(theta, order, axis=1)
    gaps = np.diff(ts, axis=1)
    wrap = ts[:, 0] + 2.0 * np.pi - ts[:, -1]
    if m > 1 and ((gaps < tol.zero).any() or (wrap < tol.zero).any()):
        b = int(np.flatnonzero((gaps < tol.zero).any(axis=1) | (wrap < tol.zero))[0])
        raise DegenerateProjection(
            f"two points are coplanar with ridge {tuple(ridges[b].tolist())}")

    ext = np.concatenate([ts, ts + 2.0 * np.pi], axis=1)  # (B, 2m)
    row_off = (np.arange(B) * _ROW_SPAN)[:, None]
    flat = (ext + row_off).ravel()
    target = ts + np.pi
    pos = np.searchsorted(flat, (target + row_off).ravel(), side="left").reshape(B, m)
    pos -= (np.arange(B) * 2 * m)[:, None]
    # antipodal coincidences make the open-arc count ambiguous
    rows = np.arange(B)[:, None]
    above = ext[rows, np.minimum(pos, 2 * m - 1)] - target
    below = target - ext[rows, pos - 1]
    if (above < tol.zero).any() or (below < tol.zero).any():
        b = int(np.flatnonzero(((above < tol.zero) | (below < tol.zero)).any(axis=1))[0])
        raise DegenerateProjection(
            f"two points are coplanar with ridge {tuple(ridges[b].tolist())}")
    eta1 = pos - (np.arange(m)[None, :] + 1)
    eta2 = (m - 1) - eta1

    low = eta1 == k - 1
    high = eta2 == k - 1
    hb, hr = np.nonzero(low | high)
    # two hits when both sides qualify
    both = low[hb, hr] & high[hb, hr]
    arc_low = np.concatenate([low[hb, hr], np.zeros(both.sum(), bool)])
    hb = np.concatenate([hb, hb[both]])
    hr = np.concatenate([hr, hr[both]])
    if hb.size == 0:
        return _Hits(hb, hb.copy(), np.zeros((0, p), np.intp), np.zeros(0, bool),
                     np.zeros((0, p)), np.zeros(0))
    cand = others[hb, order[hb, hr]]
    th = ts[hb, hr]
    # a LOW arc hit cuts off (theta, theta + pi): normal at theta - pi/2
    phi = np.where(arc_low, th - 0.5 * np.pi, th + 0.5 * np.pi)
    lifted = np.einsum("epk,ek->ep", bases[hb], np.column_stack([np.cos(phi), np.sin(phi)]))

    tuples = np.sort(np.column_stack([ridges[hb], cand]), axis=1)
    ref = tuple_normals(points, tuples)
    sgn = np.einsum("ep,ep->e", lifted, ref)
    high_side = sgn > 0
    normals = ref * np.where(high_side, 1.0, -1.0)[:, None]
    offsets = np.einsum("ep,ep->e", normals, points[tuples[:, 0]])

    srt = np.lexsort((~arc_low, cand, hb))
    return _Hits(hb[srt], cand[srt], tuples[srt], high_side[srt], normals[srt], offsets[srt])


def _make(h: _Hits, i: int) -> CriticalHyperplane:
    return CriticalHyperplane(tuple(int(j) for j in h.tuples[i]),
                              Side.HIGH if h.high[i] else Side.LOW,
                              h.normals[i].copy(), float(h.offsets[i]))


def _hits_to_hyperplanes(h: _Hits) -> list[CriticalHyperplane]:
    return [_make(h, i) for i in range(len(h.cand))]


def _scan_with_context(points, ridges, k, tol):
    try:
        return scan_ridges(points, ridges, k, tol)
    except GeneralPositionError as exc:
        raise type(exc)(f"{exc} (general position violated)") from exc


def scan_ridge(cloud: PointCloud, ridge, k_tau: int,
               tol: Tolerances = DEFAULT_TOL) -> list[CriticalHyperplane]:
    """All critical hyperplanes at level ``k_tau`` containing ``ridge``."""
    if k_tau < 1:
        raise ValueError(f"k_tau must be >= 1, got {k_tau}")
    r = np.asarray(make_ridge(ridge), dtype=np.intp)[None, :]
    if r.shape[1] != cloud.p - 1:
        raise ValueError(f"ridge must have {cloud.p - 1} indices")
    return _hits_to_hyperplanes(scan_ridges(cloud.points, r, k_tau, tol))


def _resolve_k(cloud: PointCloud, tau, k, rule) -> int:
    if k is None:
        if tau is None:
            raise ValueError("either tau or k is required")
        k = level_count(cloud.n, tau, rule)
    if not 1 <= k <= cloud.n:
        raise ValueError(f"level k={k} outside [1, n] (tau below 1/n?)")
    return int(k)


def _check_bound(n, p, count, algorithm):
    bound = corollary_bound(n, p)
    if count > bound:
        logger.error("%s found %d critical hyperplanes, above the bound %d", algorithm, count, bound)
        return True
    return False


def _map_batches(fn, batches, parallel):
    if parallel and len(batches) > 1:
        with ThreadPoolExecutor() as ex:
            return list(ex.map(fn, batches))
    return [fn(b) for b in batches]


def algorithm1(cloud: PointCloud, tau: float | None = None, *, k: int | None = None,
               rule: str = "ceil", parallel: bool = False, batch_size: int | None = None,
               tol: Tolerances = DEFAULT_TOL) -> SearchResult:
    """Exhaustive search: scan all ``C(n, p-1)`` ridges in colex order."""
    k = _resolve_k(cloud, tau, k, rule)
    pts = cloud.points
    ridges = colex_combinations(cloud.n, cloud.p - 1)
    bs = batch_size or _batch_size(cloud.n, cloud.p)
    batches = [ridges[i:i + bs] for i in range(0, ridges.shape[0], bs)]
    found: dict = {}
    for h in _map_batches(lambda b: _scan_with_context(pts, b, k, tol), batches, parallel):
        if not len(h.cand):
            continue
        keys = np.column_stack([h.tuples, h.high])
        _, first = np.unique(keys, axis=0, return_index=True)
        for i in np.sort(first):
            hp = _make(h, i)
            found.setdefault(hp.key, hp)
    hs = [found[key] for key in sorted(found)]
    return SearchResult(cloud.n, cloud.p, k, hs, "naive", ridges_scanned=ridges.shape[0],
                        bound_exceeded=_check_bound(cloud.n, cloud.p, len(hs), "algorithm1"))


def _as_rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def seed_search(cloud: PointCloud, tau: float | None = None, rng=None, max_retries: int = 64, *,
                k: int | None = None, rule: str = "ceil",
                visited_budget: int = DEFAULT_BITSET_BUDGET,
                tol: Tolerances = DEFAULT_TOL) -> SearchState:
    """Find a first critical hyperplane and seed the ridge queue.

    A uniformly random direction ``u0`` orders the observations; the ridge
    of the ``p - 1`` lowest ones is scanned.  On success, every
    (p-1)-subset of the ``k + p - 1`` observations on or below the found
    hyperplane is queued and marked visited.

    Raises
    ------
    TiedProjection
        If the projections onto ``u0`` are not strictly ordered.
    SeedingFailed
        If ``max_retries`` directions give no critical hyperplane.
    """
    k = _resolve_k(cloud, tau, k, rule)
    rng = _as_rng(rng)
    n, p = cloud.n, cloud.p
    pts = cloud.points
    state = SearchState(VisitedSet(n, p - 1, budget_bits=visited_budget), RidgeQueue(), k)
    for _ in range(max_retries):
        u0 = rng.standard_normal(p)
        u0 /= np.linalg.norm(u0)
        state.seed_directions.append(u0)
        proj = pts @ u0
        order = np.argsort(proj, kind="stable")
        if (np.diff(proj[order]) <= tol.zero).any():
            raise TiedProjection("projections onto the seed direction are not strictly ordered")
        ridge = np.sort(order[: p - 1])
        hits = _scan_with_context(pts, ridge[None, :], k, tol)
        state.ridges_scanned += 1
        if len(hits.cand):
            break
    else:
        dirs = np.array(state.seed_directions)
        raise SeedingFailed(f"no critical hyperplane at level k={k} after {max_retries} "
                            f"seed directions; tried {dirs.tolist()}")
    hp = _make(hits, 0)
    state.seed_hyperplane = hp
    below = np.flatnonzero(pts @ hp.normal <= hp.offset + tol.geom)
    if below.size != k + p - 1:
        logger.warning("seed hyperplane has %d points on or below it, expected %d",
                       below.size, k + p - 1)
    for sub in itertools.combinations(below.tolist(), p - 1):
        if state.visited.add(sub):
            state.queue.push(sub)
    return state


def algorithm2(cloud: PointCloud, tau: float | None = None, rng=None, *, k: int | None = None,
               rule: str = "ceil", max_retries: int = 64, parallel: bool = False,
               batch_size: int | None = None, visited_budget: int = DEFAULT_BITSET_BUDGET,
               tol: Tolerances = DEFAULT_TOL) -> SearchResult:
    """Ridge-by-ridge breadth-first search.

    Ridges are popped in FIFO order.  Scanning a ridge does not depend on the
    search state, so several queued ridges are scanned at once and their
    results applied in pop order; the traversal is identical to popping one
    ridge at a time.
    """
    k = _resolve_k(cloud, tau, k, rule)
    state = seed_search(cloud, rng=rng, max_retries=max_retries, k=k,
                        visited_budget=visited_budget, tol=tol)
    pts = cloud.points
    p = cloud.p
    bs = batch_size or _batch_size(cloud.n, cloud.p)
    found = state.found
    visited, queue = state.visited, state.queue
    while queue:
        popped = queue.pop_many(bs * (8 if parallel else 1))
        arr = np.array(popped, dtype=np.intp).reshape(-1, p - 1)
        chunks = [arr[i:i + bs] for i in range(0, arr.shape[0], bs)]
        results = _map_batches(lambda b: _scan_with_context(pts, b, k, tol), chunks, parallel)
        state.ridges_scanned += arr.shape[0]
        for chunk_no, h in enumerate(results):
            base = chunk_no * bs
            for i in range(len(h.cand)):
                hp = _make(h, i)
                if hp.key in found:
                    continue
                found[hp.key] = hp
                ridge = popped[base + int(h.ridge_pos[i])]
                ip = int(h.cand[i])
                for l in ridge:
                    sub = tuple(sorted([j for j in ridge if j != l] + [ip]))
                    if visited.add(sub):
                        queue.push(sub)
    hs = [found[key] for key in sorted(found)]
    return SearchResult(cloud.n, cloud.p, k, hs, "bfs", ridges_scanned=state.ridges_scanned,
                        seeds_tried=len(state.seed_directions),
                        bound_exceeded=_check_bound(cloud.n, cloud.p, len(hs), "algorithm2"))


def find_critical(cloud: PointCloud, tau: float | None = None, algorithm: str = "bfs", *,
                  seed=None, **kwargs) -> SearchResult:
    """Dispatch to :func:`algorithm1` (``"naive"``) or :func:`algorithm2` (``"bfs"``)."""
    if algorithm == "naive":
        return algorithm1(cloud, tau, **kwargs)
    if algorithm == "bfs":
        return algorithm2(cloud, tau, rng=seed, **kwargs)
    raise ValueError(f"unknown algorithm {algorithm!r}")
