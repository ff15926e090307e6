"""Convex hull in arbitrary dimension (quickhull).

Facets are simplices with outward unit normals; coplanar simplices are merged
afterwards into polytope facets.  Points within ``tol.geom`` of a facet
hyperplane are treated as inside, so non-extreme coplanar points never become
hull vertices.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput
from .tolerances import DEFAULT_TOL, Tolerances

__all__ = ["Hull", "convex_hull"]


@dataclass
class Hull:
    """Result of :func:`convex_hull`.

    Attributes
    ----------
    simplices : ndarray of int, shape (F, d)
        Vertex indices of each simplicial facet.
    normals : ndarray, shape (F, d)
        Outward unit normals.
    offsets : ndarray, shape (F,)
        ``normals[f] . x <= offsets[f]`` for every input point.
    neighbors : ndarray of int, shape (F, d)
        ``neighbors[f, i]`` is the facet across the ridge opposite
        ``simplices[f, i]``.
    facets : list of tuple
        Merged facets: sorted vertex indices of coplanar simplex groups.
    facet_of_simplex : ndarray of int, shape (F,)
        Index into ``facets`` for each simplex.
    """

    points: np.ndarray
    simplices: np.ndarray
    normals: np.ndarray
    offsets: np.ndarray
    neighbors: np.ndarray
    facets: list = field(default_factory=list)
    facet_of_simplex: np.ndarray | None = None
    facet_normals: np.ndarray | None = None
    facet_offsets: np.ndarray | None = None

    @property
    def vertices(self) -> np.ndarray:
        """Sorted indices of extreme points."""
        return np.unique(self.simplices)

    def edges(self) -> set:
        """Edges (vertex pairs) of the simplicial complex on the boundary."""
        out = set()
        for s in self.simplices:
            out.update(itertools.combinations(sorted(s.tolist()), 2))
        return out


def _hyperplane(pts: np.ndarray, interior: np.ndarray):
    base = pts[0]
    diffs = pts[1:] - base
    _, s, vt = np.linalg.svd(diffs, full_matrices=True)
    normal = vt[-1]
    off = normal @ base
    if normal @ interior - off > 0:
        normal, off = -normal, -off
    return normal, off, s


def _initial_simplex(pts: np.ndarray, tol: Tolerances) -> list[int]:
    n, d = pts.shape
    chosen = [int(np.argmin(pts[:, 0]))]
    dist = np.linalg.norm(pts - pts[chosen[0]], axis=1)
    chosen.append(int(np.argmax(dist)))
    scale = max(float(dist.max()), 1.0)
    if dist.max() <= tol.geom:
        raise DegenerateInput("all points coincide")
    while len(chosen) < d + 1:
        base = pts[chosen[0]]
        q, _ = np.linalg.qr((pts[chosen[1:]] - base).T)
        rel = pts - base
        resid = rel - (rel @ q) @ q.T
        r = np.linalg.norm(resid, axis=1)
        j = int(np.argmax(r))
        if r[j] <= tol.geom * scale:
            raise DegenerateInput(f"affine dimension {len(chosen) - 1} < {d}")
        chosen.append(j)
    return chosen


def convex_hull(points, tol: Tolerances = DEFAULT_TOL) -> Hull:
    """Convex hull of ``m >= d + 1`` points in R^d.

    Raises
    ------
    DegenerateInput
        If the points do not span R^d affinely.
    """
    pts = np.asarray(points, dtype=np.float64)
    m, d = pts.shape
    if d < 2:
        raise ValueError("dimension must be at least 2")
    if m < d + 1:
        raise DegenerateInput(f"need at least {d + 1} points, got {m}")
    eps = tol.geom * max(1.0, float(np.abs(pts).max()))
    simplex = _initial_simplex(pts, tol)
    interior = pts[simplex].mean(axis=0)

    verts: dict[int, tuple] = {}
    normal: dict[int, np.ndarray] = {}
    offset: dict[int, float] = {}
    nbr: dict[int, list] = {}
    outside: dict[int, np.ndarray] = {}
    next_id = itertools.count()

    def new_facet(vs):
        f = next(next_id)
        nv, ov, _ = _hyperplane(pts[list(vs)], interior)
        verts[f], normal[f], offset[f] = tuple(vs), nv, ov
        nbr[f] = [None] * d
        return f

    # initial simplex facets: facet j omits simplex[j]
    init = {}
    for j in range(d + 1):
        init[j] = new_facet([simplex[i] for i in range(d + 1) if i != j])
    for j, f in init.items():
        omitted = [i for i in range(d + 1) if i != j]
        for slot, i in enumerate(omitted):
            nbr[f][slot] = init[i]

    def assign(cands: np.ndarray, facets: list):
        if cands.size == 0 or not facets:
            return
        N = np.array([normal[f] for f in facets])
        O = np.array([offset[f] for f in facets])
        dist = pts[cands] @ N.T - O
        best = np.argmax(dist, axis=1)
        ok = dist[np.arange(cands.size), best] > eps
        for fi, f in enumerate(facets):
            sel = cands[ok & (best == fi)]
            if sel.size:
                outside[f] = sel

    rest = np.setdiff1d(np.arange(m), simplex)
    assign(rest, list(init.values()))

    while outside:
        f0 = next(iter(outside))
        cands = outside[f0]
        dist = pts[cands] @ normal[f0] - offset[f0]
        eye = int(cands[np.argmax(dist)])
        x = pts[eye]

        visible = {f0}
        stack = [f0]
        horizon = []  # (visible facet, slot, neighbor)
        while stack:
            f = stack.pop()
            for slot, g in enumerate(nbr[f]):
                if g in visible:
                    continue
                if normal[g] @ x - offset[g] > eps:
                    visible.add(g)
                    stack.append(g)
                else:
                    horizon.append((f, slot, g))
        # points that must be redistributed
        orphan = [outside.pop(f) for f in visible if f in outside]
        orphans = np.concatenate(orphan) if orphan else np.zeros(0, np.intp)
        orphans = orphans[orphans != eye]

        created = []
        ridge_map: dict = {}
        for f, slot, g in horizon:
            ridge = verts[f][:slot] + verts[f][slot + 1:]
            h = new_facet(ridge + (eye,))
            created.append(h)
            nbr[h][d - 1] = g  # opposite eye
            gslot = nbr[g].index(f)
            nbr[g][gslot] = h
            for i in range(d - 1):
                sub = frozenset(ridge[:i] + ridge[i + 1:])
                if sub in ridge_map:
                    other, oslot = ridge_map.pop(sub)
                    nbr[h][i] = other
                    nbr[other][oslot] = h
                else:
                    ridge_map[sub] = (h, i)
        if ridge_map:
            raise DegenerateInput("inconsistent horizon (numerical degeneracy in hull)")
        for f in visible:
            del verts[f], normal[f], offset[f], nbr[f]
        assign(orphans, created)

    ids = sorted(verts)
    pos = {f: i for i, f in enumerate(ids)}
    hull = Hull(
        points=pts,
        simplices=np.array([verts[f] for f in ids], dtype=np.intp),
        normals=np.array([normal[f] for f in ids]),
        offsets=np.array([offset[f] for f in ids]),
        neighbors=np.array([[pos[g] for g in nbr[f]] for f in ids], dtype=np.intp),
    )
    _merge_coplanar(hull, tol)
    return hull


def _coplanar(hull: Hull, f: int, g: int, eps: float) -> bool:
    pf = hull.points[hull.simplices[f]]
    pg = hull.points[hull.simplices[g]]
    return (np.abs(pg @ hull.normals[f] - hull.offsets[f]).max() <= eps
            and np.abs(pf @ hull.normals[g] - hull.offsets[g]).max() <= eps)


def _merge_coplanar(hull: Hull, tol: Tolerances) -> None:
    F = hull.simplices.shape[0]
    eps = tol.geom * max(1.0, float(np.abs(hull.points).max()))
    parent = list(range(F))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in range(F):
        for g in hull.neighbors[f]:
            if g <= f:
                continue
            cos = float(hull.normals[f] @ hull.normals[g])
            if cos >= 1.0 - 0.5 * tol.merge_angle ** 2 or (cos > 0 and _coplanar(hull, f, g, eps)):
                parent[find(g)] = find(f)
    groups: dict[int, list] = {}
    for f in range(F):
        groups.setdefault(find(f), []).append(f)
    facets, fn, fo = [], [], []
    owner = np.empty(F, dtype=np.intp)
    for gi, members in enumerate(groups.values()):
        facets.append(tuple(sorted(set(hull.simplices[members].ravel().tolist()))))
        nv = hull.normals[members].mean(axis=0)
        nv /= np.linalg.norm(nv)
        fn.append(nv)
        fo.append(float(hull.offsets[members].mean()))
        owner[members] = gi
    hull.facets = facets
    hull.facet_of_simplex = owner
    hull.facet_normals = np.array(fn)
    hull.facet_offsets = np.array(fo)
