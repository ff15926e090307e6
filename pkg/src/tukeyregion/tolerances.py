"""Numerical tolerances shared by every module.

All comparisons against zero or against a hyperplane go through one
:class:`Tolerances` record so that ill-conditioned inputs can be handled by
loosening a single object instead of hunting for literals.
"""
from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    """Tolerance record.

    Attributes
    ----------
    zero : float
        Exact-zero threshold (vector norms, projected lengths, angle gaps).
    geom : float
        Geometric coincidence: a point is *on* a hyperplane when its signed
        distance is within ``geom``.
    vertex : float
        Feasibility slack allowed for computed polytope vertices.
    slack : float
        Classification band for the max-min LP slack.
    merge_angle : float
        Normal-angle tolerance when merging coplanar hull facets.
    """

    zero: float = 1e-12
    geom: float = 1e-9
    vertex: float = 1e-7
    slack: float = 1e-9
    merge_angle: float = 1e-8

    def with_geom(self, geom: float) -> "Tolerances":
        return replace(self, geom=geom)


DEFAULT_TOL = Tolerances()
