"""Exact Tukey depth regions via critical-hyperplane search.

The region of depth at least ``k / n`` of a point cloud in general position
is the intersection of finitely many halfspaces, each bounded by a hyperplane
through ``p`` observations that cuts off exactly ``k - 1`` of them.  The
package finds those hyperplanes (exhaustively or by breadth-first search over
ridges), turns them into a polytope with vertices and facets, and checks the
result against brute-force depth computations.

>>> import numpy as np
>>> from tukeyregion import PointCloud, tukey_region
>>> sq = PointCloud(np.array([[0., 0.], [1., 0.], [1., 1.], [0., 1.]]))
>>> tukey_region(sq, 0.25).status.value
'FullDim'
"""
from .bench import BenchRecord, RunConfig, run_benchmark
from .combinatorics import RidgeQueue, VisitedSet, encode_tuple, ridge_rank, ridge_unrank, subridges
from .dataio import (dedup_ties, export_region, generate_gaussian, load_csv, load_region,
                     load_transfusion, region_from_dict, region_to_dict, save_csv)
from .errors import *  # noqa: F401,F403
from .geometry import (Arc, ComplementBasis, GeneralPositionReport, PointCloud, check_general_position,
                       complement_basis, lift_direction, polar_angles)
from .hull import Hull, convex_hull
from .oracle import (CutCount, VerificationReport, cutoff_count, depth_count_exact, depth_exact_small,
                     depth_upper_bound, verify_region)
from .region import (BoundCheck, Facet, Halfspace, Membership, RegionPolytope, Status, build_halfspaces,
                     check_corollary_bound, contains, halfspace_intersection, interior_point,
                     region_from_halfspaces, tukey_region)
from .search import (CriticalHyperplane, SearchResult, Side, algorithm1, algorithm2, corollary_bound,
                     find_critical, level_count, scan_ridge, seed_search)
from .tolerances import DEFAULT_TOL, Tolerances

__version__ = "0.1.0"
