"""
Depth regions of the unit square
================================

Four points, three depth levels.  The deepest point of the square has depth
1/2, so the three levels below give a full square, a single point and
nothing at all.
"""

import numpy as np

from tukeyregion import PointCloud, depth_exact_small, tukey_region

square = PointCloud(np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]))

###############################################################################
# Depth 1/4: every hull edge is a critical hyperplane cutting off nothing,
# and the region is the square itself.
r = tukey_region(square, 0.25)
print(r)
print(r.vertices)

###############################################################################
# Depth 1/2: the two diagonals, each with both sides critical.  The four
# halfspaces meet in one point; the LP slack is zero.
r = tukey_region(square, 0.5)
print(r.status.value, r.interior_point, r.chebyshev_slack)
for h in r.halfspaces:
    print(h.provenance.tuple, h.provenance.side.value, h.normal.round(4), h.offset)

###############################################################################
# Depth 0.6 is above the maximal depth: the slack LP is infeasible.
r = tukey_region(square, 0.6)
print(r.status.value, r.chebyshev_slack)

###############################################################################
# The exact depth oracle agrees.
for x in ([0.5, 0.5], [0.0, 0.0], [5.0, 5.0]):
    print(x, depth_exact_small(square, x))
