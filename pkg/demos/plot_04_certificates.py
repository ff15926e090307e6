"""
Checking a region against the raw data
======================================

Every halfspace of a region carries a certificate that can be recounted, and
small regions can be checked vertex by vertex with an exact depth oracle.
"""

import numpy as np

from tukeyregion import (cutoff_count, depth_count_exact, generate_gaussian, tukey_region,
                         verify_region)

cloud = generate_gaussian(20, 3, seed=3)
outer = tukey_region(cloud, 0.1, seed=1)
inner = tukey_region(cloud, 0.2, seed=1)

report = verify_region(cloud, inner, coarser=outer)
print("\n".join(report.lines()))

###############################################################################
# One halfspace by hand: k - 1 points strictly below, p on the hyperplane.
h = inner.halfspaces[0]
print(h.provenance, tuple(cutoff_count(cloud, h.normal, h.offset)))

###############################################################################
# Pushing a facet centroid slightly outward drops the depth below k / n.
f = inner.facets[0]
u = inner.halfspaces[f.halfspace].normal
x = inner.vertices[list(f.vertices)].mean(axis=0)
print("on facet:", depth_count_exact(cloud, x), " outside:", depth_count_exact(cloud, x - 1e-6 * u))

###############################################################################
# Affine maps carry regions to regions.
A = np.array([[2.0, 0.3, 0.0], [0.0, 0.5, -1.0], [0.2, 0.0, 1.5]])
moved = tukey_region(type(cloud)(cloud.points @ A.T + 1.0), 0.2, seed=1)
print("same tuples:", moved.search.tuples() == inner.search.tuples())
