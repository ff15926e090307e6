"""
Nested regions of a Gaussian sample
===================================

Regions shrink as the level grows.  Every vertex of a deeper region lies
inside all halfspaces of a shallower one.
"""

import numpy as np

from tukeyregion import Status, export_region, generate_gaussian, tukey_region

cloud = generate_gaussian(60, 2, seed=7)
taus = [1 / 60, 0.1, 0.2, 0.3, 0.4]

regions = [tukey_region(cloud, tau, seed=1) for tau in taus]
for tau, r in zip(taus, regions):
    print(f"tau={tau:.3f}  k={r.k_tau:2d}  {r.status.value:9s}  "
          f"halfspaces={r.num_directions:4d}  vertices={len(r.vertices)}")

###############################################################################
# Nesting, checked directly from the H-descriptions.
for outer, inner in zip(regions, regions[1:]):
    if inner.status is Status.FULLDIM:
        print("min slack of inner vertices:", outer.slacks(inner.vertices).min())

###############################################################################
# Area by the shoelace formula (2-D vertices come in facet order).
for tau, r in zip(taus, regions):
    if r.status is Status.FULLDIM:
        c = r.vertices.mean(axis=0)
        ang = np.arctan2(*(r.vertices - c).T[::-1])
        V = r.vertices[np.argsort(ang)]
        area = 0.5 * abs(np.dot(V[:, 0], np.roll(V[:, 1], -1)) - np.dot(V[:, 1], np.roll(V[:, 0], -1)))
        print(f"tau={tau:.3f}  area={area:.4f}")

###############################################################################
# In three dimensions the region can be written as an OFF mesh for a viewer.
r3 = tukey_region(generate_gaussian(80, 3, seed=7), 0.1, seed=1)
mesh = export_region(r3, "off").decode()
print(mesh.splitlines()[1], "(vertices, faces, edges)")
