"""
Exhaustive scan versus breadth-first search
===========================================

The exhaustive scan visits all C(n, p-1) ridges.  The breadth-first search
starts from one critical hyperplane and only scans ridges of hyperplanes it
has already found.  Both return the same set.
"""

import math
import time

from tukeyregion import algorithm1, algorithm2, generate_gaussian

cloud = generate_gaussian(160, 3, seed=1)
print("ridges:", math.comb(cloud.n, cloud.p - 1))

for tau in (0.025, 0.05, 0.1, 0.2, 0.3):
    t0 = time.perf_counter()
    a = algorithm1(cloud, tau)
    t1 = time.perf_counter()
    b = algorithm2(cloud, tau, rng=1)
    t2 = time.perf_counter()
    print(f"tau={tau:5.3f}  M={len(a):6d}  same={a.keys() == b.keys()}  "
          f"naive {t1 - t0:.2f}s  bfs {t2 - t1:.2f}s ({b.ridges_scanned} ridges)")

###############################################################################
# The scan time hardly depends on the level; the search time grows with the
# number of critical hyperplanes.
