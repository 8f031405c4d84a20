"""Total curvature of spheres and how it grows under parallel offsets.

A geodesic sphere of radius r in hyperbolic space has Gauss-Kronecker
curvature coth(r)^2 everywhere, so its total curvature is 4 pi cosh(r)^2
and the absolute version equals it (the sphere is tight).  A peanut-shaped
surface has saddle regions, which push the absolute total curvature
above the signed one.
"""

import numpy as np

from catk import surfaces as sf

print("surface                     area        G        G~       gap")
for label, S in [("euclidean sphere r=1", sf.geodesic_sphere(0, 1.0)),
                 ("hyperbolic sphere r=1", sf.geodesic_sphere(-1, 1.0)),
                 ("euclidean dumbbell", sf.dumbbell(0, 0.6)),
                 ("hyperbolic dumbbell", sf.dumbbell(-1, 0.6))]:
    r = sf.curvature_integrals(S, (128, 128))
    print(f"{label:22s} {r.area:10.5f} {r.G:9.5f} {r.G_tilde:9.5f} {r.gap:9.2e}")

print(f"\n4 pi cosh(1)^2 = {4 * np.pi * np.cosh(1) ** 2:.5f}")

eps = [0.0, 0.25, 0.5, 0.75]
tab = sf.parallel_sweep(sf.geodesic_sphere(-1, 1.0), eps, (64, 64))
print("\nparallel offsets of the hyperbolic unit sphere")
print(" eps      area         G    4 pi cosh^2(1+eps)")
for row in tab.rows:
    print(f"{row['eps']:4.2f} {row['area']:9.4f} {row['G']:9.4f} {4 * np.pi * np.cosh(1 + row['eps']) ** 2:12.4f}")
print(f"total curvature increasing: {tab.G_monotone}; area increasing: {tab.area_monotone}")
