"""Two unit-speed arcs of the same length; the one that bends less ends further away.

The first arc lives in the hyperbolic plane of curvature -1 with curvature
kappa1(t).  The second is drawn in a more negatively curved space (k = -2),
inside a tilted totally geodesic slice of three-space, and is allowed to
wiggle as long as |kappa2| <= kappa1.
"""

import numpy as np

from catk import Kappa, SchurInstance, schur_compare
from catk import model_space as ms

ell = 2.5
kappa1 = Kappa.sinusoidal(1.2, [0.3], [1.0], [0.0])
trials = [
    ("same curvature, same plane", kappa1, -1.0, 2),
    ("same curvature, curvier space", kappa1, -2.0, 2),
    ("half the curvature", Kappa.sinusoidal(0.6, [0.15], [1.0], [0.0]), -1.0, 2),
    ("wobbling, in a slice of 3-space", Kappa.sinusoidal(0.0, [0.8], [3.0], [0.4]), -2.0, 3),
]

print(f"arc length {ell}; reference curve kappa1 = 1.2 + 0.3 sin(t) in M^2_-1\n")
for label, kappa2, k_amb, n in trials:
    frame = None
    if n == 3:
        E = ms.base_frame(k_amb, 3)
        c, s = np.cos(0.7), np.sin(0.7)
        frame = (ms.basepoint(k_amb, 3), E[0], c * E[1] + s * E[2])
    v = schur_compare(SchurInstance(kappa1, kappa2, -1.0, k_amb, ell, n, frame))
    print(f"{label:34s} d1 = {v.d1:.6f}  d2 = {v.d2:.6f}  d2 - d1 = {v.margin:+.2e}")

print("\nEvery row has d2 >= d1: less bending never shortens the chord.")
