"""Build a convex polygon that majorizes a random star polygon.

The star polygon is drawn in M^2_-2.  Its distance matrix is developed
into the less curved plane M^2_-1 as a fan of triangles, then the
development is straightened into a convex polygon with the same side
lengths.  The map back to the original vertices never stretches a
distance.
"""

import numpy as np

from catk import convexify_majorant, fan_development
from catk import model_space as ms

rng = np.random.default_rng(3)
kp, k = -2.0, -1.0
m = 9
th = np.sort(rng.uniform(0, 2 * np.pi, m))
r = rng.uniform(0.3, 1.8, m)
o = ms.basepoint(kp)
e1, e2 = ms.base_frame(kp)
V = ms.coord_exp(kp, o, np.cos(th)[:, None] * e1 + np.sin(th)[:, None] * e2, r)
D = ms.coord_dist(kp, V[:, None], V[None, :], check=False)

res = convexify_majorant(fan_development(D, k))
P = res.majorant
print(f"{m}-gon in M^2_{kp:g} developed into M^2_{k:g}")
print(f"straightening steps:   {res.steps}")
print(f"side length error:     {res.edge_error:.1e}")
print(f"largest expansion:     {res.max_expansion:.1e}  (roundoff: no distance grows)")
print(f"Gauss-Bonnet residual: {res.gauss_bonnet_residual:.1e}")
print("interior angles of the majorant (degrees):")
print(np.round(np.degrees(P.angles), 2))
