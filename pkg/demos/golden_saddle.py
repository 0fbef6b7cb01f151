"""The golden-ratio saddle point behind the shifted-stack asymptotics.

The exponent has a critical point where exp(2 pi i v) = 1/phi. We check the
closed-form values there, then compare the contour integral with the value
recovered from the generating function itself.
"""

import math

from stacklab import asym
from stacklab.genfun import Variant

sd = asym.saddle_data()
print(f"v          = {sd.v}")
print(f"f(v)       = {sd.f_v:.15f}   pi^2/30     = {math.pi**2 / 30:.15f}")
print(f"f''(v)     = {sd.fpp_v:.12f}  -4pi^2 sqrt5 = {-4 * math.pi**2 * math.sqrt(5):.12f}")
print(f"Li2(phi^-2) = {asym.dilog(asym.PHI**-2):.15f}")
print()

print("   eps      contour/fromH      contour/main    hs/h")
for eps in (0.1, 0.05, 0.02, 0.01, 0.005):
    c = asym.contour_A_log(eps)
    r_h = c.ratio(asym.A_from_H_log(eps))
    r_m = c.ratio(asym.A_mainterm(eps))
    print(f"{eps:6.3f}  {r_h:.14f}  {r_m:14.6f}  {asym.hs_over_h(eps):.6f}")
print(f"phi = {asym.PHI:.6f}")
print()

for eps in (0.1, 0.05, 0.02):
    print(f"L(exp(-{eps})) = {float(asym.eval_genfun(Variant.L, eps)):.6f}")
