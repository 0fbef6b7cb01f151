"""How quickly do the exact counts approach their main terms?

Each family grows like C * n^(-alpha) * exp(pi * sqrt(beta * n)). We compute
exact coefficients to n = 5000 and watch the ratio creep towards 1.
"""

import time

from stacklab import asym
from stacklab.genfun import Variant, series

VARIANTS = [Variant.GS, Variant.S, Variant.SS, Variant.G, Variant.H, Variant.HS,
            Variant.D, Variant.DM, Variant.FPHI]
SIZES = [50, 500, 2000, 5000]

t0 = time.perf_counter()
coeffs = {v: series(v, max(SIZES)) for v in VARIANTS}
print(f"exact series to order {max(SIZES)} in {time.perf_counter() - t0:.1f}s\n")

print("variant  " + "".join(f"{n:>10d}" for n in SIZES))
for v in VARIANTS:
    ratios = [asym.coeff_ratio(v, n, coeffs[v]) for n in SIZES]
    print(f"{v.value:8s} " + "".join(f"{r:10.5f}" for r in ratios))

n = 5000
mt = asym.main_term(Variant.DM)
print(f"\ndm({n}) has {len(str(coeffs[Variant.DM][n]))} digits; "
      f"main term {asym.main_term_value(mt, n).scientific()}")

print("\nthe two asymptotic shapes agree:")
for v in (Variant.DM, Variant.H, Variant.HS):
    got = asym.ingham_transfer(asym.EPS_ASYM[v])
    ref = asym.main_term(v)
    print(f"  {v.value:3s} C={got.C:.15f} vs {ref.C:.15f}")
