"""Where do the parametric families change their second commutant?

Run: python3 demos/05_parameter_sweeps.py   (a few seconds)
"""

import math

from hadsub.commutants import zero_pattern_sweep

res = zero_pattern_sweep("f4", 360)
print(f"F_4(a): {res.pattern_count} zero patterns, generic dim {res.generic_dim}")
for p in res.exceptional:
    print(f"   a = exp(2 pi i * {p.params[0] / (2 * math.pi):.3f}) -> dim {p.dim}")

res = zero_pattern_sweep("f6", (72, 72))
print(f"\nF_6(a,b): {len(res.points)} points, generic dim {res.generic_dim}, "
      f"{len(res.exceptional)} exceptional")
for p in res.exceptional:
    ta, tb = (t / (2 * math.pi) for t in p.params)
    print(f"   (a, b) at ({ta:.4f}, {tb:.4f}) of a turn -> dim {p.dim}")

res = zero_pattern_sweep("bn6", 64)
print(f"\nBN_6: {res.pattern_count} zero pattern(s) over 64 angles, dim {res.generic_dim}")
