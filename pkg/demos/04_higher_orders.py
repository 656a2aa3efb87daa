"""Third and fourth relative commutants by nullspace dimension.

Run: python3 demos/04_higher_orders.py   (a few seconds)
"""

import math
import time

from hadsub.catalog import catalog_matrix
from hadsub.commutants import relative_commutant_dim, temperley_lieb_basis

print("Temperley-Lieb words at index 4:",
      {order: len(temperley_lieb_basis(4, order)) for order in (2, 3, 4)})

for label, spec, order in [
    ("F_4(a) generic", ("f4", 0.7071), 3),
    ("F_4(a) generic", ("f4", 0.7071), 4),
    ("F_4(e^{i pi/4})", ("f4", math.pi / 4), 4),
    ("P_7(1)", ("p7", 0.0), 3),
    ("BN_6(2.0)", ("bn6", 2.0), 3),
]:
    t0 = time.perf_counter()
    res = relative_commutant_dim(catalog_matrix(*spec), order)
    print(f"{label:16s} order {order}: dim {res.dim:3d}  spectral gap {res.gap:.1e}  "
          f"({time.perf_counter() - t0:.1f} s)")
