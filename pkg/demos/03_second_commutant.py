"""Second relative commutants from the zero pattern of the profile.

Run: python3 demos/03_second_commutant.py
"""

import math

from hadsub.catalog import catalog_matrix
from hadsub.commutants import second_commutant, second_commutant_direct

cases = [
    ("F_4(a) generic", ("f4", 2 * math.pi * 0.113)),
    ("F_4(1)", ("f4", 0.0)),
    ("F_4(i)", ("f4", math.pi / 2)),
    ("F_6(a,b) generic", ("f6", 0.4, 1.3)),
    ("BN_6(2.0)", ("bn6", 2.0)),
    ("Tao", ("tao",)),
    ("P_7(1)", ("p7", 0.0)),
    ("F_8 generic", ("f8", 0.3, 0.5, 0.7, 1.1, 1.3)),
]

for name, spec in cases:
    H = catalog_matrix(*spec)
    graph = second_commutant(H)
    direct = second_commutant_direct(H)
    print(f"{name:18s} dim {graph.dim} (nullspace agrees: {graph.dim == direct.dim})")
    if H.n <= 6:
        print("   ", graph.partition)

# Fourier matrices reach the upper bound n.
for n in range(2, 9):
    print(f"F_{n}: dim {second_commutant(catalog_matrix('fourier', n)).dim}")
