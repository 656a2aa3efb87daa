"""The Jones tower of a spin model, numerically.

Run: python3 demos/02_tower.py
"""

import numpy as np

from hadsub.catalog import catalog_matrix
from hadsub.commutants import odd_profile_compose, profile
from hadsub.tower import (
    algebra_legs,
    jones_projection,
    tower_projection,
    verify_basic_construction,
    verify_commuting_square,
)

H = catalog_matrix("f4", 0.9)
n = H.n

check = verify_commuting_square(H)
print(f"spin model square: passed={check.passed}, irreducible={check.irreducible}, "
      f"defect {check.worst_defect:.1e}")

# Each step of the tower is a basic construction implemented by a Jones projection.
for which in ("C_in_Dn_e2", "Dn_in_Mn_e3", "Mn_in_P1_e4"):
    bc = verify_basic_construction(n, which)
    print(f"{which:12s} passed={bc.passed} span {bc.span_dim}/{bc.expected_dim}")

# The projections P_i conjugate the Jones projections into the tower.
for i in range(1, 5):
    P = tower_projection(H, i)
    idem = np.abs(P.mat @ P.mat - P.mat).max()
    print(f"P_{i}: legs {''.join(P.legs)}, size {P.size}, |P^2 - P| = {idem:.1e}, "
          f"trace/size = {np.trace(P.mat).real / P.size:.4f}")

# P_1 is the profile matrix, and P_3 can be rebuilt from the profile alone.
P1 = tower_projection(H, 1).mat
print("P_1 == profile matrix:", np.allclose(P1, profile(H).matrix()))
P3 = tower_projection(H, 3).mat
print("P_3 == composed profile:", np.allclose(P3, odd_profile_compose(profile(H), 1).mat))

e5 = jones_projection(5, n)
print("e_5 lives on legs", "".join(e5.legs), "==", "".join(algebra_legs(3)))
