"""Build the catalog matrices, check them, and look at what equivalence keeps.

Run: python3 demos/01_catalog_and_equivalence.py
"""

import math

import numpy as np

from hadsub.catalog import catalog_matrix, representative_specs
from hadsub.hadamard import check_hadamard, dephase, equivalence_fingerprint, fingerprint_digest, random_equivalence

# Every family in the catalog, at one or more fixed parameters.
for spec in representative_specs():
    H = spec.build()
    print(f"{spec.label():28s} n={H.n}  hadamard={check_hadamard(H.mat) is None}")

# Break one entry and the checker names it.
broken = catalog_matrix("f4", 0.3).mat.copy()
broken[1, 2] *= 0.5
print("\nbroken F_4(a):", check_hadamard(broken))

# Equivalent matrices (row/column permutations and phases) share the
# fingerprint: the sorted moduli of the profile entries.
H = catalog_matrix("f6", 0.4, 1.3)
G = random_equivalence(H, seed=3)
print("\nF_6(a,b) fingerprint      ", fingerprint_digest(equivalence_fingerprint(H))[:16])
print("equivalent copy fingerprint", fingerprint_digest(equivalence_fingerprint(G))[:16])
print("dephased copy has unit first row:", np.allclose(dephase(G).mat[0], 1))

# The fingerprint is not complete: F_2 (x) F_2 and F_4 are not equivalent
# but their profiles have identical moduli.
a = equivalence_fingerprint(catalog_matrix("f4", 0.0))
b = equivalence_fingerprint(catalog_matrix("f4", math.pi / 2))
print("F_4(1) vs F_4(i) fingerprints equal:", a == b)
