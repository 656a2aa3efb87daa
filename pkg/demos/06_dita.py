"""Dita block matrices carry an intermediate subfactor.

Run: python3 demos/06_dita.py
"""

import numpy as np

from hadsub.catalog import catalog_matrix, dita_compose, fourier
from hadsub.commutants import second_commutant
from hadsub.dita import (
    DitaShape,
    divisor_shapes,
    random_dita_composition,
    verify_bisch_expectation,
    verify_bisch_membership,
    verify_intermediate_decomposition,
)

rng = np.random.default_rng(0)
A = fourier(3)
Bs = [catalog_matrix("f4", t).mat for t in rng.uniform(0, 2 * np.pi, 3)]
Ds = [np.exp(2j * np.pi * rng.random(4)) for _ in range(3)]
H = dita_compose(A, Bs, Ds)
shape = DitaShape(12, 4, 3)

print(f"H = (a_ij B_j D_j), n = {H.n}")
print("Bisch projection in the second commutant:", verify_bisch_membership(H, shape).member)
print("second commutant dim:", second_commutant(H).dim)
check = verify_intermediate_decomposition(A, Bs, Ds)
print("intermediate commuting squares:", "passed" if check.passed else check.location)
for name, value in check.defects.items():
    print(f"   {name:18s} {value:.1e}")
print("Bisch expectation identity:", verify_bisch_expectation(shape))

# Which splits of the catalog families are Dita?
for spec in [("f4", 0.7), ("f6", 0.4, 1.3), ("f8", 0.3, 0.5, 0.7, 1.1, 1.3), ("bn6", 2.0)]:
    M = catalog_matrix(*spec)
    found = [f"m={s.m}" for s in divisor_shapes(M.n) if verify_bisch_membership(M, s).member]
    print(f"{spec[0]:4s}: Bisch projection for {', '.join(found) or 'no split'}")

comp = random_dita_composition(seed=7)
print(f"\nseeded composition: shape {comp.shape}, dim {second_commutant(comp.H).dim}")
