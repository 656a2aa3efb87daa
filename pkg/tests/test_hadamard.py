import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadsub.catalog import catalog_matrix, fourier
from hadsub.hadamard import (
    Diagnostic,
    HadamardMatrix,
    NotHadamardError,
    check_hadamard,
    dephase,
    equivalence_fingerprint,
    fingerprint_digest,
    random_equivalence,
    verify_hadamard,
)

angles = st.floats(0, 2 * math.pi, allow_nan=False)


def test_fourier_passes():
    H = verify_hadamard(fourier(5))
    assert isinstance(H, HadamardMatrix)
    assert H.n == 5
    assert np.allclose(H.unitary @ H.unitary.conj().T, np.eye(5))


def test_matrix_is_read_only():
    H = verify_hadamard(fourier(3))
    with pytest.raises(ValueError):
        H.mat[0, 0] = 2


def test_modulus_violation_names_entry():
    h = fourier(4)
    h[2, 3] = 0.5
    diag = check_hadamard(h)
    assert diag == Diagnostic("modulus", (3, 4), 0.5)
    with pytest.raises(NotHadamardError, match=r"entry \(3,4\)"):
        verify_hadamard(h)


def test_orthogonality_violation_names_rows():
    h = fourier(4)
    h[1, 1] = h[1, 1] * np.exp(0.3j)
    diag = check_hadamard(h)
    assert diag.constraint == "orthogonality"
    assert 2 in diag.index
    assert diag.magnitude > 0.1


def test_tolerance_is_respected():
    h = fourier(3) * np.exp(1j * 1e-7 * np.arange(3))[None, :]
    h[0, 0] *= 1 + 1e-7
    assert check_hadamard(h, 1e-9) is not None
    assert check_hadamard(h, 1e-6) is None


@pytest.mark.parametrize("bad", [np.ones((2, 3)), np.ones(4), np.array([[1, np.nan], [1, -1]])])
def test_shape_and_nan_rejected(bad):
    with pytest.raises(ValueError):
        check_hadamard(bad)


def test_nonpositive_tol_rejected():
    with pytest.raises(ValueError):
        check_hadamard(fourier(2), 0.0)


@given(angles, st.integers(0, 10_000))
def test_dephase_gives_ones(t, seed):
    H = random_equivalence(catalog_matrix("f4", t), seed)
    D = dephase(H)
    assert np.all(D.mat[0] == 1) and np.all(D.mat[:, 0] == 1)
    assert check_hadamard(D.mat) is None


@given(st.integers(2, 8), st.integers(0, 10_000))
@settings(max_examples=30)
def test_random_equivalence_is_hadamard_and_seeded(n, seed):
    H = verify_hadamard(fourier(n))
    A, B = random_equivalence(H, seed), random_equivalence(H, seed)
    assert np.array_equal(A.mat, B.mat)
    assert check_hadamard(A.mat) is None


@given(angles, st.integers(0, 10_000))
@settings(max_examples=30)
def test_fingerprint_invariant_under_equivalence(t, seed):
    H = catalog_matrix("f4", t)
    G = random_equivalence(H, seed)
    assert fingerprint_digest(equivalence_fingerprint(G)) == fingerprint_digest(equivalence_fingerprint(H))


def test_fingerprint_separates_inequivalent():
    a = equivalence_fingerprint(catalog_matrix("f4", 0.7))
    b = equivalence_fingerprint(catalog_matrix("f4", math.pi / 2))
    assert a != b


def test_fingerprint_is_not_complete():
    # F_2 (x) F_2 and F_4 are inequivalent but both profiles take the values
    # 0 and 1/4 with the same multiplicities
    a = equivalence_fingerprint(catalog_matrix("f4", 0.0))
    b = equivalence_fingerprint(catalog_matrix("f4", math.pi / 2))
    assert a == b


def test_fingerprint_length_and_order():
    fp = equivalence_fingerprint(verify_hadamard(fourier(3)))
    assert len(fp) == 3**4
    assert fp == sorted(fp)
    assert len(fingerprint_digest(fp)) == 64
