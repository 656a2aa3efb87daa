import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hadsub.catalog import (
    BN6_THRESHOLD,
    FAMILIES,
    FamilySpec,
    bn6,
    catalog_matrix,
    compose_blocks,
    dita_compose,
    f4,
    f6,
    fourier,
    representative_specs,
)
from hadsub.hadamard import NotHadamardError, check_hadamard

angles = st.floats(0, 2 * math.pi, allow_nan=False)


@pytest.mark.parametrize("spec", representative_specs(), ids=lambda s: s.label())
def test_representatives_are_hadamard(spec):
    H = spec.build()
    assert check_hadamard(H.mat) is None


def test_fourier_entries():
    F = fourier(6)
    w = cmath.exp(2j * math.pi / 6)
    # indices run from 1, so the all-ones row and column are the last ones
    assert np.isclose(F[0, 0], w)
    assert np.isclose(F[1, 2], w**6)
    assert np.allclose(F[5], 1) and np.allclose(F[:, 5], 1)


def test_f4_layout():
    a = cmath.exp(0.4j)
    expected = np.array([[1, 1, 1, 1], [1, a, -1, -a], [1, -1, 1, -1], [1, -a, -1, a]])
    assert np.allclose(f4(0.4), expected)


def test_f6_at_origin_is_tensor_of_fouriers():
    # F_6(1,1) is equivalent to F_2 (x) F_3, so its profile has the Fourier
    # zero pattern; spot-check by the dephased first row/col
    m = f6(0.0, 0.0)
    assert np.allclose(m[0], 1) and np.allclose(m[:, 0], 1)
    assert check_hadamard(m) is None


@given(angles)
@settings(max_examples=40)
def test_f4_family_hadamard(t):
    assert check_hadamard(f4(t)) is None


@given(angles, angles)
@settings(max_examples=40)
def test_f6_family_hadamard(a, b):
    assert check_hadamard(f6(a, b)) is None


@given(st.tuples(*[angles] * 5))
@settings(max_examples=25)
def test_f8_family_hadamard(params):
    assert catalog_matrix("f8", *params).n == 8


@given(st.floats(BN6_THRESHOLD + 1e-4, math.pi - 1e-4), st.booleans())
@settings(max_examples=40)
def test_bn6_hadamard_and_selfadjoint(theta, negate):
    m = bn6(-theta if negate else theta)
    assert check_hadamard(m) is None
    assert np.abs(m - m.conj().T).max() < 1e-9


def test_bn6_outside_domain():
    with pytest.raises(ValueError):
        bn6(0.5)
    with pytest.raises(ValueError):
        FamilySpec("bn6", (0.5,))


@given(angles)
@settings(max_examples=40)
def test_p7_family_hadamard(t):
    assert catalog_matrix("p7", t).n == 7


def test_family_spec_validation():
    with pytest.raises(ValueError, match="unknown family"):
        FamilySpec("f5", (1.0,))
    with pytest.raises(ValueError, match="takes 2"):
        FamilySpec("f6", (1.0,))
    with pytest.raises(ValueError):
        FamilySpec("fourier", (2.5,))
    assert FamilySpec("fourier", (4.0,)).params == (4,)
    assert FamilySpec("f6", (1.0, 2.0)).label() == "f6(1,2)"


def test_every_family_has_a_representative():
    assert {s.name for s in representative_specs()} == set(FAMILIES)


def test_compose_blocks_is_kron_without_twists():
    A, B = fourier(2), fourier(3)
    assert np.allclose(compose_blocks(A, [B, B]), np.kron(A, B))


def test_dita_compose_with_twists():
    A, B = fourier(3), fourier(2)
    Ds = [np.exp(1j * np.array([0.0, t])) for t in (0.1, 0.7, 2.0)]
    H = dita_compose(A, [B] * 3, Ds)
    assert H.n == 6
    # block (i, j) = a_ij B D_j
    assert np.allclose(H.mat[2:4, 4:6], A[1, 2] * B * Ds[2][None, :])
    # twists as diagonal matrices give the same result
    H2 = dita_compose(A, [B] * 3, [np.diag(d) for d in Ds])
    assert np.array_equal(H.mat, H2.mat)


def test_dita_compose_rejects_non_hadamard_block():
    A, B = fourier(2), fourier(2).astype(complex)
    bad = B.copy()
    bad[0, 0] = 2
    with pytest.raises(NotHadamardError):
        dita_compose(A, [B, bad])


def test_compose_blocks_shape_errors():
    with pytest.raises(ValueError):
        compose_blocks(fourier(2), [fourier(2)])
    with pytest.raises(ValueError):
        compose_blocks(fourier(2), [fourier(2), fourier(3)])
    with pytest.raises(ValueError):
        compose_blocks(fourier(2), [fourier(2)] * 2, [np.ones((2, 2))] * 2)
