import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import (
    components_bfs,
    dense_commutant_dim,
    jones_complement,
    profile_loops,
    second_commutant_dense,
)

from hadsub.catalog import BN6_THRESHOLD, catalog_matrix, fourier
from hadsub.commutants import (
    GAP_WARN,
    Partition,
    commutant_gram,
    commutant_setup,
    commutation_defect,
    gamma_graph,
    jones_block,
    nullity,
    profile,
    relative_commutant_dim,
    second_commutant,
    second_commutant_direct,
    sweep_axis,
    temperley_lieb_basis,
    zero_pattern_sweep,
)
from hadsub.dita import random_dita_composition
from hadsub.hadamard import random_equivalence, verify_hadamard
from hadsub.tower import SizeLimitError, embed, tower_projection

angles = st.floats(0, 2 * math.pi, allow_nan=False)


def twisted_fourier(n, t):
    return verify_hadamard(fourier(n) * np.exp(1j * t * np.arange(n))[None, :])


@given(angles)
@settings(max_examples=20)
def test_profile_matches_loops_f4(t):
    H = catalog_matrix("f4", t)
    assert np.abs(profile(H).p - profile_loops(H.mat)).max() < 1e-14


@pytest.mark.parametrize("spec", [("fourier", 5), ("bn6", 2.0), ("tao",), ("f6", 0.3, 1.1)])
def test_profile_matches_loops(spec):
    H = catalog_matrix(*spec)
    assert np.abs(profile(H).p - profile_loops(H.mat)).max() < 1e-14


def test_fourier_profile_is_indicator():
    n = 5
    p = profile(verify_hadamard(fourier(n))).p
    a, b, c, d = np.indices((n,) * 4)
    expected = ((a - b - c + d) % n == 0) / n
    assert np.allclose(p, expected)


def test_partition_normalises_and_prints():
    part = Partition(((5, 2), (3, 1, 4)))
    assert part.blocks == ((1, 3, 4), (2, 5))
    assert str(part) == "{1,3,4}, {2,5}"
    assert part.traces() == [0.6, 0.4]
    assert Partition.from_labels([7, 7, 3, 7, 3]).blocks == ((1, 2, 4), (3, 5))
    assert jones_block(3) == (1, 5, 9)


@pytest.mark.parametrize("spec", [("f4", 0.7), ("f4", 0.0), ("f6", 0.3, 1.1), ("bn6", -2.2), ("p7", 0.4),
                                  ("haagerup",), ("f8", 0.1, 0.2, 0.3, 0.4, 0.5)])
def test_components_match_bfs(spec):
    H = catalog_matrix(*spec)
    res = second_commutant(H)
    assert [tuple(b) for b in res.partition.blocks] == components_bfs(gamma_graph(H))
    assert res.method == "graph"
    # the Jones block is always one of the minimal projections
    assert jones_block(H.n) in res.partition.blocks


@pytest.mark.parametrize("spec", [("f4", 0.7), ("f4", math.pi / 2), ("fourier", 3), ("fourier", 5),
                                  ("bn6", 2.0), ("tao",)])
def test_nullspace_matches_dense_oracle(spec):
    H = catalog_matrix(*spec)
    direct = second_commutant_direct(H)
    assert direct.dim == second_commutant_dense(H.mat)
    assert direct.dim == second_commutant(H).dim
    assert not direct.ambiguous


@pytest.mark.parametrize("n, t, order", [(2, 0.4, 3), (3, 0.4, 3), (2, 0.4, 4), (3, 0.9, 4)])
def test_higher_orders_match_dense_oracle(n, t, order):
    H = twisted_fourier(n, t)
    mask, q, i = commutant_setup(n, order)
    P = tower_projection(H, i).mat
    assert relative_commutant_dim(H, order).dim == dense_commutant_dim(P, mask, q)


def test_gram_matches_materialised_map():
    H = catalog_matrix("f4", 0.7)
    mask, q, i = commutant_setup(4, 3)
    P = tower_projection(H, i).mat
    G = commutant_gram(P, mask, q)
    cols = []
    for r, s in zip(*np.nonzero(mask)):
        E = np.zeros(mask.shape)
        E[r, s] = 1
        X = np.kron(E, np.eye(q))
        cols.append((X @ P - P @ X).ravel())
    A = np.array(cols).T
    assert np.allclose(G, A.conj().T @ A)


def test_gram_shape_check():
    with pytest.raises(ValueError):
        commutant_gram(np.eye(6), np.eye(4, dtype=bool), 2)


def test_nullity_and_gap():
    G = np.diag([0.0, 1e-14, 1.0, 2.0])
    dim, zmax, nzmin = nullity(G)
    assert (dim, zmax, nzmin) == (2, 1e-14, 1.0)
    # zero matrix: everything is kernel
    assert nullity(np.zeros((3, 3)))[0] == 3


def test_ambiguous_rank_is_flagged():
    from hadsub.commutants import _result_from_gram

    # 1e-10 is just inside the zero threshold and 5e-10 just outside: gap 5
    res = _result_from_gram(3, np.diag([1e-10, 5e-10, 1.0]), 3e-10)
    assert res.gap < GAP_WARN
    assert res.ambiguous
    clean = _result_from_gram(3, np.diag([0.0, 1e-15, 1.0]), 1e-10)
    assert not clean.ambiguous
    # a huge gap still counts as ambiguous when a value sits near the threshold
    near = _result_from_gram(3, np.diag([0.0, 5e-11, 1.0]), 1e-10)
    assert near.gap > 1e9 and near.ambiguous


def test_order_two_via_nullspace_path():
    H = catalog_matrix("f6", 1.0, 2.0)
    assert relative_commutant_dim(H, 2).dim == 4


def test_size_limits_and_force():
    with pytest.raises(SizeLimitError):
        relative_commutant_dim(catalog_matrix("fourier", 9), 3)
    with pytest.raises(SizeLimitError):
        relative_commutant_dim(catalog_matrix("p7", 0.0), 4)
    with pytest.raises(ValueError):
        relative_commutant_dim(catalog_matrix("fourier", 3), 1)
    # F_9 is a Fourier matrix: at order 3 the group structure gives n^2 = 81
    forced = relative_commutant_dim(catalog_matrix("fourier", 9), 3, force=True)
    assert forced.dim == 81


@pytest.mark.parametrize("order, expected", [(2, 2), (3, 5), (4, 14)])
def test_temperley_lieb_basis_counts(order, expected):
    assert len(temperley_lieb_basis(4, order)) == expected


@pytest.mark.parametrize("order", [2, 3, 4])
def test_temperley_lieb_commutes(order):
    H = catalog_matrix("f4", 0.7)
    for X in temperley_lieb_basis(4, order):
        assert commutation_defect(H, X, order) < 1e-10


def test_generic_matrix_has_no_order3_structure_beyond_tl():
    # a generic point of BN_6 carries only the Jones projections at order 2;
    # at order 3 the kernel must still contain the five TL words
    res = relative_commutant_dim(catalog_matrix("bn6", 2.0), 3)
    assert res.dim >= 5
    assert not res.ambiguous


def test_element_outside_commutant_has_defect():
    H = catalog_matrix("f4", 0.7)
    # e_11 (x) e_22 is in D (x) D but not in the second commutant generically
    X = np.zeros((16, 16))
    X[1, 1] = 1
    assert commutation_defect(H, X, 2) > 1e-3
    # embedding preserves the product
    assert embed(X, 1, 2, 4).shape == (16, 16)


@given(st.integers(0, 10_000), st.sampled_from([("f4", 0.7), ("bn6", 2.4), ("f6", 0.3, 1.1), ("p7", 0.2)]))
@settings(max_examples=20, deadline=None)
def test_dim_invariant_under_equivalence(seed, spec):
    H = catalog_matrix(*spec)
    assert second_commutant(random_equivalence(H, seed)).dim == second_commutant(H).dim


@given(st.integers(0, 500))
@settings(max_examples=15, deadline=None)
def test_dim_bounded_by_n(seed):
    H = random_dita_composition(seed).H
    assert 2 <= second_commutant(H).dim <= H.n


def test_non_dita_matrices_have_jones_partition():
    for spec in [("bn6", 2.0), ("tao",), ("haagerup",), ("p7", 0.0)]:
        H = catalog_matrix(*spec)
        assert [tuple(b) for b in second_commutant(H).partition.blocks] == jones_complement(H.n)


def test_f4_sweep_finds_four_roots():
    res = zero_pattern_sweep("f4", 360)
    assert res.generic_dim == 3
    fracs = [round(p.params[0] / (2 * math.pi), 9) for p in res.exceptional]
    assert fracs == [0.0, 0.25, 0.5, 0.75]
    assert all(p.dim == 4 for p in res.exceptional)
    assert len(res.points) == 360


def test_sweep_workers_agree():
    a = zero_pattern_sweep("f4", 24)
    b = zero_pattern_sweep("f4", 24, workers=2)
    assert a.points == b.points


def test_sweep_validation():
    with pytest.raises(ValueError):
        zero_pattern_sweep("f4", 4)
    with pytest.raises(ValueError):
        zero_pattern_sweep("fourier", 10)
    with pytest.raises(ValueError):
        zero_pattern_sweep("f6", (10, 10, 10))
    with pytest.raises(SizeLimitError):
        zero_pattern_sweep("f6", (100, 100), max_points=5000)


def test_bn6_axis_stays_in_domain():
    axis = sweep_axis("bn6", 40)
    assert len(axis) == 40
    assert np.all(np.abs(axis) > BN6_THRESHOLD) and np.all(np.abs(axis) < math.pi)
    res = zero_pattern_sweep("bn6", 16)
    assert res.generic_dim == 2 and res.pattern_count == 1
