"""Dita-type matrices: the Bisch projection and the intermediate commuting
square.

Indices i = 1..n split as i -> (i0, i1) with i0 = (i-1) mod m + 1 the
position inside a block and i1 the block number. In matrix terms
M_n = M_k (x) M_m with the block (coarse) leg first, matching the block
layout produced by :func:`hadsub.catalog.dita_compose`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import _phases, catalog_matrix, compose_blocks, dita_compose, fourier
from .commutants import profile
from .hadamard import DEFAULT_TOL, HadamardMatrix, check_hadamard
from .tower import VERIFY_TOL


@dataclass(frozen=True)
class DitaShape:
    n: int
    m: int
    k: int

    def __post_init__(self):
        if self.m < 2 or self.k < 2 or self.m * self.k != self.n:
            raise ValueError(f"invalid Dita shape n={self.n}, m={self.m}, k={self.k}")

    @classmethod
    def of(cls, n: int, m: int) -> "DitaShape":
        if n % m:
            raise ValueError(f"{m} does not divide {n}")
        return cls(n, m, n // m)

    def split(self, i: int) -> tuple[int, int]:
        """1-based i -> (i0, i1)."""
        i0 = (i - 1) % self.m + 1
        return i0, (i - i0) // self.m + 1

    def fine(self) -> np.ndarray:
        """0-based i0 for every 0-based index."""
        return np.arange(self.n) % self.m


def divisor_shapes(n: int) -> list[DitaShape]:
    return [DitaShape.of(n, m) for m in range(2, n // 2 + 1) if n % m == 0]


@dataclass(frozen=True, eq=False)
class BischProjection:
    shape: DitaShape
    mat: np.ndarray

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.mat).real


def bisch_projection(shape: DitaShape) -> BischProjection:
    """f = sum over i = j (mod m) of e_ii (x) e_jj."""
    r = shape.fine()
    support = (r[:, None] == r[None, :]).ravel()
    return BischProjection(shape, np.diag(support.astype(complex)))


@dataclass(frozen=True)
class MembershipCheck:
    member: bool
    worst: float
    # 1-based (i, c, j, d) of the largest p_{i,c}^{j,d} with i0 = j0, c0 != d0
    witness: tuple[int, int, int, int] | None = None


def verify_bisch_membership(H: HadamardMatrix, shape: DitaShape,
                            tol: float = DEFAULT_TOL) -> MembershipCheck:
    """f lies in the second relative commutant iff p_{i,c}^{j,d} = 0
    whenever i0 = j0 and c0 != d0."""
    if H.n != shape.n:
        raise ValueError("shape does not match matrix size")
    p = np.abs(profile(H).p)
    r = shape.fine()
    same = r[:, None] == r[None, :]
    # p[i, c, j, d] with i0 = j0 and c0 != d0
    sel = same[:, None, :, None] & ~same[None, :, None, :]
    vals = np.where(sel, p, 0.0)
    worst = float(vals.max())
    if worst <= tol:
        return MembershipCheck(True, worst)
    idx = np.unravel_index(np.argmax(vals), vals.shape)
    return MembershipCheck(False, worst, tuple(int(v) + 1 for v in idx))


def bisch_commutator(H: HadamardMatrix, shape: DitaShape) -> float:
    """max |[f, P_1]|; vanishes exactly when f is in the second commutant."""
    f = bisch_projection(shape).mat
    P1 = profile(H).matrix()
    return float(np.abs(f @ P1 - P1 @ f).max())


def _cond_exp_fine(shape: DitaShape, x: np.ndarray) -> np.ndarray:
    """Expectation of M_n onto D_m (x) M_k: keep entries with r0 = s0."""
    r = shape.fine()
    return np.where(r[:, None] == r[None, :], x, 0)


def verify_bisch_expectation(shape: DitaShape, tol: float = VERIFY_TOL) -> bool:
    """f (x (x) I) f = (E(x) (x) I) f for every matrix unit x of M_n."""
    n = shape.n
    f = bisch_projection(shape).mat
    eye = np.eye(n)
    for r in range(n):
        for s in range(n):
            x = np.outer(eye[r], eye[s])
            lhs = f @ np.kron(x, eye) @ f
            rhs = np.kron(_cond_exp_fine(shape, x), eye) @ f
            if np.abs(lhs - rhs).max() > tol:
                return False
    return True


@dataclass
class DecompositionCheck:
    passed: bool
    defects: dict[str, float] = field(default_factory=dict)
    span_dim: int = 0
    expected_span_dim: int = 0
    location: str | None = None


def _cond_exp_diag(x: np.ndarray) -> np.ndarray:
    return np.diag(np.diag(x))


def verify_intermediate_decomposition(A, Bs: Sequence, Ds: Sequence | None = None,
                                      tol: float = VERIFY_TOL) -> DecompositionCheck:
    """Check that the spin model square of the Dita matrix (a_ij B_j D_j)
    splits through D_m (x) I_k and U (M_m (x) D_k) U^*.

    defects:
      ``inputs``       Hadamard defect of A, the B_j D_j and the composite.
      ``lower_inclusion``  U^*(D (x) I_k)U against (1/m) sum_j B_j^* D B_j (x) f_jj
                           (columns of A are orthogonal with norm^2 k, so k/n = 1/m).
      ``lower_support``    part of U^*(D (x) I_k)U outside M_m (x) D_k.
      ``upper_expectation`` E_{D_n}(U(X (x) D)U^*) against
                          (1/n) sum_j D_jj E_{D_m}(B_j X B_j^*) (x) I_k.
      ``upper_commuting``  E_{D_n} and E_{D_m (x) I_k} disagree on U(M_m (x) D_k)U^*.
    Tensor factors are written fine (x) coarse as above; matrices are built
    coarse-first.
    """
    a = np.asarray(A, dtype=complex)
    k = a.shape[0]
    blocks = [np.asarray(B, dtype=complex) for B in Bs]
    if Ds is not None:
        blocks = [B * _phases(D)[None, :] for B, D in zip(blocks, Ds)]
    m = blocks[0].shape[0]
    n = m * k
    h = compose_blocks(a, blocks)
    check = DecompositionCheck(passed=True)

    location = None
    for label, mat in [("A", a)] + [(f"B_{j + 1}", B) for j, B in enumerate(blocks)] + [("H", h)]:
        diag = check_hadamard(mat, tol)
        if diag is not None and location is None:
            location = f"{label}: {diag}"
    check.location = location

    u = h / math.sqrt(n)
    I_k, I_m = np.eye(k), np.eye(m)
    fjj = [np.diag(I_k[j]) for j in range(k)]

    lower, support = 0.0, 0.0
    coarse = np.arange(n) // m
    offblock = coarse[:, None] != coarse[None, :]
    for r in range(m):
        D = np.diag(I_m[r])
        got = u.conj().T @ np.kron(I_k, D) @ u
        want = sum(np.kron(fjj[j], blocks[j].conj().T @ D @ blocks[j]) for j in range(k)) / m
        lower = max(lower, float(np.abs(got - want).max()))
        support = max(support, float(np.abs(got[offblock]).max()))

    upper, commuting = 0.0, 0.0
    for r in range(m):
        for s in range(m):
            X = np.outer(I_m[r], I_m[s])
            for j in range(k):
                y = u @ np.kron(fjj[j], X) @ u.conj().T
                got = _cond_exp_diag(y)
                want = np.kron(I_k, _cond_exp_diag(blocks[j] @ X @ blocks[j].conj().T)) / n
                upper = max(upper, float(np.abs(got - want).max()))
                # trace-preserving expectation onto D_m (x) I_k
                fine_part = np.einsum("aiaj->ij", y.reshape(k, m, k, m)) / k
                onto = np.kron(I_k, _cond_exp_diag(fine_part))
                commuting = max(commuting, float(np.abs(got - onto).max()))

    # symmetric lower square: (D_m (x) I_k) . U(D_m (x) D_k)U^* spans U(M_m (x) D_k)U^*
    products = []
    for r in range(m):
        left = np.kron(I_k, np.diag(I_m[r]))
        for j in range(k):
            for s in range(m):
                right = u @ np.kron(fjj[j], np.diag(I_m[s])) @ u.conj().T
                products.append((left @ right).ravel())
    sv = np.linalg.svd(np.array(products), compute_uv=False)
    check.span_dim = int(np.sum(sv > 1e-8 * sv[0]))
    check.expected_span_dim = m * m * k

    check.defects = {
        "inputs": 0.0 if location is None else 1.0,
        "lower_inclusion": lower,
        "lower_support": support,
        "upper_expectation": upper,
        "upper_commuting": commuting,
    }
    numeric_ok = all(v <= tol for key, v in check.defects.items() if key != "inputs")
    dims_ok = m * (m * k) == m * m * k and n * (m * m * k) == n * n * m
    check.passed = location is None and numeric_ok and dims_ok and check.span_dim == check.expected_span_dim
    if check.location is None and not check.passed:
        worst = max(check.defects, key=check.defects.get)
        check.location = f"{worst}: defect {check.defects[worst]:.3e}"
    return check


@dataclass(frozen=True, eq=False)
class DitaComposition:
    A: np.ndarray
    Bs: tuple[np.ndarray, ...]
    Ds: tuple[np.ndarray, ...]
    H: HadamardMatrix

    @property
    def shape(self) -> DitaShape:
        return DitaShape(self.H.n, self.Bs[0].shape[0], self.A.shape[0])


def _small_hadamard(size: int, rng: np.random.Generator) -> np.ndarray:
    if size == 4:
        return catalog_matrix("f4", float(rng.uniform(0, 2 * np.pi))).mat
    return fourier(size)


def random_dita_composition(seed: int, sizes: Sequence[int] = (2, 3, 4),
                            max_n: int = 12) -> DitaComposition:
    """Seeded Dita matrix with k, m drawn from ``sizes`` and m * k <= max_n.

    A and the B_j are Fourier matrices or members of the F_4(a) family;
    every block gets an independent random diagonal twist.
    """
    rng = np.random.default_rng(seed)
    pairs = [(k, m) for k in sizes for m in sizes if k * m <= max_n]
    k, m = pairs[rng.integers(len(pairs))]
    A = _small_hadamard(k, rng)
    Bs = tuple(_small_hadamard(m, rng) for _ in range(k))
    Ds = tuple(np.exp(2j * np.pi * rng.random(m)) for _ in range(k))
    return DitaComposition(A, Bs, Ds, dita_compose(A, Bs, Ds))
