"""The spin model commuting square of a Hadamard matrix and its basic
construction tower.

Tower levels P_0 = M_n, P_1 = M_n (x) D_n, P_2 = M_n (x) M_n, ... are realised
as dense matrices acting on (C^n)^{(x) legs}, legs ordered as in ``np.kron``
(first leg is the slowest index). P_{2k} -> P_{2k+1} is x -> x (x) I and
P_{2k+1} -> P_{2k+2} is the identity on matrices, so P_i has size
n ** (floor((i + 1) / 2) + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .hadamard import HadamardMatrix

VERIFY_TOL = 1e-8
DEFAULT_MAX_SIZE = 4096


class SizeLimitError(ValueError):
    """Requested object would exceed the configured matrix size."""


def algebra_legs(i: int) -> tuple[str, ...]:
    """Leg word of P_i: ``"M"`` for a full matrix leg, ``"D"`` for a diagonal one."""
    if i < 0:
        raise ValueError("tower levels start at 0")
    k, odd = divmod(i, 2)
    return ("M",) * (k + 1) + (("D",) if odd else ())


def level_size(i: int, n: int) -> int:
    return n ** len(algebra_legs(i))


@dataclass(frozen=True, eq=False)
class TowerElement:
    """A matrix living in the tower algebra with leg word ``legs``."""

    legs: tuple[str, ...]
    mat: np.ndarray
    n: int

    @property
    def size(self) -> int:
        return self.mat.shape[0]

    def support_defect(self) -> float:
        """Largest entry sitting off the diagonal of some ``"D"`` leg."""
        return _off_support(self.mat, self.legs, self.n)


def _off_support(mat: np.ndarray, legs, n: int) -> float:
    L = len(legs)
    t = mat.reshape((n,) * (2 * L))
    mask = np.ones(t.shape, dtype=bool)
    eye = np.eye(n, dtype=bool)
    for pos, leg in enumerate(legs):
        if leg == "D":
            shape = [1] * (2 * L)
            shape[pos] = shape[L + pos] = n
            mask &= eye.reshape(shape)
    off = np.abs(t[~mask])
    return float(off.max()) if off.size else 0.0


def kron(*mats) -> np.ndarray:
    return reduce(np.kron, mats)


def _eye_legs(n: int, count: int) -> np.ndarray:
    return np.eye(n ** count)


def embed(mat: np.ndarray, level: int, target: int, n: int) -> np.ndarray:
    """Include an element of P_level into P_target (level <= target)."""
    out = mat
    for j in range(level, target):
        if j % 2 == 0:
            out = np.kron(out, np.eye(n))
    return out


def _as_unitary(U, tol: float = VERIFY_TOL) -> np.ndarray:
    if isinstance(U, HadamardMatrix):
        return U.unitary
    u = np.asarray(U, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError("expected a square matrix")
    if np.abs(u @ u.conj().T - np.eye(len(u))).max() > tol:
        raise ValueError("matrix is not unitary")
    return u


def jones_projection(j: int | str, n: int) -> TowerElement:
    """The Jones projection e_j (j >= 2), an element of P_{j-2}.

    e_2 = J/n, e_3 = sum_i e_ii (x) e_ii, and higher ones are
    I^{(x) k} (x) e_2 or I^{(x) k} (x) e_3.
    ``j`` may also be given as ``"e2"``, ``"e3"``, ...
    """
    if isinstance(j, str):
        j = int(j.lstrip("e"))
    if j < 2 or n < 2:
        raise ValueError("need j >= 2 and n >= 2")
    k, r = divmod(j - 2, 2)
    if r == 0:
        base = np.full((n, n), 1.0 / n)
    else:
        base = np.diag(np.eye(n).ravel())
    mat = np.kron(_eye_legs(n, k), base).astype(complex)
    return TowerElement(algebra_legs(j - 2), mat, n)


def d_u(U) -> np.ndarray:
    """D_U = sum_ij sqrt(n) conj(u_ij) e_jj (x) e_ii, a unitary in D_n (x) D_n."""
    u = _as_unitary(U)
    n = len(u)
    # position (j, i) carries conj(h_ij)
    return np.diag(math.sqrt(n) * np.conj(u).T.ravel())


def correction_unitary(U, which: str | int) -> TowerElement:
    """D_U, U_1 = (U (x) I) D_U, or U_k for an integer k >= 1.

    U_{2k+1} = prod_{i=0..k} (I^{(x) i} (x) U_1 (x) I^{(x) k-i}),
    U_{2k} = U_{2k-1} (I^{(x) k} (x) U).
    """
    u = _as_unitary(U)
    n = len(u)
    if which == "D_U":
        return TowerElement(("D", "D"), d_u(u), n)
    if which == "U1":
        which = 1
    k = int(which)
    if k < 1:
        raise ValueError("U_k needs k >= 1")
    u1 = np.kron(u, np.eye(n)) @ d_u(u)
    half, odd = divmod(k, 2)
    if odd:
        factors = [kron(_eye_legs(n, i), u1, _eye_legs(n, half - i)) for i in range(half + 1)]
        mat = reduce(np.matmul, factors)
    else:
        prev = correction_unitary(u, k - 1).mat
        mat = prev @ np.kron(_eye_legs(n, half), u)
    return TowerElement(algebra_legs(k), mat, n)


def tower_projection(U, i: int, max_size: int = DEFAULT_MAX_SIZE) -> TowerElement:
    """P_i = U_i e_{i+3} U_i^*, a projection in P_{i+1}."""
    if i < 1:
        raise ValueError("P_i is defined for i >= 1")
    u = _as_unitary(U)
    n = len(u)
    size = level_size(i + 1, n)
    if size > max_size:
        raise SizeLimitError(f"P_{i} needs a {size}x{size} matrix (limit {max_size})")
    w = embed(correction_unitary(u, i).mat, i, i + 1, n)
    e = jones_projection(i + 3, n).mat
    return TowerElement(algebra_legs(i + 1), w @ e @ w.conj().T, n)


@dataclass(frozen=True)
class CommutingSquareCheck:
    passed: bool
    worst_defect: float
    irreducible: bool


def verify_commuting_square(H, tol: float = VERIFY_TOL) -> CommutingSquareCheck:
    """Check E_{D_n}(U e_kk U^*) = I/n for all k, and whether
    D_n meets U D_n U^* only in the scalars."""
    u = H.unitary if isinstance(H, HadamardMatrix) else _as_unitary(H)
    n = len(u)
    worst = float(np.abs(np.abs(u) ** 2 - 1.0 / n).max())
    # (x, y) -> diag(x) - U diag(y) U^*; its kernel is D_n cap U D_n U^*
    cols = [np.diag(np.eye(n)[i]).ravel() for i in range(n)]
    cols += [-(np.outer(u[:, j], u[:, j].conj())).ravel() for j in range(n)]
    sv = np.linalg.svd(np.array(cols).T, compute_uv=False)
    nullity = int(np.sum(sv <= tol * max(1.0, sv[0])))
    return CommutingSquareCheck(worst <= tol, worst, nullity == 1)


@dataclass(frozen=True)
class BasicConstructionCheck:
    passed: bool
    worst_defect: float
    span_dim: int
    expected_dim: int


def _rank(vectors: list[np.ndarray], tol: float) -> int:
    sv = np.linalg.svd(np.array(vectors), compute_uv=False)
    return int(np.sum(sv > tol * max(1.0, sv[0])))


def verify_basic_construction(n: int, which: str, e: np.ndarray | None = None,
                              tol: float = VERIFY_TOL) -> BasicConstructionCheck:
    """Check that A subset B subset <B, e> is a basic construction.

    ``which`` selects one of the inclusions ``C_in_Dn_e2``, ``Dn_in_Mn_e3``,
    ``Mn_in_P1_e4``. For every matrix unit x of the middle algebra B it
    checks e x e = E_A(x) e, and that span{x e y} + B fills the top algebra.
    Passing ``e`` replaces the Jones projection (for negative tests).
    """
    I = np.eye(n)
    units = [np.outer(I[r], I[s]) for r in range(n) for s in range(n)]
    if which == "C_in_Dn_e2":
        middle = [np.diag(I[r]) for r in range(n)]
        expect = lambda x: np.trace(x) / n * I
        default_e, top_dim = jones_projection(2, n).mat, n * n
    elif which == "Dn_in_Mn_e3":
        middle = [np.kron(x, I) for x in units]
        expect = lambda x: np.diag(np.diag(x))
        default_e, top_dim = jones_projection(3, n).mat, n ** 3
    elif which == "Mn_in_P1_e4":
        middle = [np.kron(x, np.diag(I[i])) for x in units for i in range(n)]
        # partial trace over the diagonal leg, normalised
        expect = lambda x: np.kron(np.einsum("aibi->ab", x.reshape(n, n, n, n)) / n, I)
        default_e, top_dim = jones_projection(4, n).mat, n ** 4
    else:
        raise ValueError(f"unknown inclusion {which!r}")
    e = default_e if e is None else np.asarray(e, dtype=complex)
    worst = max(float(np.abs(e @ x @ e - expect(x) @ e).max()) for x in middle)
    vectors = [x.ravel() for x in middle] + [(x @ e @ y).ravel() for x in middle for y in middle]
    span = _rank(vectors, tol)
    return BasicConstructionCheck(worst <= tol and span == top_dim, worst, span, top_dim)
