"""Profile tensor and relative commutants of the Hadamard subfactor.

The second relative commutant is read off the graph Gamma_H of non-zero
profile entries. Higher ones are computed as nullspaces of the commutation
constraint [X, P_i] = 0 with X ranging over D_n' cap P_i.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .catalog import BN6_THRESHOLD, FAMILIES, catalog_matrix
from .hadamard import DEFAULT_TOL, HadamardMatrix
from .tower import (
    SizeLimitError,
    TowerElement,
    algebra_legs,
    embed,
    jones_projection,
    level_size,
    tower_projection,
)

RANK_RTOL = 1e-10
GAP_WARN = 10.0
# default size limits per order: largest n allowed
ORDER_LIMITS = {2: 64, 3: 8, 4: 6}


@dataclass(frozen=True, eq=False)
class ProfileTensor:
    """p[a, b, c, d] = p_{a,b}^{c,d}, stored 0-based."""

    p: np.ndarray

    @property
    def n(self) -> int:
        return self.p.shape[0]

    def matrix(self) -> np.ndarray:
        """P_1 = sum p_{a,b}^{c,d} e_ab (x) e_cd; row (a,c), column (b,d)."""
        n = self.n
        return self.p.transpose(0, 2, 1, 3).reshape(n * n, n * n)

    def __getitem__(self, idx):
        return self.p[idx]


def profile(H: HadamardMatrix) -> ProfileTensor:
    u = H.unitary
    uc = u.conj()
    return ProfileTensor(np.einsum("ai,bi,ci,di->abcd", u, uc, uc, u))


def profile_defects(P: ProfileTensor) -> dict[str, float]:
    """Largest violation of each structural identity of the profile."""
    p, n = P.p, P.n
    M = P.matrix()
    eye = np.eye(n)
    return {
        "conjugate_symmetry": float(np.abs(p - np.conj(p.transpose(1, 0, 3, 2))).max()),
        "reversal_symmetry": float(np.abs(p - p.transpose(3, 2, 1, 0)).max()),
        "diag_cc": float(np.abs(np.einsum("abcc->abc", p) - eye[:, :, None] / n).max()),
        "diag_aa": float(np.abs(np.einsum("aacd->acd", p) - eye[None, :, :] / n).max()),
        "idempotent": float(np.abs(M @ M - M).max()),
        "selfadjoint": float(np.abs(M - M.conj().T).max()),
        "trace": float(abs(np.trace(M).real / n**2 - 1.0 / n)),
    }


@dataclass(frozen=True)
class Partition:
    """Blocks of 1-based vertex labels; vertex (a, c) has label (a-1)n + c."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(v) for v in b)) for b in self.blocks))
        object.__setattr__(self, "blocks", blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __str__(self) -> str:
        return ", ".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(labels, start=1):
            groups.setdefault(int(lab), []).append(v)
        return cls(tuple(tuple(g) for g in groups.values()))

    @property
    def vertex_count(self) -> int:
        return sum(len(b) for b in self.blocks)

    def traces(self) -> list[float]:
        """Normalised traces of the minimal projections."""
        total = self.vertex_count
        return [len(b) / total for b in self.blocks]

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


def jones_block(n: int) -> tuple[int, ...]:
    """{1, n+2, 2n+3, ..., n^2}: the support of e_3."""
    return tuple(k * n + k + 1 for k in range(n))


@dataclass(frozen=True)
class CommutantResult:
    order: int
    dim: int
    method: str
    partition: Partition | None = None
    residual: float | None = None
    gap: float | None = None
    ambiguous: bool = False


def gamma_graph(H: HadamardMatrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Boolean adjacency of Gamma_H on the n^2 vertices (a, c)."""
    adj = np.abs(profile(H).matrix()) > tol
    np.fill_diagonal(adj, False)
    return adj


def second_commutant(H: HadamardMatrix, tol: float = DEFAULT_TOL) -> CommutantResult:
    """Second relative commutant from the connected components of Gamma_H."""
    _, labels = connected_components(gamma_graph(H, tol), directed=False)
    part = Partition.from_labels(labels)
    return CommutantResult(order=2, dim=len(part), method="graph", partition=part)


def commutant_gram(P: np.ndarray, mask: np.ndarray, q: int = 1) -> np.ndarray:
    """Gram matrix of X -> [X, P] on the span of E_rs (x) I_q, (r, s) in ``mask``.

    ``P`` is a projection of size m*q with the identity leg last. Uses
    <[E_rs, P], [E_r's', P]> = d_rr' T_s's + d_ss' T_rr' - 2 tr(P_{rr'} P_{s's})
    where P_{xy} are the q x q blocks of P and T their traces; only this
    d x d matrix is ever formed.
    """
    m = mask.shape[0]
    if P.shape != (m * q, m * q):
        raise ValueError("mask and identity leg do not match the size of P")
    P4 = P.reshape(m, q, m, q)
    T = np.einsum("atbt->ab", P4)
    r, s = np.nonzero(mask)
    d = len(r)
    G = (r[:, None] == r[None, :]) * T[s[None, :], s[:, None]]
    G = G + (s[:, None] == s[None, :]) * T[r[:, None], r[None, :]]
    blocks = P4.transpose(0, 2, 1, 3).reshape(m, m, q * q)
    blocks_t = P4.transpose(0, 2, 3, 1).reshape(m, m, q * q)
    chunk = max(1, (1 << 22) // max(1, d * q * q))
    for lo in range(0, d, chunk):
        hi = min(d, lo + chunk)
        left = blocks[r[lo:hi, None], r[None, :]]
        right = blocks_t[s[None, :], s[lo:hi, None]]
        G[lo:hi] -= 2 * np.einsum("abk,abk->ab", left, right)
    return G


def _spectrum(G: np.ndarray, rtol: float) -> tuple[np.ndarray, float]:
    ev = np.linalg.eigvalsh((G + G.conj().T) / 2)
    top = max(ev[-1], 0.0)
    return ev, rtol * top


def nullity(G: np.ndarray, rtol: float = RANK_RTOL) -> tuple[int, float, float]:
    """Number of eigenvalues of the PSD matrix ``G`` below ``rtol * max``.

    Also returns the largest eigenvalue counted as zero and the smallest one
    kept, so the spectral gap can be inspected.
    """
    ev, thr = _spectrum(G, rtol)
    zero = ev <= thr if thr > 0 else np.ones_like(ev, dtype=bool)
    zmax = float(max(ev[zero].max(), 0.0)) if zero.any() else 0.0
    kept = ev[~zero]
    nzmin = float(kept.min()) if kept.size else math.inf
    return int(zero.sum()), zmax, nzmin


def _result_from_gram(order, G, rtol, method="nullspace", partition=None) -> CommutantResult:
    dim, zmax, nzmin = nullity(G, rtol)
    _, thr = _spectrum(G, rtol)
    gap = math.inf if zmax == 0.0 else nzmin / zmax
    residual = math.sqrt(nzmin) if math.isfinite(nzmin) else math.inf
    # singular values are square roots of Gram eigenvalues, so "within a
    # factor 10 of the threshold" is a factor 100 here
    near = bool(thr > 0 and (zmax >= thr / 100 or nzmin <= thr * 100))
    return CommutantResult(order=order, dim=dim, method=method, partition=partition,
                           residual=residual, gap=gap, ambiguous=gap < GAP_WARN or near)


def second_commutant_direct(H: HadamardMatrix, tol: float = DEFAULT_TOL,
                            rtol: float = RANK_RTOL) -> CommutantResult:
    """All X = sum lambda_i^j e_ii (x) e_jj with [X, P_1] = 0, by nullspace."""
    P1 = profile(H).matrix()
    mask = np.eye(H.n * H.n, dtype=bool)
    return _result_from_gram(2, commutant_gram(P1, mask), rtol)


def commutant_setup(n: int, order: int) -> tuple[np.ndarray, int, int]:
    """(mask, identity-leg size, tower index i) for the order-(i+1) commutant.

    Unknowns range over D_n (x) M_n (x) ... of P_i, included into P_{i+1}.
    """
    i = order - 1
    if i < 1:
        raise ValueError("relative commutants start at order 2")
    legs = algebra_legs(i)
    pattern = [np.eye(n, dtype=bool)] + [
        np.eye(n, dtype=bool) if leg == "D" else np.ones((n, n), dtype=bool) for leg in legs[1:]
    ]
    mask = pattern[0]
    for pat in pattern[1:]:
        mask = np.kron(mask, pat)
    q = level_size(i + 1, n) // level_size(i, n)
    return mask, q, i


def relative_commutant_dim(H: HadamardMatrix, order: int, tol: float = DEFAULT_TOL,
                           rtol: float = RANK_RTOL, force: bool = False) -> CommutantResult:
    """Dimension of D_n' cap Q_i = P_i' cap D_n' cap P_i, with order = i + 1.

    Orders 3 and 4 are the intended use; order 2 goes through the same
    nullspace path as :func:`second_commutant_direct`.
    """
    n = H.n
    if not force and order in ORDER_LIMITS and n > ORDER_LIMITS[order]:
        raise SizeLimitError(f"order {order} limited to n <= {ORDER_LIMITS[order]} (got n = {n})")
    if order == 2:
        return second_commutant_direct(H, tol, rtol)
    mask, q, i = commutant_setup(n, order)
    P = tower_projection(H, i, max_size=max(level_size(i + 1, n), 1)).mat
    return _result_from_gram(order, commutant_gram(P, mask, q), rtol)


def odd_profile_compose(P: ProfileTensor, i: int, max_size: int = 4096) -> TowerElement:
    """P_{2i+1} rebuilt from the profile alone.

    Coefficient of e_ab (x) e_{k1 l1} (x) ... (x) e_cd is
    n^i p_{a,b}^{k1,l1} p_{k1,l1}^{k2,l2} ... p_{ki,li}^{c,d}.
    """
    if i < 1:
        raise ValueError("i >= 1")
    n = P.n
    size = n ** (i + 2)
    if size > max_size:
        raise SizeLimitError(f"P_{2 * i + 1} needs a {size}x{size} matrix (limit {max_size})")
    # chain over legs; t has index order (row legs..., col legs...)
    p = P.p
    t = p.transpose(0, 2, 1, 3)  # (a, k, b, l)
    for _ in range(i):
        L = t.ndim // 2
        # contract the last leg pair (k, l) with the first pair of the next factor
        t = n * np.einsum(t_sig(L), t, p)
    L = t.ndim // 2
    mat = t.reshape(n**L, n**L)
    return TowerElement(algebra_legs(2 * i + 2), mat, n)


def t_sig(L: int) -> str:
    """einsum signature appending one leg to a chain of length L."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows, cols = letters[:L], letters[L:2 * L]
    new_r, new_c = letters[2 * L], letters[2 * L + 1]
    k, l = rows[-1], cols[-1]
    return f"{rows}{cols},{k}{l}{new_r}{new_c}->{rows}{new_r}{cols}{new_c}"


def temperley_lieb_basis(n: int, order: int, tol: float = 1e-9) -> list[np.ndarray]:
    """Linearly independent words in the Jones projections e_3, ..., e_{i+2}
    (i = order - 1), as matrices of P_i."""
    i = order - 1
    gens = [embed(jones_projection(j, n).mat, j - 2, i, n) for j in range(3, i + 3)]
    size = level_size(i, n)
    basis = [np.eye(size, dtype=complex)]
    frontier = list(basis)

    def independent(x):
        stack = np.array([b.ravel() for b in basis] + [x.ravel()])
        sv = np.linalg.svd(stack, compute_uv=False)
        return sv[-1] > tol * sv[0]

    while frontier:
        new = []
        for w, g in product(frontier, gens):
            x = w @ g
            if independent(x):
                basis.append(x)
                new.append(x)
        frontier = new
    return basis


def commutation_defect(H: HadamardMatrix, X: np.ndarray, order: int) -> float:
    """max |[X, P_i]| for X in P_i, included into P_{i+1}."""
    i = order - 1
    P = tower_projection(H, i, max_size=level_size(i + 1, H.n)).mat
    Xe = embed(X, i, i + 1, H.n)
    return float(np.abs(Xe @ P - P @ Xe).max())


# --------------------------------------------------------------------------
# parameter sweeps


@dataclass(frozen=True)
class SweepPoint:
    index: int
    params: tuple[float, ...]
    signature: str
    zero_count: int
    dim: int


@dataclass
class SweepResult:
    family: str
    grid: tuple[int, ...]
    points: list[SweepPoint]
    generic_signature: str
    generic_dim: int
    exceptional: list[SweepPoint] = field(default_factory=list)

    @property
    def pattern_count(self) -> int:
        return len({p.signature for p in self.points})


def sweep_axis(family: str, count: int) -> np.ndarray:
    """Angles sampled for one parameter of ``family``."""
    if family == "bn6":
        # midpoints of equal cells over the two admissible arcs
        width = math.pi - BN6_THRESHOLD
        cells = (np.arange(count) + 0.5) / count * 2 * width
        return np.where(cells < width, BN6_THRESHOLD + cells, -BN6_THRESHOLD - (cells - width))
    return 2 * np.pi * np.arange(count) / count


def _sweep_point(args) -> tuple[str, int, int]:
    name, params, tol = args
    H = catalog_matrix(name, *params)
    p = np.abs(profile(H).p) <= tol
    sig = hashlib.sha1(np.packbits(p.ravel()).tobytes()).hexdigest()
    return sig, int(p.sum()), second_commutant(H, tol).dim


def zero_pattern_sweep(family: str, grid: Sequence[int] | int, tol: float = DEFAULT_TOL,
                       max_points: int = 200_000, workers: int = 1) -> SweepResult:
    """Record the zero pattern of the profile and the second-commutant
    dimension over a regular angle grid.

    The generic pattern is the most frequent one (ties: first on the grid);
    every point with another pattern is exceptional. Results are in grid
    order regardless of ``workers``.
    """
    if family not in FAMILIES or family == "fourier" or FAMILIES[family][0] == 0:
        raise ValueError(f"{family!r} has no angle parameters to sweep")
    arity = FAMILIES[family][0]
    grid = (grid,) * arity if isinstance(grid, int) else tuple(grid)
    if len(grid) == 1 and arity > 1:
        grid = grid * arity
    if len(grid) != arity:
        raise ValueError(f"{family} needs {arity} grid sizes")
    if min(grid) < 8:
        raise ValueError("grid needs at least 8 points per parameter")
    total = math.prod(grid)
    if total > max_points:
        raise SizeLimitError(f"{total} grid points exceed the limit of {max_points}")
    axes = [sweep_axis(family, g) for g in grid]
    params = [tuple(float(x) for x in pt) for pt in product(*axes)]
    jobs = [(family, pt, tol) for pt in params]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(_sweep_point, jobs, chunksize=64))
    else:
        out = [_sweep_point(job) for job in jobs]
    points = [SweepPoint(k, pt, sig, zc, dim) for k, (pt, (sig, zc, dim)) in enumerate(zip(params, out))]
    counts = Counter(p.signature for p in points)
    best = max(counts.values())
    generic = next(p for p in points if counts[p.signature] == best)
    exceptional = [p for p in points if p.signature != generic.signature]
    return SweepResult(family, grid, points, generic.signature, generic.dim, exceptional)
