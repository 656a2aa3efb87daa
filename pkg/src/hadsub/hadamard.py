"""Complex Hadamard matrices: verification, dephasing and equivalence.

Matrices are plain complex ``numpy`` arrays. A :class:`HadamardMatrix` is a
read-only wrapper that certifies the array passed :func:`verify_hadamard`
at its recorded tolerance.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Diagnostic:
    """First violated Hadamard constraint.

    ``index`` is 1-based: an entry ``(i, j)`` for ``constraint == "modulus"``
    and a pair of rows for ``constraint == "orthogonality"``.
    """

    constraint: str
    index: tuple[int, int]
    magnitude: float

    def __str__(self) -> str:
        i, j = self.index
        if self.constraint == "modulus":
            return f"entry ({i},{j}) has modulus {self.magnitude:.6g}, expected 1"
        return f"rows {i},{j} not orthogonal: |<h_{i}, h_{j}>| = {self.magnitude:.6g}"


class NotHadamardError(ValueError):
    def __init__(self, diagnostic: Diagnostic, context: str | None = None):
        msg = str(diagnostic) if context is None else f"{context}: {diagnostic}"
        super().__init__(msg)
        self.diagnostic = diagnostic


@dataclass(frozen=True, eq=False)
class HadamardMatrix:
    """An n x n complex Hadamard matrix together with the tolerance it was
    verified at. Construct through :func:`verify_hadamard`."""

    mat: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    @property
    def unitary(self) -> np.ndarray:
        """U = H / sqrt(n)."""
        return self.mat / math.sqrt(self.n)

    def __array__(self, dtype=None, copy=None):
        return self.mat if dtype is None else self.mat.astype(dtype)

    def __repr__(self) -> str:
        return f"HadamardMatrix(n={self.n}, tol={self.tol:g})"


def _as_square(mat) -> np.ndarray:
    if isinstance(mat, HadamardMatrix):
        return mat.mat
    arr = np.asarray(mat, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has NaN or infinite entries")
    return arr


def check_hadamard(mat, tol: float = DEFAULT_TOL) -> Diagnostic | None:
    """Return ``None`` if ``mat`` is Hadamard within ``tol``, else the first
    violated constraint with its worst offending index."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    h = _as_square(mat)
    n = h.shape[0]
    moddev = np.abs(np.abs(h) - 1.0)
    if moddev.max() > tol:
        i, j = np.unravel_index(np.argmax(moddev), h.shape)
        return Diagnostic("modulus", (int(i) + 1, int(j) + 1), float(abs(h[i, j])))
    gram = h @ h.conj().T - n * np.eye(n)
    defect = np.abs(gram)
    if defect.max() > n * tol:
        i, j = np.unravel_index(np.argmax(defect), h.shape)
        if i > j:
            i, j = j, i
        return Diagnostic("orthogonality", (int(i) + 1, int(j) + 1), float(defect[i, j]))
    return None


def verify_hadamard(mat, tol: float = DEFAULT_TOL) -> HadamardMatrix:
    """Certify ``mat`` as a complex Hadamard matrix.

    Raises :class:`NotHadamardError` carrying a :class:`Diagnostic` if an
    entry is off the unit circle or two rows are not orthogonal, and
    ``ValueError`` for non-square or non-finite input.
    """
    diag = check_hadamard(mat, tol)
    if diag is not None:
        raise NotHadamardError(diag)
    return HadamardMatrix(_as_square(mat), tol)


def dephase(H: HadamardMatrix) -> HadamardMatrix:
    """Equivalent matrix whose first row and first column are all ones."""
    h = H.mat
    out = h * np.conj(h[:, :1]) * np.conj(h[:1, :]) * h[0, 0]
    # first row/column are 1 up to rounding; pin them exactly
    out[0, :] = 1.0
    out[:, 0] = 1.0
    return HadamardMatrix(out, H.tol)


def random_equivalence(H: HadamardMatrix, seed: int = 0) -> HadamardMatrix:
    """P1 D1 H D2 P2 for seeded random permutations P and unit diagonals D."""
    rng = np.random.default_rng(seed)
    n = H.n
    rows = rng.permutation(n)
    cols = rng.permutation(n)
    d1 = np.exp(2j * np.pi * rng.random(n))
    d2 = np.exp(2j * np.pi * rng.random(n))
    out = (d1[:, None] * H.mat * d2[None, :])[rows][:, cols]
    return HadamardMatrix(out, H.tol)


def _decimals(tol: float) -> int:
    return max(0, math.ceil(-math.log10(tol)))


def equivalence_fingerprint(H: HadamardMatrix, tol: float = DEFAULT_TOL) -> list[float]:
    """Sorted moduli of all n^4 profile entries, rounded to ceil(-log10 tol)
    decimals.

    Diagonal phases only multiply profile entries by unimodular factors and
    permutations relabel indices, so this multiset is an equivalence
    invariant (not a complete one).
    """
    from .commutants import profile

    vals = np.round(np.abs(profile(H).p).ravel(), _decimals(tol))
    vals += 0.0  # normalise -0.0
    return sorted(vals.tolist())


def fingerprint_digest(values: list[float], tol: float = DEFAULT_TOL) -> str:
    """Hex SHA-256 of a fingerprint, formatted at the fingerprint's precision."""
    d = _decimals(tol)
    text = ",".join(f"{v:.{d}f}" for v in values)
    return hashlib.sha256(text.encode()).hexdigest()
