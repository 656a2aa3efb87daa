"""Parametric families of complex Hadamard matrices and the Dita block
construction.

Unit-circle parameters are passed as real angles (radians) and exponentiated
here, so callers never build off-circle values. Every matrix is returned with
the row/column order in which it is usually printed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .hadamard import DEFAULT_TOL, HadamardMatrix, verify_hadamard, NotHadamardError

# |theta| must be at least this for BN_6(theta) to be defined
BN6_THRESHOLD = math.acos((-1 + math.sqrt(3)) / 2)


def _u(angle: float) -> complex:
    return complex(np.exp(1j * angle))


def _e(frac: float) -> complex:
    """e^{i pi frac}."""
    return _u(math.pi * frac)


def fourier(n: int) -> np.ndarray:
    """F_n = (w^{ij})_{1<=i,j<=n}, w = e^{2 pi i / n}; indices start at 1."""
    idx = np.arange(1, n + 1)
    return np.exp(2j * np.pi * np.outer(idx, idx) / n)


def f4(t: float) -> np.ndarray:
    a = _u(t)
    return np.array([
        [1, 1, 1, 1],
        [1, a, -1, -a],
        [1, -1, 1, -1],
        [1, -a, -1, a],
    ])


def f6(ta: float, tb: float) -> np.ndarray:
    a, b = _u(ta), _u(tb)
    return np.array([
        [1, 1, 1, 1, 1, 1],
        [1, a * _e(1 / 3), b * _e(2 / 3), -1, a / _e(2 / 3), b / _e(1 / 3)],
        [1, _e(2 / 3), _e(-2 / 3), 1, _e(2 / 3), _e(-2 / 3)],
        [1, -a, b, -1, a, -b],
        [1, _e(-2 / 3), _e(2 / 3), 1, _e(-2 / 3), _e(2 / 3)],
        [1, a / _e(1 / 3), b / _e(2 / 3), -1, a * _e(2 / 3), b * _e(1 / 3)],
    ])


def bn6(theta: float) -> np.ndarray:
    """Self-adjoint BN_6 family. Square roots use the principal branch."""
    if not BN6_THRESHOLD <= abs(theta) <= math.pi:
        raise ValueError(
            f"bn6 angle {theta} outside [-pi, -{BN6_THRESHOLD:.6f}] U [{BN6_THRESHOLD:.6f}, pi]")
    y = _u(theta)
    root = np.sqrt(2) * np.sqrt(1 + 2 * y + 2 * y**3 + y**4)
    z = (1 + 2 * y - y**2) / (y * (-1 + 2 * y + y**2))
    x = (1 + 2 * y + y**2 - root) / (1 + 2 * y - y**2)
    t = (1 + 2 * y + y**2 - root) / (-1 + 2 * y + y**2)
    c = np.conj
    return np.array([
        [1, 1, 1, 1, 1, 1],
        [1, -1, c(x), -y, -c(x), y],
        [1, x, -1, t, -t, -x],
        [1, -c(y), c(t), -1, c(y), -c(t)],
        [1, -x, -c(t), y, 1, c(z)],
        [1, c(y), -c(x), -t, z, 1],
    ])


def p7(t: float) -> np.ndarray:
    a = _u(t)
    e1, e2, m1 = _e(1 / 3), _e(2 / 3), _e(-1 / 3)
    return np.array([
        [1, 1, 1, 1, 1, 1, 1],
        [1, a * e1, a / e2, m1, -1, -1, e1],
        [1, a / e2, a * e1, -1, m1, -1, e1],
        [1, m1, -1, e1 / a, 1 / (a * e2), e1, -1],
        [1, -1, m1, 1 / (a * e2), e1 / a, e1, -1],
        [1, -1, -1, e1, e1, _e(-2 / 3), m1],
        [1, e1, e1, -1, -1, m1, _e(-2 / 3)],
    ])


def f8(ta: float, tb: float, tc: float, td: float, tz: float) -> np.ndarray:
    a, b, c, d, z = (_u(t) for t in (ta, tb, tc, td, tz))
    i = 1j
    q1, q3 = _e(1 / 4), _e(3 / 4)
    return np.array([
        [1, 1, 1, 1, 1, 1, 1, 1],
        [1, a * q1, i * b, c * q3, -1, a / q3, -i * b, c / q1],
        [1, i * d, -1, -i * d, 1, i * d, -1, -i * d],
        [1, q3 * z, -i * b, c * q1 * z / a, -1, z / q1, i * b, c * z / (a * q3)],
        [1, -1, 1, -1, 1, -1, 1, -1],
        [1, a / q3, i * b, c / q1, -1, a * q1, -i * b, c * q3],
        [1, -i * d, -1, i * d, 1, -i * d, -1, i * d],
        [1, z / q1, -i * b, c * z / (a * q3), -1, q3 * z, i * b, c * q1 * z / a],
    ])


def tao() -> np.ndarray:
    w = np.exp(2j * np.pi / 3)
    pattern = [
        [0, 0, 0, 0, 0, 0],
        [0, 0, 1, 1, 2, 2],
        [0, 1, 0, 2, 2, 1],
        [0, 1, 2, 0, 1, 2],
        [0, 2, 2, 1, 0, 1],
        [0, 2, 1, 2, 1, 0],
    ]
    return w ** np.array(pattern)


def haagerup() -> np.ndarray:
    i = 1j
    return np.array([
        [1, 1, 1, 1, 1, 1],
        [1, -1, i, i, -i, -i],
        [1, i, -1, -i, i, -i],
        [1, i, -i, -1, -i, i],
        [1, -i, i, -i, -1, i],
        [1, -i, -i, i, i, -1],
    ])


# name -> (number of parameters, builder)
FAMILIES: dict[str, tuple[int, Callable[..., np.ndarray]]] = {
    "fourier": (1, fourier),
    "f4": (1, f4),
    "f6": (2, f6),
    "bn6": (1, bn6),
    "p7": (1, p7),
    "f8": (5, f8),
    "tao": (0, tao),
    "haagerup": (0, haagerup),
}


@dataclass(frozen=True)
class FamilySpec:
    """A family name plus its parameters (angles; ``fourier`` takes n)."""

    name: str
    params: tuple[float, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise ValueError(f"unknown family {self.name!r}; known: {', '.join(FAMILIES)}")
        object.__setattr__(self, "params", tuple(self.params))
        arity = FAMILIES[self.name][0]
        if len(self.params) != arity:
            raise ValueError(f"family {self.name} takes {arity} parameter(s), got {len(self.params)}")
        if self.name == "fourier":
            n = self.params[0]
            if int(n) != n or n < 1:
                raise ValueError("fourier takes a positive integer size")
            object.__setattr__(self, "params", (int(n),))
        if self.name == "bn6" and not BN6_THRESHOLD <= abs(self.params[0]) <= math.pi:
            raise ValueError(f"bn6 angle {self.params[0]} outside its domain")

    def build(self, tol: float = DEFAULT_TOL) -> HadamardMatrix:
        return catalog_matrix(self, tol=tol)

    def label(self) -> str:
        if not self.params:
            return self.name
        return f"{self.name}({','.join(f'{p:g}' for p in self.params)})"


def catalog_matrix(family: str | FamilySpec, *params: float, tol: float = DEFAULT_TOL) -> HadamardMatrix:
    """Build a catalog matrix and certify it.

    >>> catalog_matrix("f4", math.pi / 2).n
    4
    """
    spec = family if isinstance(family, FamilySpec) else FamilySpec(family, params)
    mat = FAMILIES[spec.name][1](*spec.params)
    try:
        return verify_hadamard(mat, tol)
    except NotHadamardError as err:
        # e.g. bn6 at its domain endpoints, where the principal root loses accuracy
        raise NotHadamardError(err.diagnostic, spec.label()) from None


def representative_specs() -> list[FamilySpec]:
    """One or more fixed members of every family, used for batch checks."""
    tau = 2 * math.pi
    specs = [FamilySpec("fourier", (n,)) for n in range(2, 9)]
    specs += [
        FamilySpec("f4", (tau * 0.113,)),
        FamilySpec("f4", (0.0,)),
        FamilySpec("f4", (math.pi / 2,)),
        FamilySpec("f4", (math.pi / 4,)),
        FamilySpec("f6", (1.0, 2.0)),
        FamilySpec("f6", (0.0, 0.0)),
        FamilySpec("bn6", (2.0,)),
        FamilySpec("bn6", (-2.7,)),
        FamilySpec("p7", (0.0,)),
        FamilySpec("p7", (0.9,)),
        FamilySpec("f8", (0.3, 0.5, 0.7, 1.1, 1.3)),
        FamilySpec("tao"),
        FamilySpec("haagerup"),
    ]
    return specs


def _phases(D) -> np.ndarray:
    d = np.asarray(D, dtype=complex)
    if d.ndim == 2:
        if np.abs(d - np.diag(np.diag(d))).max() > 0:
            raise ValueError("twist matrices must be diagonal")
        d = np.diag(d)
    return d


def compose_blocks(A, Bs: Sequence, Ds: Sequence | None = None) -> np.ndarray:
    """Block matrix (a_ij B_j D_j) without any Hadamard check."""
    a = np.asarray(A, dtype=complex)
    k = a.shape[0]
    blocks = [np.asarray(B, dtype=complex) for B in Bs]
    if a.shape != (k, k) or len(blocks) != k:
        raise ValueError(f"A must be k x k with k = len(Bs); got {a.shape} and {len(blocks)} blocks")
    m = blocks[0].shape[0]
    if any(B.shape != (m, m) for B in blocks):
        raise ValueError("all B_j must have the same square size")
    if Ds is not None:
        if len(Ds) != k:
            raise ValueError("need one twist per block")
        blocks = [B * _phases(D)[None, :] for B, D in zip(blocks, Ds)]
        if any(bl.shape != (m, m) for bl in blocks):
            raise ValueError("twist size does not match block size")
    return np.block([[a[i, j] * blocks[j] for j in range(k)] for i in range(k)])


def dita_compose(A, Bs: Sequence, Ds: Sequence | None = None,
                 tol: float = DEFAULT_TOL) -> HadamardMatrix:
    """Dita block matrix H[(i-1)m+r, (j-1)m+s] = a_ij (B_j D_j)_rs.

    With every B_j equal and no twists this is the Kronecker product A (x) B.
    ``Ds`` are unit-modulus diagonals, given as phase vectors or diagonal
    matrices.
    """
    return verify_hadamard(compose_blocks(A, Bs, Ds), tol)
