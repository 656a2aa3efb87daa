"""Slow, independent reference implementations used to cross-check the library.

Nothing here calls into the code paths it is meant to check: loops instead of
einsum, breadth-first search instead of scipy's components, and explicitly
materialised commutator maps instead of the closed-form Gram matrix.
"""

from collections import deque
from itertools import product

import numpy as np


def profile_loops(h):
    """p[a, b, c, d] = sum_i u_ai conj(u_bi) conj(u_ci) u_di by plain loops."""
    h = np.asarray(h, dtype=complex)
    n = h.shape[0]
    u = h / np.sqrt(n)
    p = np.zeros((n, n, n, n), dtype=complex)
    for a, b, c, d in product(range(n), repeat=4):
        s = 0j
        for i in range(n):
            s += u[a, i] * np.conj(u[b, i]) * np.conj(u[c, i]) * u[d, i]
        p[a, b, c, d] = s
    return p


def profile_matrix_loops(h):
    """P_1 with row (a, c) and column (b, d) filled entry by entry."""
    p = profile_loops(h)
    n = p.shape[0]
    M = np.zeros((n * n, n * n), dtype=complex)
    for a, b, c, d in product(range(n), repeat=4):
        M[a * n + c, b * n + d] = p[a, b, c, d]
    return M


def components_bfs(adj):
    """Connected components of an undirected boolean adjacency matrix, as
    sorted tuples of 1-based vertex labels."""
    adj = np.asarray(adj, dtype=bool)
    N = adj.shape[0]
    seen = np.zeros(N, dtype=bool)
    blocks = []
    for start in range(N):
        if seen[start]:
            continue
        seen[start] = True
        queue, comp = deque([start]), []
        while queue:
            v = queue.popleft()
            comp.append(v + 1)
            for w in np.nonzero(adj[v] | adj[:, v])[0]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
        blocks.append(tuple(sorted(comp)))
    return sorted(blocks)


def dense_commutant_dim(P, mask, q=1, rtol=1e-9):
    """dim of {X supported on ``mask``: [X (x) I_q, P] = 0}, by building the
    linear map column by column and counting small singular values."""
    P = np.asarray(P, dtype=complex)
    m = mask.shape[0]
    eye_q = np.eye(q)
    cols = []
    for r, s in zip(*np.nonzero(mask)):
        E = np.zeros((m, m))
        E[r, s] = 1.0
        X = np.kron(E, eye_q)
        cols.append((X @ P - P @ X).ravel())
    A = np.array(cols).T
    sv = np.linalg.svd(A, compute_uv=False)
    top = sv[0] if sv.size and sv[0] > 0 else 1.0
    rank = int(np.sum(sv > rtol * top))
    return A.shape[1] - rank


def second_commutant_dense(h, rtol=1e-9):
    """Diagonal X in M_n (x) M_n commuting with P_1."""
    M = profile_matrix_loops(h)
    N = M.shape[0]
    return dense_commutant_dim(M, np.eye(N, dtype=bool), 1, rtol)


def odd_tower_loops(h):
    """P_3 entry by entry: coefficient of e_ab (x) e_kl (x) e_cd is
    n p_{a,b}^{k,l} p_{k,l}^{c,d}, stored with legs (a, k, c) x (b, l, d)."""
    p = profile_loops(h)
    n = p.shape[0]
    M = np.zeros((n**3, n**3), dtype=complex)
    for a, b, k, l, c, d in product(range(n), repeat=6):
        M[(a * n + k) * n + c, (b * n + l) * n + d] = n * p[a, b, k, l] * p[k, l, c, d]
    return M


def fourier_classes(n):
    """Blocks {(a, c): a - c = const mod n} as 1-based labels (a-1)n + c."""
    blocks = {}
    for a in range(n):
        for c in range(n):
            blocks.setdefault((a - c) % n, []).append(a * n + c + 1)
    return sorted(tuple(b) for b in blocks.values())


def jones_complement(n):
    diag = tuple(i * n + i + 1 for i in range(n))
    rest = tuple(v for v in range(1, n * n + 1) if v not in diag)
    return sorted([diag, rest])
