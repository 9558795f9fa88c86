"""Independent dense-matrix cross-check.

This module rebuilds the operator as an explicit matrix in the normalized
indicator basis and extracts singular values with a self-contained Jacobi
eigensolver. It deliberately avoids the analytic norm and spectrum formulas
it is meant to validate: entries come straight from the basis definition and
the diagonalization is numeric, so agreement with the closed forms is
genuine cross-validation rather than the same code path twice.

Dense storage makes this a desk-scale tool; callers are expected to skip
oracle checks above a few hundred vertices (600 by default in the reporting
layer) and say so in their reports.
"""

from __future__ import annotations

import math

import numpy as np

from .compop import OperatorSpec
from .lpspace import basis_vector, norm_p

DEFAULT_MAX_ORACLE_VERTICES = 600


def matrix_of(spec: OperatorSpec) -> np.ndarray:
    """Matrix of the operator in the normalized indicator basis.

    Entry [w, u] is indicator(symbol(w) == u) * sqrt(weight(w) / weight(u)),
    so each row carries at most one nonzero and column u holds one entry per
    preimage element. Rows of excluded vertices are zero.
    """
    if spec.p != 2.0:
        raise ValueError(f"the dense matrix lives on the p = 2 space, got p = {spec.p}")
    n = len(spec.tree)
    lam = spec.weight.values
    m = np.zeros((n, n), dtype=np.float64)
    dom = spec.symbol.domain
    img = spec.symbol.image[dom]
    m[dom, img] = np.sqrt(lam[dom] / lam[img])
    return m


def frobenius_norm(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix, dtype=np.float64)
    return float(np.sqrt(np.sum(matrix * matrix)))


def jacobi_eigenvalues(sym: np.ndarray, rel_tol: float = 1e-14,
                       max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    Each rotation zeroes one off-diagonal pair; sweeps repeat until the
    off-diagonal Frobenius norm falls below ``rel_tol`` times the full
    Frobenius norm, or ``max_sweeps`` runs out, whichever comes first, so
    termination is deterministic. Returns eigenvalues in descending order.
    """
    a = np.array(sym, dtype=np.float64, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    n = a.shape[0]
    if n == 0:
        return np.empty(0, dtype=np.float64)

    for _ in range(max_sweeps):
        total = float(np.linalg.norm(a))
        if total == 0.0:
            break
        off_sq = float(np.sum(a * a) - np.sum(np.diag(a) ** 2))
        if math.sqrt(max(off_sq, 0.0)) <= rel_tol * total:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) <= 1e-150 * abs(diff):
                    # negligible at working precision, and the rotation angle
                    # would underflow; drop the pair outright
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - s * cq
                a[:, q] = s * cp + c * cq
                # the rotation angle is chosen to annihilate this pair
                a[p, q] = 0.0
                a[q, p] = 0.0
    return np.sort(np.diag(a))[::-1]


def svd_values(matrix: np.ndarray, rel_tol: float = 1e-14,
               max_sweeps: int = 100) -> np.ndarray:
    """All singular values of a real matrix, descending.

    Formed as square roots of the eigenvalues of the smaller Gram matrix,
    which is symmetric positive semidefinite; tiny negative eigenvalues from
    roundoff are clipped to zero.
    """
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {matrix.shape}")
    if not np.isfinite(matrix).all():
        raise ValueError("matrix entries must be finite")
    rows, cols = matrix.shape
    # prefer the column Gram on ties: matrices with at most one nonzero per
    # row make it diagonal, so the rotations converge immediately and exactly
    gram = matrix.T @ matrix if cols <= rows else matrix @ matrix.T
    eig = jacobi_eigenvalues(gram, rel_tol=rel_tol, max_sweeps=max_sweeps)
    return np.sqrt(np.clip(eig, 0.0, None))


def norm_search(spec: OperatorSpec, samples: int = 64, seed: int = 0) -> float:
    """Stochastic lower bound on the operator norm at any exponent.

    Takes the best image norm over ``samples`` seeded random unit functions
    plus every normalized indicator. The indicator family contains the exact
    maximizer, so the search meets the closed-form norm up to roundoff while
    remaining a direct evaluation of ||C f||_p.
    """
    samples = int(samples)
    if samples < 1:
        raise ValueError("samples must be >= 1")
    n = len(spec.tree)
    dom = spec.symbol.domain
    img = spec.symbol.image[dom]

    def image_norm(f: np.ndarray) -> float:
        g = np.zeros(n, dtype=np.complex128)
        g[dom] = f[img]
        return norm_p(g, spec.weight, spec.p)

    best = 0.0
    for v in range(n):
        best = max(best, image_norm(basis_vector(spec.weight, v, spec.p)))
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        nz = norm_p(z, spec.weight, spec.p)
        if nz == 0.0:
            continue
        best = max(best, image_norm(z / nz))
    return float(best)


def dump_matrix_csv(matrix: np.ndarray, path) -> None:
    """Write the nonzero triplets (row, col, value) for external checking."""
    matrix = np.asarray(matrix, dtype=np.float64)
    rows, cols = np.nonzero(matrix)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("row,col,value\n")
        for r, c in zip(rows, cols):
            fh.write(f"{int(r)},{int(c)},{matrix[r, c]:.17g}\n")
