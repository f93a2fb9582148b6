"""Pure numpy/python kernel lane.

Same contracts as the numba lane in _kernels_nb.py. The 1D pivot recurrences are
sequential and stay plain Python loops; the 2D factorization, conjugate
gradient, and Jacobi sweeps are vectorized per step.

Status codes: 0 ok, 1 pivot below threshold (count kernels) or non-positive
pivot (solve kernel).
"""

import numpy as np


def count_pivots_cyclic_1d(diag, thresh):
    """Negative-pivot count of the cyclic tridiagonal matrix with the given
    (already shifted) diagonal and -1 couplings, eliminating in natural order
    while carrying the periodic corner fill in the last row/column.

    Returns (count, status).
    """
    n = diag.shape[0]
    count = 0
    cur = diag[0]
    fcur = -1.0  # corner entry (0, n-1)
    alast = diag[n - 1]
    for i in range(n - 2):
        p = cur
        if abs(p) < thresh:
            return 0, 1
        if p < 0.0:
            count += 1
        cur = diag[i + 1] - 1.0 / p
        alast -= fcur * fcur / p
        fcur = fcur / p
    p = cur
    if abs(p) < thresh:
        return 0, 1
    if p < 0.0:
        count += 1
    off = -1.0 + fcur  # merged (n-2, n-1) coupling: original -1 plus fill
    alast -= off * off / p
    if abs(alast) < thresh:
        return 0, 1
    if alast < 0.0:
        count += 1
    return count, 0


def solve_cyclic_1d(diag, rhs):
    """LDL^T solve of the same cyclic tridiagonal system (must be positive
    definite). Returns (x, status)."""
    n = diag.shape[0]
    d = np.empty(n)
    l1 = np.empty(max(n - 2, 1))
    l2 = np.empty(max(n - 2, 1))
    cur = diag[0]
    fcur = -1.0
    alast = diag[n - 1]
    for i in range(n - 2):
        p = cur
        if p <= 0.0:
            return np.zeros(n), 1
        d[i] = p
        l1[i] = -1.0 / p
        l2[i] = fcur / p
        cur = diag[i + 1] - 1.0 / p
        alast -= fcur * fcur / p
        fcur = fcur / p
    p = cur
    if p <= 0.0:
        return np.zeros(n), 1
    d[n - 2] = p
    off = -1.0 + fcur
    loff = off / p
    alast -= off * off / p
    if alast <= 0.0:
        return np.zeros(n), 1
    d[n - 1] = alast

    y = rhs.copy()
    for i in range(n - 2):
        y[i + 1] -= l1[i] * y[i]
        y[n - 1] -= l2[i] * y[i]
    y[n - 1] -= loff * y[n - 2]
    for i in range(n):
        y[i] /= d[i]
    y[n - 2] -= loff * y[n - 1]
    for i in range(n - 3, -1, -1):
        y[i] -= l1[i] * y[i + 1] + l2[i] * y[n - 1]
    return y, 0


def count_pivots_banded_2d(diag, L, thresh):
    """Negative-pivot count for the 2D periodic lattice matrix, lexicographic
    order, bandwidth-L band plus a dense border block for the last row of
    cells (the vertical wrap falls outside any band).

    diag is the already shifted diagonal, flattened y*L + x.
    Returns (count, status).
    """
    n = L * L
    nb = n - L
    bw = L
    band = np.zeros((nb, bw + 1))
    bord = np.zeros((nb, L))
    band[:, 0] = diag[:nb]
    xs = np.arange(nb) % L
    ys = np.arange(nb) // L
    band[xs < L - 1, 1] = -1.0
    band[xs == 0, L - 1] += -1.0
    band[ys < L - 2, L] = -1.0
    bord[np.arange(L), xs[:L]] = -1.0  # y == 0 wraps up to the border row
    jl = np.arange(nb - L, nb)
    bord[jl, xs[jl]] += -1.0  # y == L-2 couples down into the border row
    corner = np.zeros((L, L))
    corner[np.arange(L), np.arange(L)] = diag[nb:]
    corner[np.arange(L - 1), np.arange(1, L)] = -1.0
    corner[np.arange(1, L), np.arange(L - 1)] = -1.0
    corner[0, L - 1] += -1.0
    corner[L - 1, 0] += -1.0

    count = 0
    for j in range(nb):
        p = band[j, 0]
        if abs(p) < thresh:
            return 0, 1
        if p < 0.0:
            count += 1
        reach = min(bw, nb - 1 - j)
        brow = bord[j]
        if reach > 0:
            col = band[j, 1 : reach + 1]
            inv = col / p
            for k1 in range(1, reach + 1):
                c1 = inv[k1 - 1]
                if c1 != 0.0:
                    band[j + k1, 0 : reach + 1 - k1] -= c1 * col[k1 - 1 :]
            bord[j + 1 : j + reach + 1] -= np.outer(inv, brow)
        corner -= np.outer(brow / p, brow)
    for i in range(L):
        p = corner[i, i]
        if abs(p) < thresh:
            return 0, 1
        if p < 0.0:
            count += 1
        if i < L - 1:
            col = corner[i + 1 :, i] / p
            corner[i + 1 :, i + 1 :] -= np.outer(col, corner[i, i + 1 :])
    return count, 0


def cg_stencil(v, L, d, tol, maxiter):
    """Conjugate gradient for (diag(v + 2d) - hopping) u = 1 on the periodic
    lattice, stopping on the max-norm residual. Returns (x, residual, iters)."""
    shape = (L,) if d == 1 else (L, L)
    dg = (v + 2.0 * d).reshape(shape)

    def matvec(p):
        out = dg * p
        for ax in range(d):
            out = out - np.roll(p, 1, axis=ax) - np.roll(p, -1, axis=ax)
        return out

    x = np.zeros(shape)
    r = np.ones(shape)
    p = r.copy()
    rs = float((r * r).sum())
    res = 1.0
    it = 0
    for it in range(1, maxiter + 1):
        ap = matvec(p)
        alpha = rs / float((p * ap).sum())
        x += alpha * p
        r -= alpha * ap
        res = float(np.abs(r).max())
        if res <= tol:
            break
        rs_new = float((r * r).sum())
        p = r + (rs_new / rs) * p
        rs = rs_new
    return x.reshape(v.shape[0]), res, it


def jacobi_eigenvalues(a, max_sweeps):
    """All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
    ascending. Sweeps until the off-diagonal Frobenius norm drops below
    1e-12 * ||A||_F. Returns (eigenvalues, status)."""
    A = np.array(a, dtype=np.float64, copy=True)
    n = A.shape[0]
    if n == 1:
        return A[:, 0].copy(), 0
    norm = float(np.sqrt((A * A).sum()))
    target = 1e-12 * norm
    if norm == 0.0:
        return np.zeros(n), 0
    for _ in range(max_sweeps):
        off2 = float((A * A).sum() - (np.diag(A) ** 2).sum())
        if np.sqrt(max(off2, 0.0)) <= target:
            return np.sort(np.diag(A)), 0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= target / n:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                colp = A[:, p].copy()
                colq = A[:, q].copy()
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = A[q, :].copy()
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, q] = 0.0
                A[q, p] = 0.0
    off2 = float((A * A).sum() - (np.diag(A) ** 2).sum())
    if np.sqrt(max(off2, 0.0)) <= target:
        return np.sort(np.diag(A)), 0
    return np.sort(np.diag(A)), 1
