"""Numba kernel lane. Contracts match _kernels_np.py exactly.

All kernels are nopython, nogil (the ensemble worker pool is thread-based) and
cached on disk. The sequential 1D recurrences are shared with the fallback lane
and compiled as-is.
"""

import numpy as np
from numba import njit

from . import _kernels_np as _py

count_pivots_cyclic_1d = njit(cache=True, nogil=True)(_py.count_pivots_cyclic_1d)
solve_cyclic_1d = njit(cache=True, nogil=True)(_py.solve_cyclic_1d)


@njit(cache=True, nogil=True)
def count_pivots_banded_2d(diag, L, thresh):
    n = L * L
    nb = n - L
    bw = L
    band = np.zeros((nb, bw + 1))
    bord = np.zeros((nb, L))
    corner = np.zeros((L, L))
    for j in range(nb):
        band[j, 0] = diag[j]
        xx = j % L
        yy = j // L
        if xx < L - 1:
            band[j, 1] = -1.0
        if xx == 0:
            band[j, L - 1] += -1.0
        if yy < L - 2:
            band[j, L] = -1.0
        if yy == 0:
            bord[j, xx] += -1.0
        if yy == L - 2:
            bord[j, xx] += -1.0
    for b in range(L):
        corner[b, b] = diag[nb + b]
        if b < L - 1:
            corner[b, b + 1] = -1.0
            corner[b + 1, b] = -1.0
    corner[0, L - 1] += -1.0
    corner[L - 1, 0] += -1.0

    count = 0
    for j in range(nb):
        p = band[j, 0]
        if abs(p) < thresh:
            return 0, 1
        if p < 0.0:
            count += 1
        reach = bw if bw < nb - 1 - j else nb - 1 - j
        for k1 in range(1, reach + 1):
            c1 = band[j, k1]
            if c1 != 0.0:
                inv = c1 / p
                for k2 in range(k1, reach + 1):
                    band[j + k1, k2 - k1] -= inv * band[j, k2]
                for b in range(L):
                    bord[j + k1, b] -= inv * bord[j, b]
        for b1 in range(L):
            c1 = bord[j, b1]
            if c1 != 0.0:
                inv = c1 / p
                for b2 in range(L):
                    corner[b1, b2] -= inv * bord[j, b2]
    for i in range(L):
        p = corner[i, i]
        if abs(p) < thresh:
            return 0, 1
        if p < 0.0:
            count += 1
        for r in range(i + 1, L):
            cri = corner[r, i]
            if cri != 0.0:
                inv = cri / p
                for c in range(i + 1, L):
                    corner[r, c] -= inv * corner[i, c]
    return count, 0


@njit(cache=True, nogil=True)
def cg_stencil(v, L, d, tol, maxiter):
    n = v.shape[0]
    dg = np.empty(n)
    for i in range(n):
        dg[i] = v[i] + 2.0 * d
    x = np.zeros(n)
    r = np.ones(n)
    p = np.ones(n)
    ap = np.empty(n)
    rs = float(n)
    res = 1.0
    it = 0
    for it in range(1, maxiter + 1):
        if d == 1:
            for i in range(n):
                ip = i + 1 if i + 1 < n else 0
                im = i - 1 if i >= 1 else n - 1
                ap[i] = dg[i] * p[i] - p[ip] - p[im]
        else:
            for y in range(L):
                bu = (y - 1 if y >= 1 else L - 1) * L
                bd = (y + 1 if y + 1 < L else 0) * L
                base = y * L
                for xx in range(L):
                    xl = xx - 1 if xx >= 1 else L - 1
                    xr = xx + 1 if xx + 1 < L else 0
                    i = base + xx
                    ap[i] = dg[i] * p[i] - p[base + xl] - p[base + xr] - p[bu + xx] - p[bd + xx]
        pap = 0.0
        for i in range(n):
            pap += p[i] * ap[i]
        alpha = rs / pap
        res = 0.0
        for i in range(n):
            x[i] += alpha * p[i]
            r[i] -= alpha * ap[i]
            ar = abs(r[i])
            if ar > res:
                res = ar
        if res <= tol:
            break
        rsn = 0.0
        for i in range(n):
            rsn += r[i] * r[i]
        beta = rsn / rs
        for i in range(n):
            p[i] = r[i] + beta * p[i]
        rs = rsn
    return x, res, it


@njit(cache=True, nogil=True)
def jacobi_eigenvalues(a, max_sweeps):
    A = a.copy()
    n = A.shape[0]
    w = np.empty(n)
    if n == 1:
        w[0] = A[0, 0]
        return w, 0
    norm2 = 0.0
    for i in range(n):
        for j in range(n):
            norm2 += A[i, j] * A[i, j]
    norm = np.sqrt(norm2)
    if norm == 0.0:
        for i in range(n):
            w[i] = 0.0
        return w, 0
    target = 1e-12 * norm
    converged = False
    for _ in range(max_sweeps):
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += 2.0 * A[i, j] * A[i, j]
        if np.sqrt(off2) <= target:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= target / n:
                    continue
                app = A[p, p]
                aqq = A[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for i in range(n):
                    if i != p and i != q:
                        aip = A[i, p]
                        aiq = A[i, q]
                        A[i, p] = c * aip - s * aiq
                        A[p, i] = A[i, p]
                        A[i, q] = c * aiq + s * aip
                        A[q, i] = A[i, q]
                A[p, p] = app - t * apq
                A[q, q] = aqq + t * apq
                A[p, q] = 0.0
                A[q, p] = 0.0
    if not converged:
        off2 = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off2 += 2.0 * A[i, j] * A[i, j]
        converged = np.sqrt(off2) <= target
    for i in range(n):
        w[i] = A[i, i]
    w = np.sort(w)
    return w, (0 if converged else 1)
