"""Scalar-loop kernels compiled with numba.

Same signatures and semantics as :mod:`tribez.kernels._numpy`.
"""

import numba
import numpy as np

from .._accel import NUMBA_OPTS

njit = numba.njit(**NUMBA_OPTS)


@njit
def decasteljau_tri(net, n, x1, x2):
    npts = x1.shape[0]
    d = net.shape[2]
    out = np.empty((npts, d))
    work = np.empty((n + 1, n + 1))
    for p in range(npts):
        a = x1[p]
        b = x2[p]
        c = 1.0 - a - b
        for q in range(d):
            for i in range(n + 1):
                for j in range(n + 1 - i):
                    work[i, j] = net[i, j, q]
            for r in range(n, 0, -1):
                for i in range(r):
                    for j in range(r - i):
                        work[i, j] = a * work[i + 1, j] + b * work[i, j + 1] + c * work[i, j]
            out[p, q] = work[0, 0]
    return out


@njit
def bernstein1d_sum(coeffs, s):
    n = coeffs.shape[0] - 1
    out = np.empty(s.shape[0])
    work = np.empty(n + 1)
    for p in range(s.shape[0]):
        x = s[p]
        y = 1.0 - x
        for i in range(n + 1):
            work[i] = coeffs[i]
        for r in range(n, 0, -1):
            for i in range(r):
                work[i] = y * work[i] + x * work[i + 1]
        out[p] = work[0]
    return out


@njit
def jacobi_cheb_sums(gamma, alphas, betas):
    deg = gamma.shape[0] - 1
    out = np.empty(alphas.shape[0])
    for p in range(alphas.shape[0]):
        r = betas[p] - alphas[p]
        u = alphas[p] + betas[p] + 1.0
        d_next = 0.0
        d_cur = 0.0
        for i in range(deg, 0, -1):
            d_prev = (2.0 * r * d_cur + (i - u) * d_next - gamma[i]) / (i + u)
            d_next = d_cur
            d_cur = d_prev
        out[p] = 0.5 * gamma[0] - r * d_cur + u * d_next
    return out


@njit
def etable_fill(e, M, mu1, mu2, mu3, k1s, k2s, up2, dn2, up1, dn1, rows):
    K = k1s.shape[0]
    s0l = np.empty(K)
    s2l = np.empty(K)
    t0l = np.empty(K)
    t2l = np.empty(K)
    for i in range(K):
        ls = k1s[i] + k2s[i]
        s0l[i] = (ls - M) * (k2s[i] + mu2 + 1.0)
        s2l[i] = k2s[i] * (ls - mu3 - M - 1.0)
        t0l[i] = (ls - M) * (k1s[i] + mu1 + 1.0)
        t2l[i] = k1s[i] * (ls - mu3 - M - 1.0)
    new = np.empty(K)
    for k1 in range(M):
        for k2 in range(M - k1):
            k = rows[k1, k2]
            kprev = rows[k1, k2 - 1] if k2 > 0 else k
            kn = rows[k1, k2 + 1]
            s1k = s0l[k] + s2l[k]
            for c in range(K):
                if k1s[c] < k1:
                    continue
                new[c] = (
                    (s1k - s0l[c] - s2l[c]) * e[k, c]
                    - s2l[k] * e[kprev, c]
                    + s0l[c] * e[k, up2[c]]
                    + s2l[c] * e[k, dn2[c]]
                ) / s0l[k]
            for c in range(K):
                if k1s[c] >= k1:
                    e[kn, c] = new[c]
                    e[c, kn] = new[c]
        k = rows[k1, 0]
        kprev = rows[k1 - 1, 0] if k1 > 0 else k
        kn = rows[k1 + 1, 0]
        t1k = t0l[k] + t2l[k]
        for c in range(K):
            if k1s[c] <= k1:
                continue
            new[c] = (
                (t1k - t0l[c] - t2l[c]) * e[k, c]
                - t2l[k] * e[kprev, c]
                + t0l[c] * e[k, up1[c]]
                + t2l[c] * e[k, dn1[c]]
            ) / t0l[k]
        for c in range(K):
            if k1s[c] > k1:
                e[kn, c] = new[c]
                e[c, kn] = new[c]
