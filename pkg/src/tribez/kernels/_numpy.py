"""Array-at-a-time numpy implementations of the hot kernels."""

import numpy as np


def decasteljau_tri(net, n, x1, x2):
    # net: (n+1, n+1, d) triangular layout, entries with k1+k2 > n unused
    x1 = x1[:, None]
    x2 = x2[:, None]
    x3 = 1.0 - x1 - x2
    b = np.broadcast_to(net[:, :, None, :], (n + 1, n + 1, x1.shape[0], net.shape[2]))
    for _ in range(n):
        b = x1 * b[1:, :-1] + x2 * b[:-1, 1:] + x3 * b[:-1, :-1]
    return np.array(b[0, 0])


def bernstein1d_sum(coeffs, s):
    s = np.asarray(s, dtype=np.float64)
    b = np.broadcast_to(coeffs[:, None], (coeffs.shape[0], s.shape[0]))
    r = 1.0 - s
    for _ in range(coeffs.shape[0] - 1):
        b = r * b[:-1] + s * b[1:]
    return np.array(b[0])


def jacobi_cheb_sums(gamma, alphas, betas):
    # Backward recurrence for many (alpha, beta) pairs at once; the Beta-function
    # factor is applied by the caller.
    r = betas - alphas
    u = alphas + betas + 1.0
    deg = gamma.shape[0] - 1
    d_next = np.zeros_like(r)  # d_{i+1}
    d_cur = np.zeros_like(r)  # d_i
    for i in range(deg, 0, -1):
        d_prev = (2.0 * r * d_cur + (i - u) * d_next - gamma[i]) / (i + u)
        d_next = d_cur
        d_cur = d_prev
    # d_cur = d_0, d_next = d_1
    return 0.5 * gamma[0] - r * d_cur + u * d_next


def etable_fill(e, M, mu1, mu2, mu3, k1s, k2s, up2, dn2, up1, dn1, rows):
    """Fill the table rows by the two recurrences, one row per step.

    ``e`` has one trailing zero column acting as the target of out-of-range
    neighbour indices. ``rows`` maps (k1, k2) to a row index.
    """
    ls = k1s + k2s
    s0l = (ls - M) * (k2s + mu2 + 1.0)
    s2l = k2s * (ls - mu3 - M - 1.0)
    s1l = s0l + s2l
    t0l = (ls - M) * (k1s + mu1 + 1.0)
    t2l = k1s * (ls - mu3 - M - 1.0)
    t1l = t0l + t2l
    for k1 in range(M):
        cols = np.flatnonzero(k1s >= k1)
        for k2 in range(M - k1):
            k = rows[k1, k2]
            kprev = rows[k1, k2 - 1] if k2 > 0 else k
            kn = rows[k1, k2 + 1]
            s0k = s0l[k]
            new = (
                (s1l[k] - s1l[cols]) * e[k, cols]
                - s2l[k] * e[kprev, cols]
                + s0l[cols] * e[k, up2[cols]]
                + s2l[cols] * e[k, dn2[cols]]
            ) / s0k
            e[kn, cols] = new
            e[cols, kn] = new
        cols = np.flatnonzero(k1s >= k1 + 1)
        k = rows[k1, 0]
        kprev = rows[k1 - 1, 0] if k1 > 0 else k
        kn = rows[k1 + 1, 0]
        new = (
            (t1l[k] - t1l[cols]) * e[k, cols]
            - t2l[k] * e[kprev, cols]
            + t0l[cols] * e[k, up1[cols]]
            + t2l[cols] * e[k, dn1[cols]]
        ) / t0l[k]
        e[kn, cols] = new
        e[cols, kn] = new
