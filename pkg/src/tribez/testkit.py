"""Brute-force oracles for testing.

Nothing here calls into the main computational path: Bernstein polynomials
are evaluated from the monomial formula, Gauss-Jacobi rules are built by
Newton iteration on the Jacobi three-term recurrence, and least-squares
problems are solved through an explicitly assembled Gram system.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from functools import lru_cache

import numpy as np


def _theta(n):
    return [(i, j) for i in range(n + 1) for j in range(n + 1 - i)]


def _multinomial(n, k):
    return math.factorial(n) // (math.factorial(k[0]) * math.factorial(k[1]) * math.factorial(n - k[0] - k[1]))


# --------------------------------------------------------------------------
# Gauss-Jacobi


def _jacobi_p(n, a, b, x):
    """P_n^{(a,b)}(x) and P_{n-1}^{(a,b)}(x)."""
    p_prev = np.ones_like(x)
    if n == 0:
        return p_prev, np.zeros_like(x)
    p = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * x
    for k in range(2, n + 1):
        c = 2 * k + a + b
        a1 = 2 * k * (k + a + b) * (c - 2)
        a2 = (c - 1) * (a * a - b * b)
        a3 = (c - 2) * (c - 1) * c
        a4 = 2 * (k + a - 1) * (k + b - 1) * c
        p, p_prev = ((a2 + a3 * x) * p - a4 * p_prev) / a1, p
    return p, p_prev


@lru_cache(maxsize=256)
def gauss_jacobi(Q: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1] for the weight ``(1-x)^a (1+x)^b``."""
    if not 1 <= Q <= 128:
        raise ValueError(f"rule order must be in 1..128, got {Q}")
    i = np.arange(1, Q + 1)
    x = np.cos((i + 0.5 * a - 0.25) * np.pi / (Q + 0.5 * (a + b + 1.0)))
    found = []
    for z in x:
        for _ in range(100):
            p, pm = _jacobi_p(Q, a, b, z)
            c = 2 * Q + a + b
            dp = (Q * (a - b - c * z) * p + 2 * (Q + a) * (Q + b) * pm) / (c * (1 - z * z))
            defl = sum(1.0 / (z - r) for r in found)
            step = p / (dp - p * defl)
            z -= step
            if abs(step) < 1e-15:
                break
        found.append(z)
    x = np.array(found)
    p, pm = _jacobi_p(Q, a, b, x)
    c = 2 * Q + a + b
    dp = (Q * (a - b - c * x) * p + 2 * (Q + a) * (Q + b) * pm) / (c * (1 - x * x))
    logc = (
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(Q + a + 1) + math.lgamma(Q + b + 1)
        - math.lgamma(Q + a + b + 1) - math.lgamma(Q + 1)
    )
    w = math.exp(logc) / ((1.0 - x * x) * dp * dp)
    # pin the zeroth moment to its exact value 2^{a+b+1} B(a+1, b+1)
    mass = math.exp((a + b + 1.0) * math.log(2.0) + math.lgamma(a + 1) + math.lgamma(b + 1) - math.lgamma(a + b + 2))
    w *= mass / math.fsum(w)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


# --------------------------------------------------------------------------
# evaluation and inner products


def bernstein_direct(n, k, x):
    """``B^n_k`` from the monomial formula; ``x`` is (P, 2), real or complex."""
    x = np.asarray(x)
    x1, x2 = x[:, 0], x[:, 1]
    return _multinomial(n, k) * x1 ** k[0] * x2 ** k[1] * (1 - x1 - x2) ** (n - k[0] - k[1])


def patch_direct(n, points, x):
    """Sum of control points times Bernstein polynomials, (P, d)."""
    points = np.asarray(points)
    if points.ndim == 1:
        points = points[:, None]
    B = np.column_stack([bernstein_direct(n, k, x) for k in _theta(n)])
    return B @ points


def rational_direct(n, points, weights, x):
    w = np.asarray(weights, dtype=np.float64)
    num = patch_direct(n, np.asarray(points, dtype=np.float64).reshape(len(w), -1) * w[:, None], x)
    den = patch_direct(n, w, x)
    return num / den


@lru_cache(maxsize=64)
def _triangle_rule(alpha, Q):
    a1, a2, a3 = alpha
    xs, ws = gauss_jacobi(Q, a2 + a3 + 1.0, a1)
    xt, wt = gauss_jacobi(Q, a3, a2)
    s = 0.5 * (xs + 1.0)
    t = 0.5 * (xt + 1.0)
    ws = ws / 2.0 ** (a1 + a2 + a3 + 2.0)
    wt = wt / 2.0 ** (a2 + a3 + 1.0)
    S, T = np.meshgrid(s, t, indexing="ij")
    pts = np.column_stack([S.ravel(), ((1.0 - S) * T).ravel()])
    W = np.outer(ws, wt).ravel()
    A = math.exp(math.lgamma(a1 + a2 + a3 + 3) - sum(math.lgamma(a + 1) for a in alpha))
    return pts, A * W


def triangle_rule(alpha, Q=60):
    """Points on T and weights integrating ``w_alpha`` times a smooth function."""
    return _triangle_rule(tuple(float(a) for a in alpha), int(Q))


def oracle_inner_product(f, g, alpha, Q=60) -> float:
    """``<f, g>_alpha`` for callables mapping (P, 2) points to (P,) values."""
    pts, W = triangle_rule(alpha, Q)
    return float(np.sum(W * np.asarray(f(pts)).ravel() * np.asarray(g(pts)).ravel()))


def oracle_gram(m, alpha, indices, Q=None) -> np.ndarray:
    Q = Q or max(m + 2, 20)
    pts, W = triangle_rule(alpha, Q)
    B = np.column_stack([bernstein_direct(m, k, pts) for k in indices])
    return B.T @ (W[:, None] * B)


def oracle_dual_table(m, alpha, c) -> tuple[list, np.ndarray]:
    """Inverse of the constrained Gram matrix, assembled by quadrature."""
    c1, c2, c3 = c
    idx = [k for k in _theta(m) if k[0] >= c1 and k[1] >= c2 and k[0] + k[1] <= m - c3]
    return idx, np.linalg.inv(oracle_gram(m, alpha, idx))


# --------------------------------------------------------------------------
# least squares


def oracle_constrained_ls(problem, Q=60):
    """Solve the constrained problem by normal equations; returns a ``PolynomialPatch``."""
    from .core import PolynomialPatch  # result container only

    src = problem.source
    m = problem.target_degree
    c1, c2, c3 = problem.constraints
    alpha = tuple(problem.alpha)
    if m > 8:
        warnings.warn("oracle Gram system is badly conditioned beyond degree 8", stacklevel=2)
    th = _theta(m)
    free = [k for k in th if k[0] >= c1 and k[1] >= c2 and k[0] + k[1] <= m - c3]
    band = [k for k in th if k not in set(free)]
    pts, W = triangle_rule(alpha, Q)
    Bf = np.column_stack([bernstein_direct(m, k, pts) for k in free])
    G = Bf.T @ (W[:, None] * Bf)
    target = rational_direct(src.degree, src.points, src.weights, pts)
    if band:
        Bb = np.column_stack([bernstein_direct(m, k, pts) for k in band])
        gb = np.array([problem.prescribed[k] for k in band]).reshape(len(band), -1)
        target = target - Bb @ gb
    rhs = Bf.T @ (W[:, None] * target)
    sol = np.linalg.solve(G, rhs)
    out = np.empty((len(th), target.shape[1]))
    pos = {k: i for i, k in enumerate(th)}
    for k, row in zip(free, sol):
        out[pos[k]] = row
    for k in band:
        out[pos[k]] = problem.prescribed[k]
    return PolynomialPatch(m, out)


def oracle_degree_elevate(net, n: int, m: int) -> np.ndarray:
    """Control net of the same polynomial written in degree ``m >= n``."""
    if m < n:
        raise ValueError(f"cannot elevate degree {n} to {m}")
    cur = {k: np.asarray(v, dtype=np.float64) for k, v in zip(_theta(n), np.asarray(net, dtype=np.float64))}
    for deg in range(n, m):
        nxt = {}
        for k in _theta(deg + 1):
            k1, k2 = k
            k3 = deg + 1 - k1 - k2
            acc = 0.0
            if k1 > 0:
                acc = acc + k1 * cur[(k1 - 1, k2)]
            if k2 > 0:
                acc = acc + k2 * cur[(k1, k2 - 1)]
            if k3 > 0:
                acc = acc + k3 * cur[(k1, k2)]
            nxt[k] = acc / (deg + 1)
        cur = nxt
    return np.array([cur[k] for k in _theta(m)])


# --------------------------------------------------------------------------
# Hahn polynomials


def hahn_hypergeometric(l: int, t: float, a: float, b: float, M: int) -> float:
    """``(a+1)_l (-M)_l 3F2(-l, l+a+b+1, -t; a+1, -M; 1)`` by the terminating sum.

    The sum cancels heavily, so it is carried out in exact rational
    arithmetic on the binary values of the inputs.
    """
    a, b, t = Fraction(a), Fraction(b), Fraction(t)
    s = a + b + 1
    total = Fraction(0)
    term = Fraction(1)
    for k in range(l + 1):
        total += term
        if k == l:
            break
        term *= (-l + k) * (l + s + k) * (-t + k) / ((k + 1) * (a + 1 + k) * (-M + k))
    pre = Fraction(1)
    for i in range(l):
        pre *= (a + 1 + i) * (-M + i)
    return float(pre * total)


# --------------------------------------------------------------------------
# derivatives


def directional_derivative(n, points, x, direction, h=1e-20):
    """Exact directional derivative of a polynomial patch by the complex step."""
    x = np.asarray(x, dtype=np.float64)
    xc = x + 1j * h * np.asarray(direction, dtype=np.float64)[None, :]
    return patch_direct(n, points, xc).imag / h
