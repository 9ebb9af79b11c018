"""Generators for the prescribed control points ``g_k``.

Two recipes: boundary rows from per-edge curve approximations (all three
edges fixed, ``c = (1, 1, 1)``), and the two rows next to a shared edge that
make a patch join a polynomial neighbour with C1 continuity (``c = (2, 0, 0)``).
"""

from __future__ import annotations

import numpy as np
from scipy.special import comb, roots_jacobi

from .core import MultiIndex, PolynomialPatch, RationalPatch, as_alpha, index_sets, lex_position

BOUNDARY_C = (1, 1, 1)
C1_C = (2, 0, 0)


def c1_constraints(neighbor: PolynomialPatch, m: int) -> dict:
    """Rows ``k1 = 0, 1`` of a degree-m patch joining ``neighbor`` with C1 continuity.

    ``neighbor``'s edge ``k2 = 0`` becomes the new patch's edge ``k1 = 0``, with

        g[0, i] = p[i, 0]                       i = 0..m
        g[1, i] = 2 p[i+1, 0] - p[i, 1]         i = 0..m-1

    The result is keyed over ``Gamma^{(2,0,0)}_m``.
    """
    if neighbor.degree != m:
        raise ValueError(f"neighbour has degree {neighbor.degree}, expected {m}")
    if m < 3:
        raise ValueError(f"C1 stitching with c = (2, 0, 0) needs m >= 3, got {m}")
    p = neighbor.point
    g = {}
    for i in range(m + 1):
        g[MultiIndex(0, i)] = np.array(p((i, 0)))
    for i in range(m):
        g[MultiIndex(1, i)] = p((i + 1, 0)) + (p((i + 1, 0)) - p((i, 1)))
    assert set(g) == set(index_sets(m, C1_C).gamma)
    return g


def _bernstein_matrix(n: int, t: np.ndarray) -> np.ndarray:
    i = np.arange(n + 1)
    return comb(n, i) * t[:, None] ** i * (1.0 - t[:, None]) ** (n - i)


def boundary_constrained_ls(weights, points, m: int, endpoints_fixed: bool = True,
                            alpha_uv=(-0.5, -0.5), order: int | None = None) -> np.ndarray:
    """Degree-m polynomial curve closest to a rational Bezier curve.

    Minimises ``int_0^1 (1-t)^au t^av |C(t) - P(t)|^2 dt`` over Bezier curves
    ``P`` of degree ``m``; with ``endpoints_fixed`` the end control points are
    pinned to ``C(0)`` and ``C(1)``. Returns the ``(m + 1, d)`` control points.
    """
    w = np.asarray(weights, dtype=np.float64).ravel()
    r = np.asarray(points, dtype=np.float64)
    if r.ndim == 1:
        r = r[:, None]
    n = w.size - 1
    if n < 0 or r.shape[0] != n + 1:
        raise ValueError("curve needs matching numbers of weights and points")
    if not np.all(w > 0.0):
        raise ValueError("curve weights must be positive")
    au, av = alpha_uv
    if au <= -1.0 or av <= -1.0:
        raise ValueError(f"curve weight exponents must exceed -1, got {alpha_uv}")
    if endpoints_fixed and m < 2:
        raise ValueError(f"need m >= 2 with fixed endpoints, got {m}")
    if m < 0:
        raise ValueError(f"degree must be nonnegative, got {m}")
    if m > 20:
        raise ValueError(f"degree {m} is beyond the supported range (<= 20)")

    Q = order or max(96, 4 * (n + m))
    x, qw = roots_jacobi(Q, au, av)
    t = 0.5 * (x + 1.0)
    Bn = _bernstein_matrix(n, t)
    curve = (Bn @ (w[:, None] * r)) / (Bn @ w)[:, None]
    Bm = _bernstein_matrix(m, t)

    out = np.empty((m + 1, r.shape[1]))
    if endpoints_fixed:
        out[0] = r[0]
        out[m] = r[n]
        free = slice(1, m)
        rhs_curve = curve - np.outer(Bm[:, 0], out[0]) - np.outer(Bm[:, m], out[m])
    else:
        free = slice(0, m + 1)
        rhs_curve = curve
    A = Bm[:, free]
    G = A.T @ (qw[:, None] * A)
    cond = np.linalg.cond(G)
    assert cond < 1e13, f"curve normal equations ill-conditioned (cond = {cond:.3g})"
    out[free] = np.linalg.solve(G, A.T @ (qw[:, None] * rhs_curve))
    return out


def boundary_constraints(source: RationalPatch, m: int, alpha=(-0.5, -0.5, -0.5),
                         alpha_uv=None) -> dict:
    """Prescribed points on ``Gamma^{(1,1,1)}_m`` from the three boundary curves.

    Each edge curve is approximated with endpoints kept. Unless ``alpha_uv``
    is given, the exponents on an edge are those of the surface weight
    restricted to it.
    """
    a1, a2, a3 = as_alpha(alpha)
    n = source.degree
    P, W = source.points, source.weights

    def edge(indices, ab):
        ix = [lex_position(n, k) for k in indices]
        return boundary_constrained_ls(W[ix], P[ix], m, True, alpha_uv or ab)

    e_x1 = edge([(0, i) for i in range(n + 1)], (a3, a2))  # x1 = 0, parameter x2
    e_x2 = edge([(i, 0) for i in range(n + 1)], (a3, a1))  # x2 = 0, parameter x1
    e_hyp = edge([(i, n - i) for i in range(n + 1)], (a2, a1))  # x1 + x2 = 1, parameter x1

    g = {}
    for i in range(m + 1):
        g[MultiIndex(0, i)] = e_x1[i]
        g[MultiIndex(i, 0)] = e_x2[i]
        g[MultiIndex(i, m - i)] = e_hyp[i]
    assert set(g) == set(index_sets(m, BOUNDARY_C).gamma)
    return g
