"""Constrained least-squares approximation of a rational patch by a polynomial one.

Given a rational patch ``R`` of degree ``n``, a target degree ``m`` and
prescribed control points ``g_k`` on the band ``Gamma^c_m``, the free
control points ``p_k``, ``k`` in ``Omega^c_m``, minimise the Jacobi-weighted
L2 distance. They are ``p = E (<R, B_l> - <T, B_l>)`` where ``E`` is the
dual-Bernstein table (inverse constrained Gram matrix) and ``T`` is the part
of the patch fixed by the constraints. ``<R, B_l>`` reduces to the rational
integral collection, ``<T, B_l>`` to closed-form Gram entries.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.special import roots_jacobi

from .core import (
    AlphaWeights,
    ConstraintVector,
    PolynomialPatch,
    RationalPatch,
    as_alpha,
    as_constraints,
    barycentric_grid,
    eval_polynomial,
    eval_rational,
    index_sets,
    lex_position,
    normalization_constant,
    pochhammer,
    theta,
    trinomial,
)
from .dualbernstein import E_table
from .quadrature import DEFAULT_EPSILON, IntegralCollection, QuadratureReport, integral_collection

DEFAULT_ALPHA = (-0.5, -0.5, -0.5)
DEFAULT_GRID = 200


@dataclass(frozen=True)
class ApproximationProblem:
    source: RationalPatch
    target_degree: int
    constraints: ConstraintVector = ConstraintVector(0, 0, 0)
    prescribed: Mapping = field(default_factory=dict, repr=False)
    alpha: AlphaWeights = AlphaWeights(*DEFAULT_ALPHA)
    eps: float = DEFAULT_EPSILON

    def __post_init__(self):
        c = as_constraints(self.constraints)
        object.__setattr__(self, "constraints", c)
        object.__setattr__(self, "alpha", as_alpha(self.alpha))
        m = self.target_degree
        if c.total >= m:
            raise ValueError(f"need |c| < m, got |c| = {c.total} and m = {m}")
        gamma = index_sets(m, c).gamma
        given = {tuple(int(v) for v in k): np.atleast_1d(np.asarray(g, dtype=np.float64))
                 for k, g in dict(self.prescribed).items()}
        missing = [k for k in gamma if k not in given]
        extra = [k for k in given if k not in set(gamma)]
        if missing:
            raise ValueError(f"prescribed point missing for index {tuple(missing[0])}")
        if extra:
            raise ValueError(f"prescribed point given for free index {extra[0]}")
        d = self.source.dim
        for k, g in given.items():
            if g.shape != (d,):
                raise ValueError(f"prescribed point {k} has dimension {g.size}, expected {d}")
        object.__setattr__(self, "prescribed", given)


@dataclass(frozen=True)
class ApproximationResult:
    patch: PolynomialPatch
    quadrature: QuadratureReport = field(repr=False)
    wall_time: float = 0.0


def _integral_lookup(I: IntegralCollection) -> dict:
    return dict(zip(I.index, I.values))


def _u_table(source: RationalPatch, m: int, free, I: IntegralCollection) -> np.ndarray:
    n = source.degree
    lookup = _integral_lookup(I)
    th = theta(n)
    wr = source.points * source.weights[:, None]
    u = np.empty((len(free), source.dim))
    for a, l in enumerate(free):
        ratios = []
        for h in th:
            j = (h[0] + l[0], h[1] + l[1])
            # exact integer quotient, rounded once
            ratios.append(trinomial(n, h) / trinomial(n + m, j) * lookup[j])
        for q in range(source.dim):
            u[a, q] = math.fsum(r * x for r, x in zip(ratios, wr[:, q]))
    return u


def compute_u(l, source: RationalPatch, m: int, I: IntegralCollection) -> np.ndarray:
    """``u_l = sum_h C(n,h)/C(n+m,h+l) w_h r_h I_{h+l}``; ``C(m,l) u_l = <R, B^m_l>``."""
    return _u_table(source, m, [tuple(l)], I)[0]


def _v_table(prescribed: Mapping, m: int, alpha: AlphaWeights, free, d: int) -> np.ndarray:
    v = np.zeros((len(free), d))
    if not prescribed:
        return v
    scale = pochhammer(alpha.total + 3.0, 2 * m)
    band = list(prescribed)
    g = np.array([prescribed[h] for h in band]).reshape(len(band), d)
    for a, l in enumerate(free):
        l3 = m - l[0] - l[1]
        coef = []
        for h in band:
            h3 = m - h[0] - h[1]
            coef.append(
                trinomial(m, h)
                * pochhammer(alpha.a1 + 1.0, h[0] + l[0])
                * pochhammer(alpha.a2 + 1.0, h[1] + l[1])
                * pochhammer(alpha.a3 + 1.0, h3 + l3)
            )
        for q in range(d):
            v[a, q] = math.fsum(cf * x for cf, x in zip(coef, g[:, q])) / scale
    return v


def compute_v(l, prescribed: Mapping, m: int, alpha) -> np.ndarray:
    """``v_l`` with ``C(m,l) v_l = <T, B^m_l>``, ``T`` the patch of prescribed points."""
    alpha = as_alpha(alpha)
    prescribed = {tuple(k): np.atleast_1d(np.asarray(g, dtype=np.float64)) for k, g in prescribed.items()}
    d = next(iter(prescribed.values())).size if prescribed else 1
    return _v_table(prescribed, m, alpha, [tuple(l)], d)[0]


def approximate(problem: ApproximationProblem) -> ApproximationResult:
    """Best constrained polynomial approximation of degree ``problem.target_degree``.

    The dual table and the integral collection depend only on the weights,
    degrees, ``c`` and ``alpha``; they are built once and shared by all
    coordinates of the control points.
    """
    t0 = time.perf_counter()
    src = problem.source
    m, c, alpha = problem.target_degree, problem.constraints, problem.alpha
    E = E_table(m, alpha, c)
    I = integral_collection(src.weights, src.degree, m, c, alpha, problem.eps)
    free = E.index
    u = _u_table(src, m, free, I)
    v = _v_table(problem.prescribed, m, alpha, free, src.dim)
    binom = np.array([float(trinomial(m, l)) for l in free])

    points = np.empty((len(theta(m)), src.dim))
    for k, g in problem.prescribed.items():
        points[lex_position(m, k)] = g
    rows = [lex_position(m, k) for k in free]
    for q in range(src.dim):
        points[rows, q] = E.entries @ (binom * (u[:, q] - v[:, q]))
    return ApproximationResult(
        PolynomialPatch(m, points), I.report, time.perf_counter() - t0
    )


def approximate_patch(source: RationalPatch, m: int, c=(0, 0, 0), prescribed=None,
                      alpha=DEFAULT_ALPHA, eps: float = DEFAULT_EPSILON) -> PolynomialPatch:
    """Convenience wrapper returning only the polynomial patch."""
    prob = ApproximationProblem(source, m, c, prescribed or {}, alpha, eps)
    return approximate(prob).patch


def _as_rational(p) -> RationalPatch:
    if isinstance(p, RationalPatch):
        return p
    return RationalPatch(p.degree, p.points)


def error_grid(R, P, grid_density: int = DEFAULT_GRID) -> tuple[np.ndarray, np.ndarray]:
    """Grid points and ``||R(x) - P(x)||`` at each of them."""
    if grid_density < 2:
        raise ValueError(f"grid density must be at least 2, got {grid_density}")
    R, P = _as_rational(R), _as_rational(P)
    if R.dim != P.dim:
        raise ValueError(f"dimension mismatch: {R.dim} vs {P.dim}")
    x = barycentric_grid(grid_density)
    delta = np.linalg.norm(eval_rational(R, x) - eval_rational(P, x), axis=1)
    return x, delta


def error_max(R, P, grid_density: int = DEFAULT_GRID) -> float:
    """Maximum of ``||R(x) - P(x)||`` over the grid ``(i/G, j/G)``, ``i + j <= G``."""
    return float(error_grid(R, P, grid_density)[1].max())


def error_l2(R, P, alpha=DEFAULT_ALPHA, order: int = 64) -> float:
    """Weighted L2 distance ``<R - P, R - P>_alpha ** 0.5`` by tensor Gauss-Jacobi."""
    alpha = as_alpha(alpha)
    R, P = _as_rational(R), _as_rational(P)
    a1, a2, a3 = alpha
    # x1 = s, x2 = (1 - s) t; jacobian and weight split into (s, t) Jacobi factors
    xs, ws = roots_jacobi(order, a2 + a3 + 1.0, a1)
    xt, wt = roots_jacobi(order, a3, a2)
    s = 0.5 * (xs + 1.0)
    t = 0.5 * (xt + 1.0)
    ws = ws / 2.0 ** (a1 + a2 + a3 + 2.0)
    wt = wt / 2.0 ** (a2 + a3 + 1.0)
    S, Tt = np.meshgrid(s, t, indexing="ij")
    pts = np.column_stack([S.ravel(), ((1.0 - S) * Tt).ravel()])
    diff = eval_rational(R, pts) - eval_rational(P, pts)
    sq = (diff**2).sum(axis=1).reshape(S.shape)
    val = normalization_constant(alpha) * ws @ sq @ wt
    return float(np.sqrt(max(val, 0.0)))
