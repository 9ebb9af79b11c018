"""Index sets, Bernstein evaluation and Gram primitives over the standard triangle.

Multi-indices ``(k1, k2)`` over ``Theta_n = {k : k1 + k2 <= n}`` are always
enumerated lexicographically, ``k1`` ascending and then ``k2`` ascending, so
that ``Theta_2`` is ``(0,0), (0,1), (0,2), (1,0), (1,1), (2,0)``. Every array
indexed by a multi-index set (control nets, weights, tables) uses this order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy.special import gammaln

from . import kernels


class MultiIndex(NamedTuple):
    k1: int
    k2: int


class ConstraintVector(NamedTuple):
    c1: int
    c2: int
    c3: int

    @property
    def total(self) -> int:
        return self.c1 + self.c2 + self.c3


class AlphaWeights(NamedTuple):
    a1: float
    a2: float
    a3: float

    @property
    def total(self) -> float:
        return self.a1 + self.a2 + self.a3


def as_constraints(c) -> ConstraintVector:
    c = ConstraintVector(*(int(v) for v in c))
    if min(c) < 0:
        raise ValueError(f"constraint vector must be nonnegative, got {tuple(c)}")
    return c


def as_alpha(alpha) -> AlphaWeights:
    alpha = AlphaWeights(*(float(v) for v in alpha))
    if min(alpha) <= -1.0:
        raise ValueError(f"every alpha component must exceed -1, got {tuple(alpha)}")
    return alpha


# --------------------------------------------------------------------------
# index sets


def theta(n: int) -> list[MultiIndex]:
    """Lexicographic enumeration of ``Theta_n``."""
    if n < 0:
        raise ValueError(f"degree must be nonnegative, got {n}")
    return [MultiIndex(k1, k2) for k1 in range(n + 1) for k2 in range(n + 1 - k1)]


def theta_size(n: int) -> int:
    return (n + 1) * (n + 2) // 2


def lex_position(n: int, k) -> int:
    """Position of ``k`` in the lexicographic enumeration of ``Theta_n``."""
    k1, k2 = k
    return k1 * (n + 1) - k1 * (k1 - 1) // 2 + k2


def in_omega(k, n: int, c: ConstraintVector) -> bool:
    return k[0] >= c[0] and k[1] >= c[1] and k[0] + k[1] <= n - c[2]


def omega_set(n: int, c) -> list[MultiIndex]:
    c = as_constraints(c)
    return [
        MultiIndex(k1, k2)
        for k1 in range(c.c1, n - c.c3 - c.c2 + 1)
        for k2 in range(c.c2, n - c.c3 - k1 + 1)
    ]


@dataclass(frozen=True)
class IndexSets:
    theta: list[MultiIndex]
    omega: list[MultiIndex]
    gamma: list[MultiIndex]


def index_sets(n: int, c) -> IndexSets:
    """Split ``Theta_n`` into the free set ``Omega^c_n`` and the band ``Gamma^c_n``."""
    c = as_constraints(c)
    if c.total >= n:
        raise ValueError(f"need |c| < n, got |c| = {c.total} and n = {n}")
    th = theta(n)
    om = [k for k in th if in_omega(k, n, c)]
    ga = [k for k in th if not in_omega(k, n, c)]
    return IndexSets(th, om, ga)


# --------------------------------------------------------------------------
# combinatorics


def trinomial(n: int, k) -> int:
    """``n! / (k1! k2! (n - |k|)!)`` as an exact integer."""
    k1, k2 = k
    if k1 < 0 or k2 < 0 or k1 + k2 > n:
        return 0
    return math.comb(n, k1) * math.comb(n - k1, k2)


def pochhammer(a: float, k: int) -> float:
    """Shifted factorial ``(a)_k = a (a+1) ... (a+k-1)``."""
    out = 1.0
    for i in range(k):
        out *= a + i
    return out


def normalization_constant(alpha) -> float:
    """``Gamma(|alpha|+3) / (Gamma(a1+1) Gamma(a2+1) Gamma(a3+1))``, via log-gamma."""
    alpha = as_alpha(alpha)
    log_a = gammaln(alpha.total + 3.0) - sum(gammaln(a + 1.0) for a in alpha)
    return float(np.exp(log_a))


# --------------------------------------------------------------------------
# evaluation


def _check_triangle(x, tol=1e-12):
    x = np.asarray(x, dtype=np.float64)
    pts = np.atleast_2d(x)
    if pts.shape[-1] != 2:
        raise ValueError(f"points must have two coordinates, got shape {x.shape}")
    if np.any(pts < -tol) or np.any(pts.sum(axis=1) > 1.0 + tol) or not np.all(np.isfinite(pts)):
        raise ValueError("point outside the standard triangle")
    return pts


def bernstein_eval(n: int, k, x) -> float:
    """Value of ``B^n_k`` at one point ``x`` of the triangle."""
    k1, k2 = k
    if k1 < 0 or k2 < 0 or k1 + k2 > n:
        raise ValueError(f"multi-index {tuple(k)} is not in Theta_{n}")
    (x1, x2), = _check_triangle(x)
    x3 = max(1.0 - x1 - x2, 0.0)
    return float(trinomial(n, k)) * x1**k1 * x2**k2 * x3 ** (n - k1 - k2)


def to_triangular(n: int, flat: np.ndarray) -> np.ndarray:
    """Lexicographic (|Theta_n|, d) array -> (n+1, n+1, d) layout ``net[k1, k2]``."""
    flat = np.asarray(flat, dtype=np.float64)
    net = np.zeros((n + 1, n + 1, flat.shape[1]))
    pos = 0
    for k1 in range(n + 1):
        cnt = n + 1 - k1
        net[k1, :cnt] = flat[pos:pos + cnt]
        pos += cnt
    return net


def _decasteljau(n, flat, pts):
    net = to_triangular(n, flat)
    pts = np.ascontiguousarray(pts)
    return kernels.decasteljau_tri(net, n, pts[:, 0].copy(), pts[:, 1].copy())


def _as_points(points, size, what):
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[0] != size:
        raise ValueError(f"{what}: expected {size} control points, got shape {np.shape(points)}")
    if not np.all(np.isfinite(pts)):
        raise ValueError(f"{what}: control points must be finite")
    return pts


@dataclass(frozen=True)
class PolynomialPatch:
    """Triangular Bezier patch of degree ``degree``; ``points`` is (|Theta|, d)."""

    degree: int
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be nonnegative, got {self.degree}")
        pts = _as_points(self.points, theta_size(self.degree), "polynomial patch")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def point(self, k) -> np.ndarray:
        return self.points[lex_position(self.degree, k)]

    def __call__(self, x):
        return eval_polynomial(self, x)


@dataclass(frozen=True)
class RationalPatch:
    """Rational triangular Bezier patch with positive weights."""

    degree: int
    points: np.ndarray = field(repr=False)
    weights: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError(f"degree must be nonnegative, got {self.degree}")
        size = theta_size(self.degree)
        pts = _as_points(self.points, size, "rational patch")
        if self.weights is None:
            w = np.ones(size)
        else:
            w = np.asarray(self.weights, dtype=np.float64).ravel()
        if w.shape != (size,):
            raise ValueError(f"rational patch: expected {size} weights, got {w.shape[0]}")
        bad = np.flatnonzero(~(w > 0.0) | ~np.isfinite(w))
        if bad.size:
            k = theta(self.degree)[bad[0]]
            raise ValueError(f"weight at index {tuple(k)} must be positive and finite, got {w[bad[0]]}")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def component(self, i: int) -> "RationalPatch":
        return RationalPatch(self.degree, self.points[:, i:i + 1], self.weights)

    def __call__(self, x):
        return eval_rational(self, x)


def _eval_many(n, flat, x):
    pts = _check_triangle(x)
    out = _decasteljau(n, flat, pts)
    return out[0] if np.ndim(x) == 1 else out


def eval_polynomial(p: PolynomialPatch, x) -> np.ndarray:
    """Evaluate at one point (shape (2,)) or many (shape (P, 2))."""
    return _eval_many(p.degree, p.points, x)


def eval_rational(p: RationalPatch, x) -> np.ndarray:
    # numerator and denominator share one de Casteljau pass
    hom = np.hstack([p.points * p.weights[:, None], p.weights[:, None]])
    vals = _eval_many(p.degree, hom, x)
    return vals[..., :-1] / vals[..., -1:]


def eval_weight(p: RationalPatch, x) -> np.ndarray:
    """The denominator polynomial ``omega(x)``."""
    vals = _eval_many(p.degree, p.weights[:, None], x)
    return vals[..., 0]


def barycentric_grid(G: int) -> np.ndarray:
    """Points ``(i/G, j/G)`` with ``i + j <= G`` in lexicographic order."""
    if G < 1:
        raise ValueError(f"grid density must be positive, got {G}")
    return np.array([(i / G, j / G) for i in range(G + 1) for j in range(G + 1 - i)])


# --------------------------------------------------------------------------
# Gram entries


def gram_entry(m: int, alpha, h, l) -> float:
    """Closed form of ``<B^m_h, B^m_l>_alpha``."""
    alpha = as_alpha(alpha)
    h3 = m - h[0] - h[1]
    l3 = m - l[0] - l[1]
    num = (
        pochhammer(alpha.a1 + 1.0, h[0] + l[0])
        * pochhammer(alpha.a2 + 1.0, h[1] + l[1])
        * pochhammer(alpha.a3 + 1.0, h3 + l3)
    )
    return trinomial(m, h) * trinomial(m, l) * num / pochhammer(alpha.total + 3.0, 2 * m)


def gram_matrix(m: int, alpha, indices: Sequence) -> np.ndarray:
    """Matrix of :func:`gram_entry` over ``indices``."""
    alpha = as_alpha(alpha)
    K = len(indices)
    # shifted factorial tables (a+1)_j for j = 0..2m
    tabs = []
    for a in alpha:
        t = np.ones(2 * m + 1)
        for j in range(1, 2 * m + 1):
            t[j] = t[j - 1] * (a + j)
        tabs.append(t)
    idx = np.array(indices, dtype=np.int64).reshape(K, 2)
    i1, i2 = idx[:, 0], idx[:, 1]
    i3 = m - i1 - i2
    binom = np.array([float(trinomial(m, k)) for k in indices])
    G = (
        tabs[0][i1[:, None] + i1[None, :]]
        * tabs[1][i2[:, None] + i2[None, :]]
        * tabs[2][i3[:, None] + i3[None, :]]
    )
    G *= binom[:, None] * binom[None, :]
    return G / pochhammer(alpha.total + 3.0, 2 * m)
