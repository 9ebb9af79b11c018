"""Adaptive Chebyshev quadrature for the collection of rational integrals.

For a weight polynomial ``omega`` of degree ``n`` and ``N = n + m`` the
collection is

    I_j = int_T w_alpha(x) B^N_j(x) / omega(x) dx,    j in Omega^c_N.

With ``x = (s, (1 - s) t)`` every ``I_j`` becomes an iterated Jacobi-weighted
integral of the single function ``1 / omega*(s, t)``. That function is
interpolated once, in ``s`` at a set of outer nodes ``t_k``, by Chebyshev
series whose degree is doubled until the trailing coefficients are
negligible. Jacobi moments of those series give, per ``j1``, samples of an
outer function of ``t`` which is interpolated the same way. All ``I_j`` then
cost one short backward recurrence each.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft
from scipy.special import betaln

from . import kernels
from .core import (
    MultiIndex,
    as_alpha,
    as_constraints,
    normalization_constant,
    omega_set,
    theta_size,
    trinomial,
)

log = logging.getLogger(__name__)

DEFAULT_EPSILON = 5e-16
DEFAULT_START = 32
MAX_DEGREE = 2**20
INNER_FACTOR = 16.0
OUTER_FACTOR = 256.0


class QuadratureError(RuntimeError):
    """The adaptive doubling hit the degree cap without meeting the tolerance."""


@dataclass(frozen=True)
class ChebyshevSeries:
    """``S(x) = sum' coeffs[i] T_i(2x - 1)`` on [0, 1]; ``coeffs[0]`` is stored unhalved."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=np.float64).ravel()
        if c.size < 1:
            raise ValueError("a Chebyshev series needs at least one coefficient")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, x):
        c = self.coeffs.copy()
        c[0] *= 0.5
        return np.polynomial.chebyshev.chebval(2.0 * np.asarray(x, dtype=np.float64) - 1.0, c)


def cheb_nodes(M: int) -> np.ndarray:
    """``1/2 + 1/2 cos(j pi / M)``, ``j = 0..M`` (descending from 1 to 0)."""
    return 0.5 + 0.5 * np.cos(np.arange(M + 1) * np.pi / M)


def _is_pow2(M: int) -> bool:
    return M >= 1 and (M & (M - 1)) == 0


def _dct_coeffs(samples: np.ndarray) -> np.ndarray:
    # samples along axis 0; returns gamma_i = (2 - delta_{iM})/M * sum'' f_j cos(ij pi/M)
    M = samples.shape[0] - 1
    y = scipy.fft.dct(samples, type=1, axis=0)
    y /= M
    y[-1] *= 0.5
    return y


def cheb_interpolate(samples, M: int) -> ChebyshevSeries:
    """Chebyshev series interpolating ``samples[j] = f(s_j)`` at :func:`cheb_nodes`."""
    if not _is_pow2(M) or M < 8:
        raise ValueError(f"interpolation degree must be a power of two >= 8, got {M}")
    samples = np.asarray(samples, dtype=np.float64)
    if samples.shape != (M + 1,):
        raise ValueError(f"expected {M + 1} samples, got {samples.shape}")
    return ChebyshevSeries(_dct_coeffs(samples.copy()))


def _beta(alphas, betas):
    return np.exp(betaln(np.asarray(alphas) + 1.0, np.asarray(betas) + 1.0))


def jacobi_cheb_integrals(alphas, betas, S) -> np.ndarray:
    """``int_0^1 (1-x)^a x^b S(x) dx`` for every pair ``(a, b)``."""
    gamma = S.coeffs if isinstance(S, ChebyshevSeries) else np.asarray(S, dtype=np.float64)
    alphas = np.ascontiguousarray(alphas, dtype=np.float64)
    betas = np.ascontiguousarray(betas, dtype=np.float64)
    if np.any(alphas <= -1.0) or np.any(betas <= -1.0):
        raise ValueError("Jacobi exponents must exceed -1")
    return _beta(alphas, betas) * kernels.jacobi_cheb_sums(gamma, alphas, betas)


def jacobi_cheb_integral(alpha: float, beta: float, S) -> float:
    """Scalar form of :func:`jacobi_cheb_integrals`."""
    return float(jacobi_cheb_integrals([alpha], [beta], S)[0])


def stop_ratio(gamma: np.ndarray) -> float:
    """Trailing-coefficient size relative to the leading ones."""
    tail = np.abs(gamma[-4:]).sum()
    head = max(1.0, float(np.abs(gamma[:4]).max()))
    return tail / head


def omega_star_coeffs(weights: np.ndarray, n: int, t: float) -> np.ndarray:
    """Coefficients ``w_i(t)``, ``i = 0..n``, of ``omega*(., t)`` in the degree-n basis."""
    w = np.empty(n + 1)
    pos = 0
    tt = np.array([t])
    for i in range(n + 1):
        cnt = n + 1 - i
        w[i] = kernels.bernstein1d_sum(weights[pos:pos + cnt], tt)[0]
        pos += cnt
    return w


def omega_star(weights, n: int, s, t: float):
    """``omega(s, (1 - s) t)`` for a weight net over ``Theta_n``."""
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    if weights.shape != (theta_size(n),):
        raise ValueError(f"expected {theta_size(n)} weights, got {weights.shape}")
    w = omega_star_coeffs(weights, n, t)
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
    out = kernels.bernstein1d_sum(w, np.ascontiguousarray(s_arr))
    return out if np.ndim(s) else float(out[0])


@dataclass
class QuadratureReport:
    outer_degree: int = 0
    inner_degrees: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    outer_doublings: int = 0
    inner_doublings: int = 0
    psi_evaluations: int = 0

    def summary(self) -> dict:
        uniq, cnt = np.unique(self.inner_degrees, return_counts=True)
        return {
            "outer_degree": int(self.outer_degree),
            "inner_degree_histogram": {int(u): int(c) for u, c in zip(uniq, cnt)},
            "outer_doublings": int(self.outer_doublings),
            "inner_doublings": int(self.inner_doublings),
            "psi_evaluations": int(self.psi_evaluations),
        }


@dataclass(frozen=True)
class IntegralCollection:
    """``I_j`` for ``j`` in ``Omega^c_N`` (lexicographic), plus the adaptive report."""

    N: int
    c: tuple
    index: list = field(repr=False)
    values: np.ndarray = field(repr=False)
    report: QuadratureReport = field(repr=False)

    def __len__(self):
        return len(self.index)

    def as_dict(self) -> dict:
        return {j: float(v) for j, v in zip(self.index, self.values)}

    def value(self, j) -> float:
        return float(self.values[self.index.index(tuple(j))])


class _InnerState:
    """Phase I results at the outer nodes ``t_k`` for the current outer degree."""

    def __init__(self, weights, n, cs, ds, eps, inner_start, cap, report):
        self.weights = weights
        self.n = n
        self.cs = cs
        self.ds = ds
        self.beta_cd = _beta(cs, ds)
        self.tol = INNER_FACTOR * eps
        self.inner_start = inner_start
        self.cap = cap
        self.report = report

    def node(self, t: float):
        w = omega_star_coeffs(self.weights, self.n, t)
        Mk = self.inner_start
        s = cheb_nodes(Mk)
        vals = 1.0 / kernels.bernstein1d_sum(w, s)
        self.report.psi_evaluations += vals.size
        while True:
            gamma = _dct_coeffs(vals.copy())
            if stop_ratio(gamma) <= self.tol:
                break
            if 2 * Mk > self.cap:
                raise QuadratureError(
                    f"inner series at t={t:.17g} did not converge below degree {self.cap}"
                )
            Mk *= 2
            self.report.inner_doublings += 1
            odd = np.arange(1, Mk, 2)
            s_odd = 0.5 + 0.5 * np.cos(odd * np.pi / Mk)
            new = np.empty(Mk + 1)
            new[0::2] = vals
            new[1::2] = 1.0 / kernels.bernstein1d_sum(w, s_odd)
            self.report.psi_evaluations += odd.size
            vals = new
        row = self.beta_cd * kernels.jacobi_cheb_sums(gamma, self.cs, self.ds)
        return Mk, row

    def build(self, M: int):
        t = cheb_nodes(M)
        Mk = np.empty(M + 1, dtype=np.int64)
        W = np.empty((M + 1, self.cs.size))
        for k in range(M + 1):
            Mk[k], W[k] = self.node(t[k])
        return Mk, W

    def refine(self, M: int, Mk: np.ndarray, W: np.ndarray):
        """Double the outer degree, computing only the new odd nodes."""
        M2 = 2 * M
        t = cheb_nodes(M2)
        Mk2 = np.empty(M2 + 1, dtype=np.int64)
        W2 = np.empty((M2 + 1, W.shape[1]))
        Mk2[0::2] = Mk
        W2[0::2] = W
        for k in range(1, M2, 2):
            Mk2[k], W2[k] = self.node(t[k])
        return M2, Mk2, W2


def _collection(weights, n, N, c, alpha, eps, outer_start, inner_start, cap):
    weights = np.ascontiguousarray(weights, dtype=np.float64).ravel()
    if weights.shape != (theta_size(n),):
        raise ValueError(f"expected {theta_size(n)} weights for degree {n}, got {weights.size}")
    if not np.all(weights > 0.0):
        raise ValueError("weights must be positive")
    if eps <= 0.0:
        raise ValueError(f"tolerance must be positive, got {eps}")
    for name, v in (("outer", outer_start), ("inner", inner_start)):
        if not _is_pow2(v) or v < 8:
            raise ValueError(f"{name} starting degree must be a power of two >= 8, got {v}")
    if c.total > N:
        raise ValueError(f"need |c| <= N, got |c| = {c.total} and N = {N}")
    a1, a2, a3 = alpha

    j1s = np.arange(c.c1, N - c.c2 - c.c3 + 1)
    cs = a2 + a3 + N - j1s + 1.0
    ds = a1 + j1s.astype(np.float64)
    report = QuadratureReport()
    inner = _InnerState(weights, n, cs, ds, eps, inner_start, cap, report)

    M = outer_start
    Mk, W = inner.build(M)
    outer_tol = OUTER_FACTOR * eps
    A = normalization_constant(alpha)

    index, values = [], []
    col = 0
    while col < j1s.size:
        gam = _dct_coeffs(W[:, col:].copy())
        ok = np.array([stop_ratio(gam[:, i]) <= outer_tol for i in range(gam.shape[1])])
        # columns are accepted in order; the first failure doubles M for the rest
        n_ok = gam.shape[1] if ok.all() else int(np.argmin(ok))
        for i in range(n_ok):
            j1 = int(j1s[col + i])
            j2s = np.arange(c.c2, N - c.c3 - j1 + 1)
            a = a3 + N - j1 - j2s.astype(np.float64)
            b = a2 + j2s.astype(np.float64)
            J = _beta(a, b) * kernels.jacobi_cheb_sums(np.ascontiguousarray(gam[:, i]), a, b)
            for j2, Jv in zip(j2s, J):
                index.append(MultiIndex(j1, int(j2)))
                values.append(A * trinomial(N, (j1, int(j2))) * Jv)
        col += n_ok
        if col < j1s.size:
            if 2 * M > cap:
                raise QuadratureError(
                    f"outer series for j1={int(j1s[col])} did not converge below degree {cap}"
                )
            M, Mk, W = inner.refine(M, Mk, W)
            report.outer_doublings += 1
            log.debug("outer degree doubled to %d", M)

    report.outer_degree = M
    report.inner_degrees = Mk
    vals = np.array(values)
    if not np.all(np.isfinite(vals)):
        raise QuadratureError("non-finite integral value")
    return IntegralCollection(N, tuple(c), index, vals, report)


def integral_collection(
    weights,
    n: int,
    m: int,
    c=(0, 0, 0),
    alpha=(0.0, 0.0, 0.0),
    eps: float = DEFAULT_EPSILON,
    outer_start: int = DEFAULT_START,
    inner_start: int = DEFAULT_START,
    cap: int = MAX_DEGREE,
) -> IntegralCollection:
    """All ``I_j``, ``j`` in ``Omega^c_{n+m}``, for the weight net ``weights`` over ``Theta_n``.

    Raises :class:`QuadratureError` if an interpolation degree would exceed
    ``cap`` before the stopping test passes.
    """
    c = as_constraints(c)
    alpha = as_alpha(alpha)
    if c.total >= m:
        raise ValueError(f"need |c| < m, got |c| = {c.total} and m = {m}")
    return _collection(weights, n, n + m, c, alpha, eps, outer_start, inner_start, cap)


def single_integral(weights, n: int, N: int, j, alpha=(0.0, 0.0, 0.0), eps: float = DEFAULT_EPSILON,
                    outer_start: int = DEFAULT_START, inner_start: int = DEFAULT_START,
                    cap: int = MAX_DEGREE) -> IntegralCollection:
    """The one-element collection ``{I_j}`` (same machinery, ``Omega`` reduced to ``{j}``)."""
    j1, j2 = j
    if j1 < 0 or j2 < 0 or j1 + j2 > N:
        raise ValueError(f"multi-index {tuple(j)} is not in Theta_{N}")
    c = as_constraints((j1, j2, N - j1 - j2))
    return _collection(weights, n, N, c, as_alpha(alpha), eps, outer_start, inner_start, cap)


def closed_form_collection(N: int, c, alpha) -> tuple[list, np.ndarray]:
    """Values of the collection when ``omega`` is identically one."""
    alpha = as_alpha(alpha)
    idx = omega_set(N, c)
    vals = []
    for j1, j2 in idx:
        lg = (
            math.lgamma(alpha.a1 + 1 + j1) - math.lgamma(alpha.a1 + 1)
            + math.lgamma(alpha.a2 + 1 + j2) - math.lgamma(alpha.a2 + 1)
            + math.lgamma(alpha.a3 + 1 + N - j1 - j2) - math.lgamma(alpha.a3 + 1)
            - math.lgamma(alpha.total + 3 + N) + math.lgamma(alpha.total + 3)
        )
        vals.append(trinomial(N, (j1, j2)) * math.exp(lg))
    return idx, np.array(vals)
