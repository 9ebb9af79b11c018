"""Dual Bernstein coefficient tables via Hahn polynomials and recurrences.

The table ``E[k, l]`` over ``Omega^c_m`` holds the Bezier coefficients of the
constrained dual Bernstein basis. It equals the inverse of the constrained
Bernstein Gram matrix, but is built here in ``O(m^4)`` operations without any
linear solve: a seed row from a Hahn-polynomial sum, then two four-term
recurrences that sweep the rest of the table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import kernels
from .core import (
    AlphaWeights,
    MultiIndex,
    as_alpha,
    as_constraints,
    lex_position,
    omega_set,
    pochhammer,
    theta,
    theta_size,
)

#: above this degree the constraint scaling factors are accumulated in logs
LOG_SPACE_DEGREE = 25


class HahnParams(NamedTuple):
    a: float
    b: float
    M: int


def _check_hahn(p: HahnParams):
    if p.a <= -1.0 or p.b <= -1.0:
        raise ValueError(f"Hahn parameters need a, b > -1, got a={p.a}, b={p.b}")
    if p.M < 0:
        raise ValueError(f"Hahn parameter M must be nonnegative, got {p.M}")


# Both recurrences cancel heavily near t = M (the terms are up to ~1e5 times
# the result for l ~ 12), so they run in extended precision where available.
_LD = np.longdouble


def _extended(p: HahnParams, t):
    return HahnParams(_LD(p.a), _LD(p.b), p.M), _LD(t)


def hahn_coeffs(l: int, t: float, p: HahnParams) -> tuple[float, float]:
    """``(A_l(t), B_l)`` in ``h_{l+1} = A_l h_l + B_l h_{l-1}``."""
    a, b, M = p
    s = a + b + 1.0
    if l == 0:
        # C_0 (s-1)_2 -> s+1 and D_0 = 0, also when s = 0 or s = 1
        return (s + 1.0) * t - (a + 1.0) * M, 0.0
    C = (2 * l + s + 1.0) / ((l + s) * (2 * l + s - 1.0))
    D = C * l * (l + M + s) * (l + b)
    E = (l + a + 1.0) * (M - l)
    E_prev = (l + a) * (M - l + 1.0)
    A = C * (2 * l + s - 1.0) * (2 * l + s) * t - D - E
    return A, -D * E_prev


def hahn_eval(l: int, t: float, p: HahnParams) -> float:
    """``h_l(t; a, b, M)`` by the forward three-term recurrence."""
    p = HahnParams(float(p[0]), float(p[1]), int(p[2]))
    _check_hahn(p)
    if l < 0 or l > p.M:
        raise ValueError(f"Hahn degree must lie in 0..{p.M}, got {l}")
    p, t = _extended(p, t)
    h_prev, h = _LD(0), _LD(1)
    for j in range(l):
        A, B = hahn_coeffs(j, t, p)
        h_prev, h = h, A * h + B * h_prev
    return float(h)


def clenshaw_hahn(gamma, t: float, p: HahnParams) -> float:
    """``sum_i gamma[i] h_i(t; a, b, M)`` by backward (Clenshaw) summation."""
    p = HahnParams(float(p[0]), float(p[1]), int(p[2]))
    _check_hahn(p)
    gamma = np.asarray(gamma, dtype=np.float64)
    N = gamma.shape[0] - 1
    if N < 0:
        return 0.0
    if N > p.M:
        raise ValueError(f"series length {N + 1} exceeds M + 1 = {p.M + 1}")
    p, t = _extended(p, t)
    gamma = gamma.astype(_LD)
    v1 = v2 = _LD(0)  # V_{i+1}, V_{i+2}
    for i in range(N, -1, -1):
        A, _ = hahn_coeffs(i, t, p)
        _, B_next = hahn_coeffs(i + 1, t, p)
        v1, v2 = gamma[i] + A * v1 + B_next * v2, v1
    return float(v1)


def _seed_coeffs(M: int, mu: AlphaWeights, l1: int) -> np.ndarray:
    """The weights ``C*_i``, ``i = 0..M-l1``, of the seed-row Hahn sum."""
    m1, _, m3 = mu
    sp = mu.a2 + mu.a3  # |mu| - mu1
    smu = mu.total
    N = M - l1
    C = np.empty(N + 1)
    C[0] = pochhammer(m1 + 2.0, M) / pochhammer(sp + 2.0, N)
    if N == 0:
        return C
    C[1] = -(sp + 3.0) * pochhammer(m1 + 2.0, M - 1) * (smu + M + 3.0) / (
        (m3 + 1.0) * pochhammer(sp + 2.0, N + 1)
    )
    for i in range(1, N):
        ratio = (
            -(2 * i + sp + 3.0) / (2 * i + sp + 1.0)
            / (m1 + M - i + 1.0)
            * (smu + M + 3.0 + i) / ((i + 1.0) * (m3 + 1.0 + i))
            * (sp + i + 1.0) / (sp + i + N + 2.0)
        )
        C[i + 1] = C[i] * ratio
    return C


def e_seed_row(M: int, mu, l) -> float:
    """One entry ``e^0_l`` of the unconstrained table's first row."""
    mu = as_alpha(mu)
    l1, l2 = l
    if l1 < 0 or l2 < 0 or l1 + l2 > M:
        raise ValueError(f"multi-index {tuple(l)} is not in Theta_{M}")
    C = _seed_coeffs(M, mu, l1)
    pref = (-1.0) ** l1 * pochhammer(mu.total + 3.0, M) / (
        math.factorial(M) * pochhammer(mu.a1 + 2.0, l1)
    )
    return pref * clenshaw_hahn(C, float(l2), HahnParams(mu.a2, mu.a3, M - l1))


def _seed_row(M: int, mu: AlphaWeights) -> np.ndarray:
    row = np.empty(theta_size(M))
    pos = 0
    fact = math.factorial(M)
    for l1 in range(M + 1):
        C = _seed_coeffs(M, mu, l1)
        pref = (-1.0) ** l1 * pochhammer(mu.total + 3.0, M) / (fact * pochhammer(mu.a1 + 2.0, l1))
        hp = HahnParams(mu.a2, mu.a3, M - l1)
        for l2 in range(M - l1 + 1):
            row[pos] = pref * clenshaw_hahn(C, float(l2), hp)
            pos += 1
    return row


@dataclass(frozen=True)
class UnconstrainedTable:
    """``e[k, l]`` over ``Theta_M`` x ``Theta_M`` (lexicographic)."""

    M: int
    mu: AlphaWeights
    entries: np.ndarray = field(repr=False)


def _neighbour_maps(M: int):
    idx = theta(M)
    K = len(idx)
    rows = -np.ones((M + 2, M + 2), dtype=np.int64)
    for i, (k1, k2) in enumerate(idx):
        rows[k1, k2] = i
    k1s = np.array([k[0] for k in idx], dtype=np.int64)
    k2s = np.array([k[1] for k in idx], dtype=np.int64)

    def shift(d1, d2):
        out = np.full(K, K, dtype=np.int64)  # K = zero sentinel column
        for i, (k1, k2) in enumerate(idx):
            j1, j2 = k1 + d1, k2 + d2
            if j1 >= 0 and j2 >= 0 and j1 + j2 <= M:
                out[i] = rows[j1, j2]
        return out

    return k1s, k2s, shift(0, 1), shift(0, -1), shift(1, 0), shift(-1, 0), rows


def e_table(M: int, mu) -> UnconstrainedTable:
    """Full symmetric table of ``<D^M_k, D^M_l>_mu`` for the unconstrained basis."""
    mu = as_alpha(mu)
    if M < 0:
        raise ValueError(f"degree must be nonnegative, got {M}")
    K = theta_size(M)
    e = np.full((K, K + 1), np.nan)
    e[:, K] = 0.0
    row = _seed_row(M, mu)
    e[0, :K] = row
    e[:K, 0] = row
    k1s, k2s, up2, dn2, up1, dn1, rows = _neighbour_maps(M)
    kernels.etable_fill(
        e, M, mu.a1, mu.a2, mu.a3, k1s, k2s, up2, dn2, up1, dn1, rows
    )
    table = np.ascontiguousarray(e[:, :K])
    assert not np.isnan(table).any(), "recurrence sweep left entries unset"
    table.setflags(write=False)
    return UnconstrainedTable(M, mu, table)


@dataclass(frozen=True)
class ETable:
    """Constrained dual-Bernstein coefficients ``E[k, l]`` over ``Omega^c_m``."""

    m: int
    c: tuple
    alpha: AlphaWeights
    index: list = field(repr=False)
    entries: np.ndarray = field(repr=False)

    def get(self, k, l) -> float:
        pos = {kk: i for i, kk in enumerate(self.index)}
        return float(self.entries[pos[tuple(k)], pos[tuple(l)]])


def _log_poch(a: float, k: int) -> float:
    return math.fsum(math.log(a + i) for i in range(k))


def E_table(m: int, alpha, c) -> ETable:
    """Constrained table obtained from the unconstrained one of degree ``m - |c|``."""
    alpha = as_alpha(alpha)
    c = as_constraints(c)
    if c.total >= m:
        raise ValueError(f"need |c| < m, got |c| = {c.total} and m = {m}")
    M = m - c.total
    mu = AlphaWeights(alpha.a1 + 2 * c.c1, alpha.a2 + 2 * c.c2, alpha.a3 + 2 * c.c3)
    e = e_table(M, mu).entries

    if m > LOG_SPACE_DEGREE:
        log_u = _log_poch(alpha.total + 3.0, 2 * c.total) - sum(
            _log_poch(a + 1.0, 2 * ci) for a, ci in zip(alpha, c)
        )
        U = math.exp(log_u)
    else:
        U = pochhammer(alpha.total + 3.0, 2 * c.total)
        for a, ci in zip(alpha, c):
            U /= pochhammer(a + 1.0, 2 * ci)

    om = omega_set(m, c)
    # exact integer ratio, rounded once
    V = np.array([
        (math.comb(M, k1 - c.c1) * math.comb(M - k1 + c.c1, k2 - c.c2)) / (math.comb(m, k1) * math.comb(m - k1, k2))
        for k1, k2 in om
    ])
    sub = np.array([lex_position(M, (k1 - c.c1, k2 - c.c2)) for k1, k2 in om], dtype=np.int64)
    E = U * V[:, None] * V[None, :] * e[np.ix_(sub, sub)]
    # mirror so that E[k, l] == E[l, k] bit for bit
    E = np.triu(E) + np.triu(E, 1).T
    E.setflags(write=False)
    return ETable(m, tuple(c), alpha, [MultiIndex(*k) for k in om], E)
