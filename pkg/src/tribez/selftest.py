"""Embedded invariant checks run by ``tribez selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import testkit
from .approximator import ApproximationProblem, approximate
from .core import RationalPatch, gram_matrix, index_sets
from .dualbernstein import E_table, HahnParams, clenshaw_hahn, hahn_eval
from .quadrature import DEFAULT_EPSILON, closed_form_collection, integral_collection


@dataclass
class CheckResult:
    name: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.value) and self.value <= self.tol)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name:<24} error={self.value:.3e} tol={self.tol:.1e}"


def _duality(eps):
    E = E_table(5, (-0.5, -0.5, -0.5), (1, 1, 1))
    G = gram_matrix(5, (-0.5, -0.5, -0.5), E.index)
    return np.abs(E.entries @ G - np.eye(len(E.index))).max(), 1e-9


def _hahn(eps):
    p = HahnParams(0.7, -0.3, 9)
    worst = 0.0
    for l in range(10):
        ref = testkit.hahn_hypergeometric(l, 4.0, *p)
        worst = max(worst, abs(hahn_eval(l, 4.0, p) - ref) / max(1.0, abs(ref)))
    gam = np.linspace(1.0, -1.0, 8)
    naive = sum(g * hahn_eval(i, 2.5, p) for i, g in enumerate(gam))
    worst = max(worst, abs(clenshaw_hahn(gam, 2.5, p) - naive) / max(1.0, abs(naive)))
    return worst, 1e-11


def _quadrature_closed_form(eps):
    alpha = (-0.5, -0.5, -0.5)
    col = integral_collection(np.ones(10), 3, 4, (0, 0, 0), alpha, eps)
    _, ref = closed_form_collection(7, (0, 0, 0), alpha)
    return np.abs(col.values / ref - 1.0).max(), max(1e-12, 100 * eps)


def _quadrature_rational(eps):
    rng = np.random.default_rng(7)
    w = rng.uniform(0.3, 2.5, 10)
    alpha = (0.0, -0.5, 0.5)
    col = integral_collection(w, 3, 3, (1, 0, 1), alpha, eps)
    worst = 0.0
    for j, v in zip(col.index, col.values):
        ref = testkit.oracle_inner_product(
            lambda x, j=j: testkit.bernstein_direct(6, j, x),
            lambda x: 1.0 / testkit.patch_direct(3, w, x).ravel(),
            alpha, Q=60,
        )
        worst = max(worst, abs(v - ref) / abs(ref))
    return worst, max(1e-9, 100 * eps)


def _orthogonality(eps):
    rng = np.random.default_rng(11)
    n, m, c = 3, 4, (1, 0, 1)
    alpha = (0.2, -0.4, 0.0)
    src = RationalPatch(n, rng.normal(size=(10, 1)), rng.uniform(0.4, 2.0, 10))
    sets = index_sets(m, c)
    g = {k: rng.normal(size=1) for k in sets.gamma}
    P = approximate(ApproximationProblem(src, m, c, g, alpha, eps)).patch
    scale = np.sqrt(testkit.oracle_inner_product(
        lambda x: testkit.rational_direct(n, src.points, src.weights, x),
        lambda x: testkit.rational_direct(n, src.points, src.weights, x), alpha))
    worst = 0.0
    for k in sets.omega:
        r = testkit.oracle_inner_product(
            lambda x: (testkit.rational_direct(n, src.points, src.weights, x)
                       - testkit.patch_direct(m, P.points, x)),
            lambda x, k=k: testkit.bernstein_direct(m, k, x), alpha)
        worst = max(worst, abs(r))
    return worst / scale, max(1e-8, 100 * eps)


CHECKS: dict[str, Callable] = {
    "duality": _duality,
    "hahn-clenshaw": _hahn,
    "quadrature-closed-form": _quadrature_closed_form,
    "quadrature-rational": _quadrature_rational,
    "orthogonality": _orthogonality,
}


def run_checks(eps: float = DEFAULT_EPSILON, perturb: str | None = None) -> list[CheckResult]:
    """Run every check; ``perturb`` names one whose error is inflated on purpose."""
    if perturb is not None and perturb not in CHECKS:
        raise ValueError(f"unknown check {perturb!r}; choose from {', '.join(CHECKS)}")
    out = []
    for name, fn in CHECKS.items():
        err, tol = fn(eps)
        if name == perturb:
            err = err + 1e-3
        out.append(CheckResult(name, float(err), float(tol)))
    return out
