import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tribez import testkit
from tribez.approximator import (
    ApproximationProblem,
    approximate,
    approximate_patch,
    compute_u,
    compute_v,
    error_grid,
    error_l2,
    error_max,
)
from tribez.constraints import boundary_constraints
from tribez.core import (
    PolynomialPatch,
    RationalPatch,
    gram_entry,
    index_sets,
    lex_position,
    theta,
    theta_size,
    trinomial,
)
from tribez.quadrature import integral_collection


NEG_HALF = (-0.5, -0.5, -0.5)


def random_problem(rng, n, m, c, alpha=(0.0, 0.0, 0.0), d=1):
    src = RationalPatch(n, rng.normal(size=(theta_size(n), d)), rng.uniform(0.2, 3.0, theta_size(n)))
    g = {k: rng.normal(size=d) for k in index_sets(m, c).gamma}
    return ApproximationProblem(src, m, c, g, alpha)


def test_u_degree_zero_source():
    src = RationalPatch(0, [[2.5]], [0.7])
    I = integral_collection(src.weights, 0, 3, (0, 0, 0), (0.2, 0.0, -0.3))
    for l in theta(3):
        # single-term sum: C(3, l) u_l = w r I_l
        assert trinomial(3, l) * compute_u(l, src, 3, I)[0] == pytest.approx(0.7 * 2.5 * I.value(l), rel=1e-15)


def test_u_equal_weights_matches_inner_product(rng):
    n, m, alpha = 3, 4, (0.5, -0.5, 0.0)
    pts = rng.normal(size=(theta_size(n), 1))
    src = RationalPatch(n, pts, np.full(theta_size(n), 1.7))
    I = integral_collection(src.weights, n, m, (0, 0, 0), alpha)
    for l in theta(m):
        ref = testkit.oracle_inner_product(
            lambda x: testkit.patch_direct(n, pts, x).ravel(),
            lambda x: testkit.bernstein_direct(m, l, x), alpha)
        assert compute_u(l, src, m, I)[0] * trinomial(m, l) == pytest.approx(ref, rel=1e-10, abs=1e-12)


def test_u_reference_patch_matches_inner_product(table1):
    alpha = NEG_HALF
    I = integral_collection(table1.weights, 6, 5, (0, 0, 0), alpha)
    for l in [(0, 0), (1, 1), (2, 3), (5, 0), (0, 4)]:
        u = compute_u(l, table1, 5, I) * trinomial(5, l)
        ref = [
            testkit.oracle_inner_product(
                lambda x, q=q: testkit.rational_direct(6, table1.points, table1.weights, x)[:, q],
                lambda x: testkit.bernstein_direct(5, l, x), alpha)
            for q in range(3)
        ]
        np.testing.assert_allclose(u, ref, rtol=1e-9, atol=1e-12)


def test_v_zero_prescribed():
    g = {k: np.zeros(3) for k in index_sets(5, (1, 1, 1)).gamma}
    np.testing.assert_array_equal(compute_v((1, 1), g, 5, NEG_HALF), 0.0)


@pytest.mark.parametrize("alpha", [(0, 0, 0), NEG_HALF, (1, 0, 2)])
def test_v_single_point_is_gram_entry(alpha):
    m, c = 5, (1, 1, 1)
    sets = index_sets(m, c)
    for h in sets.gamma[::3]:
        g = {k: np.array([1.0 if k == h else 0.0]) for k in sets.gamma}
        for l in sets.omega:
            got = trinomial(m, l) * compute_v(l, g, m, alpha)[0]
            assert got == pytest.approx(gram_entry(m, alpha, h, l), rel=1e-13, abs=1e-300)


def test_v_boundary_set_matches_quadrature(table1):
    m = 5
    g = boundary_constraints(table1, m, NEG_HALF)
    band = sorted(g)
    net = np.array([g[k] for k in band])
    l = (1, 1)
    got = trinomial(m, l) * compute_v(l, g, m, NEG_HALF)
    for q in range(3):
        ref = testkit.oracle_inner_product(
            lambda x: sum(net[i, q] * testkit.bernstein_direct(m, h, x) for i, h in enumerate(band)),
            lambda x: testkit.bernstein_direct(m, l, x), NEG_HALF)
        assert got[q] == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("n", [1, 3, 6])
def test_projection_identity(n, rng):
    net = rng.normal(size=(theta_size(n), 3))
    src = RationalPatch(n, net, np.full(theta_size(n), 0.8))
    P = approximate_patch(src, n, alpha=(0.0, 0.3, -0.5))
    np.testing.assert_allclose(P.points, net, atol=1e-10)


def test_degree_elevation_identity(rng):
    n = 4
    net = rng.normal(size=(theta_size(n), 3))
    src = RationalPatch(n, net, np.full(theta_size(n), 2.0))
    P = approximate_patch(src, n + 2)
    np.testing.assert_allclose(P.points, testkit.oracle_degree_elevate(net, n, n + 2), atol=1e-10)


def test_prescribed_points_exact(rng):
    prob = random_problem(rng, 4, 6, (2, 1, 1), d=3)
    P = approximate(prob).patch
    for k, g in prob.prescribed.items():
        np.testing.assert_array_equal(P.point(k), g)


@pytest.mark.parametrize("seed", range(5))
def test_matches_oracle_solve(seed):
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(1, 5)), int(rng.integers(3, 7))
    c = tuple(int(v) for v in rng.integers(0, 2, 3))
    prob = random_problem(rng, n, m, c, alpha=tuple(rng.uniform(-0.5, 1.0, 3)))
    P = approximate(prob).patch
    ref = testkit.oracle_constrained_ls(prob)
    np.testing.assert_allclose(P.points, ref.points, rtol=1e-8, atol=1e-10)


def test_residual_orthogonality(rng):
    n, m, c, alpha = 4, 5, (1, 0, 1), (0.3, -0.5, 0.0)
    prob = random_problem(rng, n, m, c, alpha)
    P = approximate(prob).patch
    src = prob.source
    R = lambda x: testkit.rational_direct(n, src.points, src.weights, x).ravel()
    norm = np.sqrt(testkit.oracle_inner_product(R, R, alpha))
    for k in index_sets(m, c).omega:
        r = testkit.oracle_inner_product(
            lambda x: R(x) - testkit.patch_direct(m, P.points, x).ravel(),
            lambda x: testkit.bernstein_direct(m, k, x), alpha)
        assert abs(r) <= 1e-8 * norm


def test_componentwise_exact(rng):
    prob = random_problem(rng, 3, 5, (1, 1, 0), d=3)
    P = approximate(prob).patch
    for q in range(3):
        sub = ApproximationProblem(
            prob.source.component(q), 5, prob.constraints,
            {k: g[q:q + 1] for k, g in prob.prescribed.items()}, prob.alpha)
        np.testing.assert_array_equal(approximate(sub).patch.points[:, 0], P.points[:, q])


def test_l2_error_decreases_with_degree(table1):
    prev = np.inf
    for m in range(3, 9):
        P = approximate_patch(table1, m, alpha=(0, 0, 0))
        e = error_l2(table1, P, (0, 0, 0))
        assert e <= prev
        prev = e


def test_problem_validation(table1, rng):
    g = boundary_constraints(table1, 5)
    with pytest.raises(ValueError, match=r"missing for index \(0, 0\)"):
        ApproximationProblem(table1, 5, (1, 1, 1), {k: v for k, v in g.items() if k != (0, 0)})
    extra = dict(g)
    extra[(2, 2)] = np.zeros(3)
    with pytest.raises(ValueError, match="free index"):
        ApproximationProblem(table1, 5, (1, 1, 1), extra)
    with pytest.raises(ValueError, match="dimension"):
        ApproximationProblem(table1, 5, (1, 1, 1), {k: v[:2] for k, v in g.items()})
    with pytest.raises(ValueError, match="need"):
        ApproximationProblem(table1, 3, (1, 1, 1), {})


def test_error_max_examples(rng):
    net = rng.normal(size=(theta_size(3), 3))
    assert error_max(RationalPatch(3, net), PolynomialPatch(3, net)) == 0.0
    zero = RationalPatch(0, [[0.0]])
    assert error_max(zero, PolynomialPatch(2, np.ones((6, 1))), 10) == pytest.approx(1.0)


def test_error_grid_shape_and_validation(table1):
    x, d = error_grid(table1, table1, 2)
    assert x.shape == (6, 2) and d.shape == (6,)
    with pytest.raises(ValueError):
        error_grid(table1, table1, 1)
    with pytest.raises(ValueError, match="dimension"):
        error_grid(table1, PolynomialPatch(1, np.zeros((3, 1))), 4)


def test_error_l2_matches_oracle(table1):
    P = approximate_patch(table1, 4)
    f = lambda x, q: (testkit.rational_direct(6, table1.points, table1.weights, x)
                      - testkit.patch_direct(4, P.points, x))[:, q]
    ref = np.sqrt(sum(testkit.oracle_inner_product(lambda x: f(x, q), lambda x: f(x, q), NEG_HALF)
                      for q in range(3)))
    assert error_l2(table1, P, NEG_HALF) == pytest.approx(ref, rel=1e-9)


@given(st.integers(0, 3), st.integers(1, 4), st.data())
def test_minimiser_property(n, extra, data):
    # perturbing any free control point never lowers the weighted L2 error
    m = n + extra
    rng = np.random.default_rng(data.draw(st.integers(0, 2**16)))
    alpha = (0.0, -0.5, 0.5)
    prob = random_problem(rng, n, m, (0, 0, 0), alpha)
    P = approximate(prob).patch
    base = error_l2(prob.source, P, alpha)
    k = data.draw(st.sampled_from(theta(m)))
    pts = P.points.copy()
    pts[lex_position(m, k)] += data.draw(st.sampled_from([-1e-3, 1e-3]))
    assert error_l2(prob.source, PolynomialPatch(m, pts), alpha) >= base - 1e-13
