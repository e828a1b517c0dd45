import numpy as np
import pytest

from helmcauchy.forward import (DiscreteResonanceError, GridSpec, extract_trace,
                                generate_neumann_data, helmholtz_residual, solve_dirichlet,
                                solve_U)
from helmcauchy.harness import example1_boundary

K = 5.0
A = np.sqrt(K * K - np.pi ** 2)


def separable(grid):
    X, Y = np.meshgrid(grid.x, grid.y, indexing="ij")
    return np.cos(A * X) * np.sin(np.pi * Y)


def manufactured_U(grid):
    X, Y = np.meshgrid(grid.x, grid.y, indexing="ij")
    return np.sin(A * (1 - X)) * np.sin(np.pi * Y) / (A * np.cos(A))


def test_gridspec():
    g = GridSpec.parse("400x80")
    assert (g.M, g.N, g.dx, g.dy) == (400, 80, 1 / 400, 1 / 80)
    assert g.shape == (401, 81)
    with pytest.raises(ValueError):
        GridSpec(1, 10)


class TestDirichlet:
    def test_zero_data(self):
        g = GridSpec(40, 20)
        u = solve_dirichlet(np.zeros(21), np.zeros(21), K, g)
        assert np.all(u == 0)

    def test_separable_oracle(self):
        g = GridSpec(40, 40)
        u = solve_dirichlet(np.sin(np.pi * g.y), np.cos(A) * np.sin(np.pi * g.y), K, g)
        err = np.abs(u - separable(g)).max()
        assert err <= 3.0 * (g.dx ** 2 + g.dy ** 2)

    def test_second_order(self):
        errs = []
        for n in (20, 40, 80):
            g = GridSpec(n, n)
            u = solve_dirichlet(np.sin(np.pi * g.y), np.cos(A) * np.sin(np.pi * g.y), K, g)
            errs.append(np.abs(u - separable(g)).max())
        for coarse, fine in zip(errs, errs[1:]):
            assert 3.5 <= coarse / fine <= 4.5

    def test_boundary_rows_and_residual(self):
        g = GridSpec(400, 80)
        u0 = example1_boundary(g.y)
        u = solve_dirichlet(u0, u0, K, g)
        np.testing.assert_array_equal(u[0, 1:-1], u0[1:-1])
        np.testing.assert_array_equal(u[-1, 1:-1], u0[1:-1])
        assert np.all(u[:, 0] == 0) and np.all(u[:, -1] == 0)
        assert np.abs(helmholtz_residual(u, K, g)).max() <= 1e-8 * np.abs(u).max()

    def test_example1_single_central_protrusion(self):
        g = GridSpec(400, 80)
        u0 = example1_boundary(g.y)
        u = solve_dirichlet(u0, u0, K, g)
        m, n = np.unravel_index(np.argmax(u), u.shape)
        assert abs(m / g.M - 0.5) < 0.05 and abs(n / g.N - 0.5) < 0.05
        # radially decreasing from the peak along both axes
        assert np.all(np.diff(u[m, : n + 1]) >= 0) and np.all(np.diff(u[m, n:]) <= 0)
        assert np.all(np.diff(u[: m + 1, n]) >= 0) and np.all(np.diff(u[m:, n]) <= 0)

    def test_resonance_detected(self):
        g = GridSpec(10, 10)
        # k^2 equal to the smallest discrete Dirichlet eigenvalue
        lam = 4 * 100 * np.sin(np.pi / 20) ** 2 * 2
        with pytest.raises(DiscreteResonanceError) as info:
            solve_dirichlet(np.zeros(11), np.zeros(11), np.sqrt(lam), g)
        assert info.value.nearest_eigenvalue == pytest.approx(-lam)

    def test_shape_check(self):
        with pytest.raises(ValueError):
            solve_dirichlet(np.zeros(5), np.zeros(21), K, GridSpec(10, 20))


class TestNeumannData:
    def test_zero(self):
        g = GridSpec(20, 10)
        assert np.all(generate_neumann_data(g.zeros(), np.zeros(11), g) == 0)

    def test_separable_has_zero_slope(self):
        g = GridSpec(400, 80)
        u = separable(g)
        u1 = generate_neumann_data(u, u[0], g)
        expected = (np.cos(A * g.dx) - 1) / g.dx * np.sin(np.pi * g.y)
        expected[0] = expected[-1] = 0
        np.testing.assert_allclose(u1, expected, atol=1e-10)
        assert np.abs(u1).max() <= A * A * g.dx

    def test_printed_sign_is_negated(self):
        g = GridSpec(50, 10)
        u = separable(g)
        np.testing.assert_array_equal(generate_neumann_data(u, u[0], g, as_printed=True),
                                      -generate_neumann_data(u, u[0], g))

    def test_forward_difference_tracks_true_slope(self):
        g = GridSpec(400, 20)
        X, Y = np.meshgrid(g.x, g.y, indexing="ij")
        a = np.sqrt(K * K - np.pi ** 2)
        u = np.sin(a * X) * np.sin(np.pi * Y)
        u1 = generate_neumann_data(u, u[0], g)
        np.testing.assert_allclose(u1, a * np.sin(np.pi * g.y), atol=a * a * g.dx)


class TestSolveU:
    def test_zero(self):
        g = GridSpec(40, 20)
        assert np.all(solve_U(np.zeros(21), K, g) == 0)

    def test_manufactured(self):
        errs = []
        for n in (20, 40, 80):
            g = GridSpec(n, n)
            U = solve_U(-np.sin(np.pi * g.y), K, g)
            errs.append(np.abs(U - manufactured_U(g)).max())
        assert errs[-1] <= 3.0 * 2 / 80 ** 2
        for coarse, fine in zip(errs, errs[1:]):
            assert 3.5 <= coarse / fine <= 4.5

    def test_boundaries(self):
        g = GridSpec(400, 80)
        u1 = np.random.default_rng(0).standard_normal(81)
        U = solve_U(u1, K, g)
        assert np.all(U[-1] == 0) and np.all(U[:, 0] == 0) and np.all(U[:, -1] == 0)
        assert np.isfinite(U).all()
        assert np.abs(helmholtz_residual(U, K, g)).max() <= 1e-8 * np.abs(U).max()


@pytest.fixture(scope="module")
def pipeline():
    g = GridSpec(400, 80)
    u0 = example1_boundary(g.y)
    u = solve_dirichlet(u0, u0, K, g)
    return g, u0, u


class TestSplitting:
    """u = U + V where V solves the zero-Neumann problem with V(0) = u0 - U(0)."""

    def test_linear_splitting(self, pipeline):
        g, u0, u = pipeline
        U = solve_U(generate_neumann_data(u, u0, g), K, g)
        V = solve_dirichlet(u0 - U[0], u[-1] - U[-1], K, g)
        np.testing.assert_allclose(U + V, u, atol=1e-10 * np.abs(u).max())

    def test_V_part_has_zero_slope(self, pipeline):
        g, u0, u = pipeline
        U = solve_U(generate_neumann_data(u, u0, g), K, g)
        V = u - U
        slope = (V[1] - V[0]) / g.dx
        u_slope = (u[1] - u[0]) / g.dx
        # the datum jumps at the corners; compare five nodes away from them
        inner = slice(5, -5)
        assert np.abs(slope[inner]).max() <= 0.02 * np.abs(u_slope[inner]).max()

    def test_printed_sign_breaks_zero_slope(self, pipeline):
        g, u0, u = pipeline
        U = solve_U(generate_neumann_data(u, u0, g, as_printed=True), K, g)
        V = u - U
        slope = (V[1] - V[0]) / g.dx
        u_slope = (u[1] - u[0]) / g.dx
        inner = slice(5, -5)
        assert np.abs(slope[inner]).max() > 1.5 * np.abs(u_slope[inner]).max()


class TestTrace:
    def test_zero(self):
        g = GridSpec(10, 10)
        assert np.all(extract_trace(g.zeros(), 3) == 0)

    def test_boundary_traces(self):
        g = GridSpec(40, 20)
        u0 = np.sin(np.pi * g.y)
        gg = 0.3 * np.sin(2 * np.pi * g.y)
        u = solve_dirichlet(u0, gg, K, g)
        np.testing.assert_array_equal(extract_trace(u, 0), u[0])
        np.testing.assert_allclose(extract_trace(u, 0), u0, atol=1e-15)
        np.testing.assert_allclose(extract_trace(u, g.M), gg, atol=1e-15)

    @pytest.mark.parametrize("m", [-1, 11])
    def test_out_of_range(self, m):
        with pytest.raises(IndexError):
            extract_trace(GridSpec(10, 10).zeros(), m)

    def test_returns_copy(self):
        u = GridSpec(10, 10).zeros()
        t = extract_trace(u, 2)
        t[:] = 1
        assert np.all(u == 0)
