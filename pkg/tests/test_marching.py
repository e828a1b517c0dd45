import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helmcauchy.forward import GridSpec
from helmcauchy.marching import (CauchySlice, StabilizationParams, StepConstraintError,
                                 compose_solution, initial_guess, march_once, solve_u_eps_direct,
                                 solve_V)
from helmcauchy.oracle import stabilized_coefficient
from helmcauchy.spectral import SineBasis, dst_forward, l2_norm

K = 5.0
N = 80
BASIS = SineBasis(N)


def params(M=400, k=K, **kw):
    return StabilizationParams(k=k, grid=GridSpec(M, N), **kw)


def mode_error(j, M, solver=solve_u_eps_direct, **kw):
    p = params(M, **kw)
    V = solver(CauchySlice.zero_slope(BASIS.phi(j)), p)
    c = dst_forward(V, BASIS)[:, j - 1]
    exact = stabilized_coefficient(j, p.grid.x, K, p.gamma)
    return np.linalg.norm(c - exact) / np.linalg.norm(exact)


def test_zero_data_gives_zero():
    p = params()
    data = CauchySlice.zero_slope(np.zeros(N + 1))
    assert np.all(solve_u_eps_direct(data, p) == 0)
    assert np.all(solve_V(data, p) == 0)


class TestModeOracle:
    @pytest.mark.parametrize("j", [1, 2, 3, 5])
    def test_matches_closed_form(self, j):
        assert mode_error(j, 400) <= 1e-3

    @pytest.mark.parametrize("j", [1, 2, 3, 5])
    def test_second_order_in_dx(self, j):
        assert 3.5 <= mode_error(j, 400) / mode_error(j, 800) <= 4.5

    def test_profiles_by_regime(self):
        p = params()
        x = p.grid.x
        V2 = solve_u_eps_direct(CauchySlice.zero_slope(BASIS.phi(2)), p)
        V3 = solve_u_eps_direct(CauchySlice.zero_slope(BASIS.phi(3)), p)
        lam2 = 4 * np.pi ** 2 - 25
        lam3 = 9 * np.pi ** 2 - 25
        # band mode grows like cosh, B mode oscillates
        np.testing.assert_allclose(dst_forward(V2, BASIS)[:, 1], np.cosh(np.sqrt(lam2) * x), rtol=1e-3)
        np.testing.assert_allclose(dst_forward(V3, BASIS)[:, 2], np.cos(np.sqrt(lam3) * x), atol=1e-3)

    def test_modes_decouple(self):
        p = params()
        V = solve_u_eps_direct(CauchySlice.zero_slope(BASIS.phi(2)), p)
        c = dst_forward(V, BASIS)
        others = np.delete(c, 1, axis=1)
        assert np.abs(others).max() <= 1e-10 * np.abs(c[:, 1]).max()


class TestLinearization:
    def test_converges_to_direct_solution(self):
        errs = [mode_error(2, 400, solver=solve_V, q=q) for q in (1, 2, 5, 10, 20)]
        assert errs[0] > 0.1
        assert all(a >= b for a, b in zip(errs, errs[1:]))
        assert errs[-1] == pytest.approx(mode_error(2, 400), rel=1e-6)

    @pytest.mark.parametrize("j", [1, 3, 5])
    def test_modes_outside_band_ignore_q(self, j):
        # P1 vanishes off the band, so the source term never reaches these modes
        data = CauchySlice.zero_slope(BASIS.phi(j))
        one = solve_V(data, params(q=1))
        three = solve_V(data, params(q=3))
        np.testing.assert_allclose(one, three, atol=1e-12)
        np.testing.assert_allclose(one, solve_u_eps_direct(data, params()), atol=1e-12)

    def test_q2_is_two_sweeps(self):
        data = CauchySlice.zero_slope(BASIS.phi(2) + 0.5 * BASIS.phi(1))
        p1, p2 = params(q=1), params(q=2)
        V1 = solve_V(data, p1)
        V2, iterates = solve_V(data, p2, return_iterates=True)
        np.testing.assert_array_equal(iterates[0], V1)
        np.testing.assert_array_equal(V2, march_once(V1, data, p1))
        assert np.abs(V2 - V1).max() > 1e-3

    def test_initial_guess_is_constant_in_x(self):
        f = BASIS.phi(4)
        V0 = initial_guess(CauchySlice.zero_slope(f), params())
        assert V0.shape == (401, N + 1)
        assert np.all(V0 == f)

    def test_source_shape_checked(self):
        with pytest.raises(ValueError):
            march_once(np.zeros((3, 3)), CauchySlice.zero_slope(BASIS.phi(1)), params())


def random_datum(seed):
    f = np.random.default_rng(seed).uniform(-1, 1, N + 1)
    f[0] = f[-1] = 0.0
    return f / l2_norm(f)


class TestInvariants:
    @settings(max_examples=15, deadline=None)
    @given(st.integers(0, 2 ** 32 - 1), st.sampled_from([solve_u_eps_direct, solve_V]))
    def test_boundary_and_initial_row(self, seed, solver):
        f = random_datum(seed)
        V = solver(CauchySlice.zero_slope(f), params())
        assert np.all(V[:, 0] == 0) and np.all(V[:, -1] == 0)
        np.testing.assert_array_equal(V[0], f)

    def test_initial_slope_is_order_dx(self):
        f = BASIS.phi(2) + BASIS.phi(3)
        slopes = []
        for M in (400, 800, 1600):
            V = solve_u_eps_direct(CauchySlice.zero_slope(f), params(M))
            slopes.append(np.abs(V[1] - V[0]).max() * M)
        for coarse, fine in zip(slopes, slopes[1:]):
            assert coarse / fine == pytest.approx(2.0, rel=0.05)

    @pytest.mark.parametrize("k", [5.0, 20.0, 50.0])
    @pytest.mark.parametrize("solver", [solve_u_eps_direct, solve_V])
    def test_no_blow_up(self, k, solver):
        p = params(k=k)
        for seed in range(5):
            V = solver(CauchySlice.zero_slope(random_datum(seed)), p)
            assert np.isfinite(V).all()
            assert np.abs(V).max() <= 10.0 * np.exp(2 * k)

    def test_untruncated_scheme_would_blow_up(self):
        # sanity check on the previous test: the top mode alone would grow like e^{sqrt(lambda)}
        lam_top = (79 * np.pi) ** 2 - 25
        assert np.sqrt(lam_top) > 2 * 50 + np.log(10)


class TestValidation:
    def test_nonzero_endpoint_rejected(self):
        f = BASIS.phi(1).copy()
        f[0] = 1e-3
        with pytest.raises(ValueError, match="vanish"):
            solve_V(CauchySlice.zero_slope(f), params())

    def test_nonzero_slope_rejected(self):
        f = BASIS.phi(1)
        with pytest.raises(ValueError, match="Neumann"):
            solve_V(CauchySlice(f, f), params())

    def test_wrong_length_rejected(self):
        with pytest.raises(ValueError):
            solve_V(CauchySlice.zero_slope(np.zeros(10)), params())

    def test_step_constraint_log_gamma(self):
        # log(gamma) = 5, dx = 1/4: 1.25 e^{1.25} > 1
        with pytest.raises(StepConstraintError):
            StabilizationParams(k=5.0, grid=GridSpec(4, 4))

    def test_step_constraint_explicit_stability(self):
        # dx = 1/80 passes the truncation condition for k=5 but not leapfrog stability
        with pytest.raises(StepConstraintError, match="unstable"):
            StabilizationParams(k=5.0, grid=GridSpec(80, 80))

    def test_default_configuration_is_admissible(self):
        p = StabilizationParams(k=5.0)
        assert (p.grid.M, p.grid.N, p.q, p.eta) == (400, 80, 1, 5.0)
        assert p.grid.dx / p.grid.dy == pytest.approx(0.2)
        StabilizationParams(k=50.0)

    @pytest.mark.parametrize("kw", [dict(eta=0.0), dict(eta=6.0), dict(q=0), dict(y_laplacian="fd")])
    def test_bad_parameters(self, kw):
        with pytest.raises(ValueError):
            StabilizationParams(k=5.0, **kw)


def test_central_laplacian_has_eigenvalue_floor():
    # the three-point y-Laplacian misplaces each eigenvalue by O(dy^2), which no x-refinement removes
    spectral = mode_error(2, 400)
    central = mode_error(2, 400, y_laplacian="central")
    assert central > 100 * spectral
    assert mode_error(2, 800, y_laplacian="central") == pytest.approx(central, rel=0.05)


class TestCompose:
    def test_sum(self):
        U = np.ones((3, 4))
        V = np.arange(12.0).reshape(3, 4)
        np.testing.assert_array_equal(compose_solution(U, V), U + V)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            compose_solution(np.zeros((3, 4)), np.zeros((4, 3)))
