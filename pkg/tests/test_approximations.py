"""Testy przybliżeń rozprzężonych i korektora sprzężenia."""

import math

import numpy as np
import pytest

from core.errors import GridMismatchError, TimeMismatchError
from core.models import IntegratorConfig, ModelName, RegimeParams
from core.params.coefficients import base_coeffs
from core.physics.approximations import (
    CorrectorState,
    DecoupledState,
    DecoupledSystem,
    WeaklyCoupledSystem,
    coupling_forcing,
    f_left,
    physical_waves,
    reconstruct_state,
    split_initial,
    step_corrector,
    weakly_coupled_state,
)
from core.spectral.grid import Field, Grid
from core.spectral.operators import derivative, helmholtz_apply
from core.timeint.integrators import integrate
from tests.oracles import Refined, band_limited, f_left_oracle, fd_dx, relative_error


def gaussian(grid, center=0.0, width=2.0, amplitude=1.0):
    return Field.from_function(grid, lambda x: amplitude * np.exp(-((x - center) / width) ** 2))


class TestSplit:
    def test_right_going_data(self, grid, non_critical):
        zeta0 = gaussian(grid)
        d = split_initial(zeta0, non_critical.depth_sum * zeta0, non_critical)
        np.testing.assert_allclose(d.v_plus_lambda.values, zeta0.values, atol=1e-15)
        np.testing.assert_allclose(d.v_minus_lambda.values, 0.0, atol=1e-15)

    def test_zero_data(self, grid, critical):
        d = split_initial(Field.zeros(grid), Field.zeros(grid), critical)
        assert d.v_plus_lambda.max_abs() == 0.0 and d.v_minus_lambda.max_abs() == 0.0

    def test_lambda_shift_matches_finite_difference(self, grid):
        p = RegimeParams(epsilon=0.1, mu=0.1, delta=0.5, gamma=0.9, lam=0.3)
        r = Refined(grid)
        fine = r.sample(lambda x: np.exp(-x ** 2 / 4))
        zeta0 = r.coarse(fine)
        d = split_initial(zeta0, Field.zeros(grid), p)
        half = 0.5 * fine
        shift = p.mu * p.lam * fd_dx(half, r.h, 2)
        assert relative_error(d.v_plus_lambda.values, (half + shift)[::4]) < 1e-6
        assert relative_error(d.v_minus_lambda.values, (half - shift)[::4]) < 1e-6

    def test_grid_mismatch(self, grid, critical):
        with pytest.raises(GridMismatchError):
            split_initial(Field.zeros(grid), Field.zeros(Grid(n_points=64, length=12.8)), critical)


class TestReconstruct:
    def test_single_wave(self, grid, critical):
        v = gaussian(grid)
        zeta, vbar = reconstruct_state(DecoupledState(v, Field.zeros(grid)), critical)
        np.testing.assert_allclose(zeta.values, v.values)
        np.testing.assert_allclose(vbar.values, critical.depth_sum * v.values)

    def test_inverse_self_consistency(self, grid):
        p = RegimeParams(epsilon=0.1, mu=0.1, delta=0.5, gamma=0.9, lam=0.25)
        d = DecoupledState(gaussian(grid, -3.0), gaussian(grid, 4.0, 3.0, 0.5))
        v_plus, v_minus = physical_waves(d, p)
        shift = p.mu * p.lam
        assert relative_error(helmholtz_apply(v_plus, -shift).values, d.v_plus_lambda.values) < 1e-10
        assert relative_error(helmholtz_apply(v_minus, shift).values, d.v_minus_lambda.values) < 1e-10

    def test_split_then_reconstruct(self, grid):
        p = RegimeParams(epsilon=0.1, mu=0.1, delta=0.8, gamma=0.64, lam=0.2)
        zeta0, vbar0 = gaussian(grid, amplitude=5 / 3), gaussian(grid, 1.0, 2.0, 0.4)
        zeta, vbar = reconstruct_state(split_initial(zeta0, vbar0, p), p)
        assert relative_error(zeta.values, zeta0.values) < 1e-12
        assert relative_error(vbar.values, vbar0.values) < 1e-12


class TestCouplingForcing:
    def test_no_left_wave_no_right_forcing(self, grid, non_critical):
        forcing_plus, _ = coupling_forcing(gaussian(grid), Field.zeros(grid), non_critical)
        assert forcing_plus.max_abs() == 0.0

    def test_no_right_wave_leaves_pure_left_terms(self, grid, non_critical):
        v_minus = gaussian(grid, 2.0)
        forcing_plus, _ = coupling_forcing(Field.zeros(grid), v_minus, non_critical)
        expected = -f_left(Field.zeros(grid), v_minus, non_critical)
        np.testing.assert_allclose(forcing_plus.values, expected.values, atol=1e-15)
        assert forcing_plus.max_abs() > 0.0

    def test_reflection_exchanges_waves(self, grid, non_critical):
        v_plus, v_minus = gaussian(grid, -2.0), gaussian(grid, 3.0, 1.5, 0.6)
        _, forcing_minus = coupling_forcing(v_plus, v_minus, non_critical)
        mirrored_plus, _ = coupling_forcing(v_minus.mirror(), v_plus.mirror(), non_critical)
        np.testing.assert_allclose(forcing_minus.values, mirrored_plus.mirror().values, atol=1e-12)

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_finite_difference(self, seed):
        gamma, delta = [(0.64, 0.8), (0.9, 0.5)][seed % 2]
        p = RegimeParams(epsilon=0.1, mu=0.1, delta=delta, gamma=gamma)
        grid = Grid(n_points=256, length=4 * math.pi)
        r = Refined(grid)
        plus = lambda x: band_limited(x, grid.length, seed, scale=0.5)
        minus = lambda x: band_limited(x, grid.length, seed + 50, scale=0.5)
        silent = lambda x: np.zeros_like(x)
        b = base_coeffs(p)
        expected = -(f_left_oracle(r, plus, minus, p, b) - f_left_oracle(r, plus, silent, p, b))[::4]
        forcing_plus, _ = coupling_forcing(r.coarse(plus(r.fine.x)), r.coarse(minus(r.fine.x)), p)
        assert relative_error(forcing_plus.values, expected) < 1e-5


class TestCorrector:
    def test_zero_stays_zero(self, grid):
        c = CorrectorState.zeros(grid)
        zero = (Field.zeros(grid), Field.zeros(grid))
        for _ in range(5):
            c = step_corrector(c, zero, 0.1)
        assert c.w_plus.max_abs() == 0.0 and c.w_minus.max_abs() == 0.0
        assert c.time == pytest.approx(0.5)

    def test_constant_forcing_has_explicit_solution(self, grid):
        g = gaussian(grid)
        forcing = (derivative(g, 1), Field.zeros(grid))
        c = CorrectorState.zeros(grid)
        dt, steps = 0.01, 300
        for _ in range(steps):
            c = step_corrector(c, forcing, dt)
        t = dt * steps
        # (d_t + d_x) w = g' z w(0) = 0 daje w = g(x) - g(x - t)
        expected = g.values - np.exp(-((grid.x - t) / 2.0) ** 2)
        np.testing.assert_allclose(c.w_plus.values, expected, atol=1e-8)
        assert c.w_plus.max_abs() <= 2 * g.max_abs()
        assert c.w_minus.max_abs() == 0.0

    def test_weakly_coupled_state(self, grid, critical):
        d = DecoupledState(gaussian(grid, -2.0), gaussian(grid, 2.0), time=1.0)
        zero = CorrectorState.zeros(grid, time=1.0)
        np.testing.assert_allclose(weakly_coupled_state(d, zero, critical)[0].values, reconstruct_state(d, critical)[0].values)
        w = CorrectorState(gaussian(grid, 0.0, 1.0, 0.1), gaussian(grid, 1.0, 1.0, 0.05), time=1.0)
        empty = DecoupledState(Field.zeros(grid), Field.zeros(grid), time=1.0)
        zeta, vbar = weakly_coupled_state(empty, w, critical)
        np.testing.assert_allclose(zeta.values, (w.w_plus + w.w_minus).values)
        np.testing.assert_allclose(vbar.values, critical.depth_sum * (w.w_plus - w.w_minus).values)

    def test_time_mismatch(self, grid, critical):
        d = DecoupledState(Field.zeros(grid), Field.zeros(grid), time=1.0)
        with pytest.raises(TimeMismatchError):
            weakly_coupled_state(d, CorrectorState.zeros(grid, time=2.0), critical)


class TestSystems:
    def test_linear_limit_is_dalembert(self):
        grid = Grid(n_points=256, length=51.2)
        p = RegimeParams(epsilon=0.0, mu=0.0, delta=0.8, gamma=0.64)
        system = DecoupledSystem(grid, ModelName.KDV, p)
        zeta0 = gaussian(grid, amplitude=5 / 3)
        vbar0 = gaussian(grid, amplitude=p.depth_sum / 3)
        t = 5.0
        trajectory = integrate(system.rhs, system.initial_vector(zeta0, vbar0), IntegratorConfig(dt=0.01, t_end=t))
        zeta, _ = system.observe(trajectory.states[-1], t)
        expected = np.exp(-((grid.x - t) / 2.0) ** 2) + (2 / 3) * np.exp(-((grid.x + t) / 2.0) ** 2)
        np.testing.assert_allclose(zeta.values, expected, atol=1e-7)

    def test_lambda_irrelevant_without_dispersion(self, grid):
        base = dict(epsilon=0.1, mu=0.0, delta=0.5, gamma=0.9)
        y = np.stack([gaussian(grid).values, gaussian(grid, 3.0).values])
        a = DecoupledSystem(grid, ModelName.CL, RegimeParams(**base, lam=0.0)).rhs(0.0, y)
        b = DecoupledSystem(grid, ModelName.CL, RegimeParams(**base, lam=0.4)).rhs(0.0, y)
        np.testing.assert_allclose(a, b, atol=1e-14)

    def test_weakly_coupled_starts_from_decoupled_state(self, grid, non_critical):
        system = WeaklyCoupledSystem(grid, non_critical)
        zeta0, vbar0 = gaussian(grid, amplitude=5 / 3), gaussian(grid, amplitude=non_critical.depth_sum / 3)
        y0 = system.initial_vector(zeta0, vbar0)
        assert y0.shape == (4, grid.n_points)
        assert not np.any(y0[2:])
        zeta, vbar = system.observe(y0)
        assert relative_error(zeta.values, zeta0.values) < 1e-12
        assert relative_error(vbar.values, vbar0.values) < 1e-12

    def test_weakly_coupled_rhs_feeds_corrector(self, grid, non_critical):
        system = WeaklyCoupledSystem(grid, non_critical)
        y0 = system.initial_vector(gaussian(grid, amplitude=5 / 3), gaussian(grid, amplitude=non_critical.depth_sum / 3))
        dy = system.rhs(0.0, y0)
        forcing = coupling_forcing(*physical_waves(system.state(y0[:2]), non_critical), non_critical)
        np.testing.assert_allclose(dy[2], forcing[0].values, atol=1e-14)
        np.testing.assert_allclose(dy[3], forcing[1].values, atol=1e-14)
