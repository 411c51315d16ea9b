"""Testy danych początkowych, błędu łącznego, harmonogramu, przeglądu i zapisu wyników."""

from dataclasses import replace
import json
import math

import numpy as np
import pandas as pd
import pytest

from core.errors import ConfigError, GridMismatchError
from core.harness.config_file import SEED_TEMPLATE, config_hash, load_config, parse_config
from core.harness.initial_data import make_initial_data
from core.harness.output import (
    SWEEP_COLUMNS,
    rates_from_frame,
    read_sweep,
    series_frame,
    write_csv,
    write_sidecar,
)
from core.harness.runner import (
    checkpoint_time,
    combined_error,
    make_schedule,
    params_for,
    run_comparison,
)
from core.harness.sweep import convergence_rate
from core.models import (
    DataKind,
    ErrorSeries,
    ExperimentConfig,
    ModelName,
    RatioPreset,
    Regime,
    RegimeParams,
)
from core.spectral.grid import Field, Grid


@pytest.fixture
def circle():
    return Grid(n_points=64, length=2 * math.pi)


@pytest.fixture
def small_config():
    return ExperimentConfig(
        models=(ModelName.GN, ModelName.KDV, ModelName.CL),
        epsilons=(0.1,),
        checkpoints=("1",),
        t_final=2.0,
        n_samples=4,
        dx=0.4,
        support_margin=20.0,
    )


class TestInitialData:
    def test_decomposition_data_at_origin(self, grid, critical):
        zeta0, vbar0 = make_initial_data(DataKind.GAUSSIAN, grid, critical)
        center = int(np.argmin(np.abs(grid.x)))
        assert zeta0.values[center] == pytest.approx(5.0 / 3.0)
        assert vbar0.values[center] == pytest.approx(critical.depth_sum / 3.0)

    def test_algebraic_data_is_tapered_at_seam(self, grid, critical):
        zeta0, _ = make_initial_data(DataKind.ALGEBRAIC, grid, critical)
        assert zeta0.values[0] == 0.0
        assert zeta0.values[np.argmin(np.abs(grid.x))] == pytest.approx(5.0 / 3.0)

    def test_unidirectional_data(self, grid, non_critical):
        zeta0, vbar0 = make_initial_data(DataKind.UNIDIRECTIONAL, grid, non_critical)
        assert zeta0.max_abs() == pytest.approx(1.0)
        assert vbar0.max_abs() > 0.0


class TestCombinedError:
    def test_zeta_difference(self, circle, critical):
        sine = Field.from_function(circle, lambda x: np.sin(3 * x))
        zeros = Field.zeros(circle)
        assert combined_error((sine, zeros), (zeros, zeros), 0.0, critical) == pytest.approx(math.sqrt(math.pi))

    def test_velocity_is_scaled(self, circle, critical):
        sine = Field.from_function(circle, lambda x: np.sin(3 * x))
        zeros = Field.zeros(circle)
        ref = (zeros, critical.depth_sum * sine)
        assert combined_error(ref, (zeros, zeros), 0.0, critical) == pytest.approx(math.sqrt(math.pi))

    def test_homogeneous(self, grid, critical):
        a = Field.from_function(grid, lambda x: np.exp(-x ** 2))
        b = Field.from_function(grid, lambda x: np.exp(-(x - 1) ** 2))
        zeros = Field.zeros(grid)
        once = combined_error((a, b), (zeros, zeros), 1.0, critical)
        twice = combined_error((2 * a, 2 * b), (zeros, zeros), 1.0, critical)
        assert twice == pytest.approx(2 * once)
        assert combined_error((a, b), (a, b), 1.0, critical) == 0.0

    def test_grid_mismatch(self, circle, grid, critical):
        with pytest.raises(GridMismatchError):
            combined_error((Field.zeros(circle),) * 2, (Field.zeros(grid),) * 2, 0.0, critical)


class TestConvergenceRate:
    def test_exact_power_law(self):
        fit = convergence_rate([(e, 3.0 * e ** 2) for e in (0.1, 0.05, 0.025)])
        assert fit.slope == pytest.approx(2.0)
        assert fit.intercept == pytest.approx(math.log(3.0))
        assert fit.n_points == 3

    def test_flat(self):
        assert convergence_rate([(0.1, 0.5), (0.05, 0.5), (0.01, 0.5)]).slope == pytest.approx(0.0, abs=1e-12)

    def test_two_points_have_no_spread(self):
        fit = convergence_rate([(0.1, 1e-3), (0.05, 1.25e-4)])
        assert fit.slope == pytest.approx(3.0)
        assert fit.stderr == 0.0

    def test_noisy_cubic(self):
        rng = np.random.default_rng(7)
        eps = np.geomspace(0.02, 0.2, 8)
        points = [(e, e ** 3 * math.exp(rng.normal(scale=0.05))) for e in eps]
        fit = convergence_rate(points)
        assert fit.slope == pytest.approx(3.0, abs=0.1)
        assert fit.stderr > 0.0

    @pytest.mark.parametrize("points", [[(0.1, 1.0)], [(0.1, 1.0), (0.05, 0.0)], [(0.1, 1.0), (0.05, np.nan)]])
    def test_invalid(self, points):
        with pytest.raises(ValueError):
            convergence_rate(points)


class TestSchedule:
    def test_checkpoint_rules(self):
        assert checkpoint_time("10", 0.05) == 10.0
        assert checkpoint_time("1/eps", 0.05) == pytest.approx(20.0)
        assert checkpoint_time("eps^-3/2", 0.01) == pytest.approx(1000.0)
        with pytest.raises(ConfigError):
            checkpoint_time("forever", 0.1)

    def test_default_horizon_is_latest_checkpoint(self):
        schedule = make_schedule(ExperimentConfig(), 0.05)
        assert schedule.t_final == pytest.approx(0.05 ** -1.5)
        assert schedule.times[0] == 0.0
        assert schedule.times[-1] == pytest.approx(schedule.t_final)
        assert np.all(np.diff(schedule.times) > 0)
        for tag in ("10", "1/eps", "eps^-3/2"):
            index = schedule.checkpoint_tags[tag]
            assert schedule.times[index] == pytest.approx(checkpoint_time(tag, 0.05))

    def test_coinciding_checkpoints_share_a_sample(self):
        # dla eps = 0.1 punkty '10' i '1/eps' wypadają w tej samej chwili
        schedule = make_schedule(ExperimentConfig(), 0.1)
        assert schedule.checkpoint_tags["10"] == schedule.checkpoint_tags["1/eps"]
        assert len(set(np.round(schedule.times, 12))) == len(schedule.times)

    def test_checkpoint_on_uniform_sample_is_not_duplicated(self):
        schedule = make_schedule(ExperimentConfig(checkpoints=("5",), t_final=10.0, n_samples=10), 0.1)
        assert len(schedule.times) == 11
        assert schedule.checkpoint_tags == {"5": 5}

    def test_zero_epsilon_needs_horizon(self):
        with pytest.raises(ConfigError):
            make_schedule(ExperimentConfig(), 0.0)
        schedule = make_schedule(ExperimentConfig(t_final=4.0, n_samples=4), 0.0)
        np.testing.assert_allclose(schedule.times, [0.0, 1.0, 2.0, 3.0, 4.0])
        assert schedule.checkpoint_tags == {}

    def test_params_follow_regime(self):
        cfg = ExperimentConfig(regime=Regime.LONG_WAVE, ratio=RatioPreset.NON_CRITICAL)
        p = params_for(cfg, 0.05)
        assert p.mu == 0.05 and p.gamma == 0.9 and p.delta == 0.5
        assert params_for(ExperimentConfig(), 0.1).mu == pytest.approx(0.01)

    def test_custom_ratio_requires_values(self):
        with pytest.raises(ConfigError):
            params_for(ExperimentConfig(ratio=RatioPreset.CUSTOM), 0.1)
        p = params_for(ExperimentConfig(ratio=RatioPreset.CUSTOM, gamma=0.3, delta=1.7), 0.1)
        assert isinstance(p, RegimeParams) and p.gamma == 0.3


class TestConfigFile:
    def test_seed_template_parses(self):
        cfg = parse_config(SEED_TEMPLATE)
        assert cfg.models == (ModelName.GN, ModelName.KDV, ModelName.CL)
        assert cfg.epsilons == (0.1, 0.08, 0.065, 0.05, 0.035)
        assert cfg.checkpoints == ("10", "1/eps", "eps^-3/2")
        assert cfg.regime is Regime.CAMASSA_HOLM
        assert cfg.dealias is False

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            parse_config("[experiment]\nspeed = 3\n")

    def test_unknown_section(self):
        with pytest.raises(ConfigError):
            parse_config("[plotting]\ncolor = red\n")

    def test_bad_value(self):
        with pytest.raises(ConfigError):
            parse_config("[experiment]\nn_samples = many\n")

    def test_unknown_model(self):
        with pytest.raises(ConfigError):
            parse_config("[experiment]\nmodels = GN, Boussinesq\n")

    def test_custom_ratio_requires_parameters(self):
        with pytest.raises(ConfigError):
            parse_config("[experiment]\nratio = custom\n")
        cfg = parse_config("[experiment]\nratio = custom\n[parameters]\ngamma = 0.3\ndelta = 1.7\n")
        assert (cfg.gamma, cfg.delta) == (0.3, 1.7)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_config(tmp_path / "missing.ini")

    def test_hash_ignores_workers(self):
        cfg = parse_config(SEED_TEMPLATE)
        assert config_hash(cfg) == config_hash(replace(cfg, workers=8))
        assert config_hash(cfg) != config_hash(replace(cfg, s_err=1.0))


class TestOutput:
    def test_sweep_csv_round_trip(self, tmp_path):
        df = pd.DataFrame.from_records(
            [
                {"epsilon": e, "model": "KdV", "error_L2": 0.3 * e ** 2, "error_H1": 0.4 * e ** 2,
                 "checkpoint_tag": "1/eps"}
                for e in (0.1, 0.05, 0.025)
            ],
            columns=SWEEP_COLUMNS,
        )
        path = write_csv(df, tmp_path / "sweep.csv")
        back = read_sweep(path)
        assert list(back.columns) == SWEEP_COLUMNS
        np.testing.assert_array_equal(back["error_L2"].to_numpy(), df["error_L2"].to_numpy())
        rates = rates_from_frame(back)
        assert rates[("KdV", "1/eps")].slope == pytest.approx(2.0)

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "broken.csv"
        path.write_text("epsilon,model\n0.1,KdV\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_sweep(path)

    def test_series_frame_labels_checkpoints(self):
        series = ErrorSeries(
            times=np.array([0.0, 1.0, 2.0]),
            errors={"KdV": {"L2": np.array([0.0, 0.1, 0.2]), "H1": np.array([0.0, 0.2, 0.4])}},
            checkpoint_tags={"10": 1, "1/eps": 1, "eps^-3/2": 2},
        )
        df = series_frame(series)
        assert list(df["checkpoint_tag"]) == ["", "10|1/eps", "eps^-3/2"]
        assert series.value_at("KdV", "eps^-3/2") == 0.2
        assert series.value_at("KdV", "missing") is None

    def test_sidecar_is_deterministic(self, tmp_path):
        metadata = {"epsilon": np.float64(0.1), "dt": {"GN": 0.05}, "errors": np.arange(3)}
        first = write_sidecar(metadata, tmp_path / "a.json").read_text(encoding="utf-8")
        second = write_sidecar(metadata, tmp_path / "b.json").read_text(encoding="utf-8")
        assert first == second
        payload = json.loads(first)
        assert payload["errors"] == [0, 1, 2]
        assert "numpy" in payload["environment"]


class TestComparison:
    def test_reference_has_zero_error(self, small_config):
        series = run_comparison(replace(small_config, models=(ModelName.GN,)))
        assert series.models == ["GN"]
        assert not np.any(series.errors["GN"]["L2"])
        assert not np.any(series.errors["GN"]["H1"])

    def test_models_start_from_common_data(self, small_config):
        series = run_comparison(small_config)
        assert series.models == ["GN", "KdV", "CL"]
        assert len(series.times) == 5
        for model in ("KdV", "CL"):
            errors = series.errors[model]["L2"]
            assert errors[0] < 1e-12
            assert np.all(np.isfinite(errors)) and errors[-1] > 0.0
            assert np.all(series.errors[model]["H1"] >= errors - 1e-15)
        assert series.value_at("KdV", "1") is not None
        assert series.metadata["config_hash"] == config_hash(small_config)
        assert series.metadata["diagnostics"]["GN"]["impulse_drift"] < 1e-10
