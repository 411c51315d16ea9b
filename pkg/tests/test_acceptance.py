"""
Przeglądy po eps odtwarzające tempa zbieżności modeli.

Pełne przebiegi trwają dziesiątki minut; uruchamiane z --runslow.
"""

from dataclasses import replace
import math

import numpy as np
import pytest

from core.harness.runner import run_comparison, run_ztov_probe
from core.harness.sweep import sweep_epsilon
from core.models import DataKind, ExperimentConfig, ModelName, RatioPreset, Regime

ONE_OVER_EPS = "1/eps"


def _errors(table, model):
    return dict(table.errors_for(model, ONE_OVER_EPS))


def test_small_run_is_deterministic():
    cfg = ExperimentConfig(models=(ModelName.GN, ModelName.CL), epsilons=(0.1,), checkpoints=("1",),
                           t_final=1.0, n_samples=2, dx=0.4)
    first, second = run_comparison(cfg), run_comparison(cfg)
    for model in first.models:
        for norm in ("L2", "H1"):
            np.testing.assert_array_equal(first.errors[model][norm], second.errors[model][norm])


@pytest.mark.slow
def test_linear_limit_all_models_coincide():
    cfg = ExperimentConfig(
        models=(ModelName.GN, ModelName.IB, ModelName.KDV, ModelName.CL, ModelName.WEAKLY_COUPLED),
        epsilons=(0.0,),
        checkpoints=(),
        t_final=10.0,
        n_samples=10,
        regime=Regime.LONG_WAVE,
    )
    series = run_comparison(cfg, 0.0)
    for model in series.models:
        assert np.max(series.errors[model]["L2"]) < 1e-8


@pytest.mark.slow
def test_conservation_over_full_reference_run():
    cfg = ExperimentConfig(models=(ModelName.GN,))
    series = run_comparison(cfg, 0.05)
    diagnostics = series.metadata["diagnostics"]["GN"]
    assert diagnostics["mass_drift"] < 1e-10
    assert diagnostics["impulse_drift"] < 1e-10
    assert diagnostics["spectral_tail_max"] < 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("ratio", [RatioPreset.CRITICAL, RatioPreset.NON_CRITICAL])
def test_unidirectional_convergence(ratio):
    cfg = ExperimentConfig(
        regime=Regime.CAMASSA_HOLM,
        ratio=ratio,
        data=DataKind.UNIDIRECTIONAL,
        models=(ModelName.GN, ModelName.UNIDIRECTIONAL),
        checkpoints=(ONE_OVER_EPS,),
    )
    table = sweep_epsilon(cfg)
    assert not table.failures
    assert 2.5 <= table.slopes[("unidirectional", ONE_OVER_EPS)].slope <= 3.5


@pytest.mark.slow
def test_long_wave_kdv_matches_cl():
    cfg = ExperimentConfig(
        regime=Regime.LONG_WAVE,
        ratio=RatioPreset.CRITICAL,
        models=(ModelName.GN, ModelName.KDV, ModelName.CL),
        checkpoints=(ONE_OVER_EPS,),
    )
    table = sweep_epsilon(cfg)
    for model in ("KdV", "CL"):
        assert 0.7 <= table.slopes[(model, ONE_OVER_EPS)].slope <= 1.3
    kdv, cl = _errors(table, "KdV"), _errors(table, "CL")
    for eps in table.epsilons:
        assert abs(math.log(kdv[eps]) - math.log(cl[eps])) < math.log(3.0)


@pytest.mark.slow
def test_camassa_holm_non_critical_burgers_is_as_precise():
    cfg = ExperimentConfig(
        regime=Regime.CAMASSA_HOLM,
        ratio=RatioPreset.NON_CRITICAL,
        models=(ModelName.GN, ModelName.IB, ModelName.CL),
        checkpoints=(ONE_OVER_EPS,),
    )
    table = sweep_epsilon(cfg)
    for model in ("iB", "CL"):
        assert 0.6 <= table.slopes[(model, ONE_OVER_EPS)].slope <= 1.4
    burgers, cl = _errors(table, "iB"), _errors(table, "CL")
    for eps in table.epsilons:
        assert abs(math.log(burgers[eps]) - math.log(cl[eps])) < math.log(3.0)


@pytest.mark.slow
def test_camassa_holm_critical():
    cfg = ExperimentConfig(
        regime=Regime.CAMASSA_HOLM,
        ratio=RatioPreset.CRITICAL,
        models=(ModelName.GN, ModelName.CL),
        checkpoints=(ONE_OVER_EPS,),
    )
    table = sweep_epsilon(cfg)
    assert 1.5 <= table.slopes[("CL", ONE_OVER_EPS)].slope <= 2.5

    series = run_comparison(replace(cfg, models=(ModelName.GN, ModelName.CL, ModelName.WEAKLY_COUPLED)), 0.1)
    coupled, decoupled = series.errors["weakly-coupled"]["L2"], series.errors["CL"]["L2"]
    assert np.all(coupled <= decoupled + 1e-14)


@pytest.mark.slow
def test_velocity_reconstruction_plateau():
    cfg = ExperimentConfig(regime=Regime.CAMASSA_HOLM, ratio=RatioPreset.NON_CRITICAL)
    onsets, levels = [], []
    for eps in (0.1, 0.05, 0.035):
        series = run_ztov_probe(cfg, eps)
        residual = series.errors["ztov"]["L2"]
        onsets.append(series.metadata["plateau_onset"])
        levels.append(float(np.median(residual[len(residual) // 2:])))
    assert (max(onsets) - min(onsets)) / max(onsets) < 0.25
    assert levels[0] > levels[1] > levels[2]
