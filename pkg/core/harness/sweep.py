"""Przegląd po eps i tempa zbieżności błędów w punktach kontrolnych."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
import logging

import numpy as np
from scipy.stats import linregress

from core.errors import BlowUpError, ConfigError, DepthError
from core.harness.config_file import config_hash, config_to_dict
from core.harness.runner import assemble_series, simulate
from core.models import ExperimentConfig, ModelName, RateFit, SweepTable

logger = logging.getLogger(__name__)


def convergence_rate(points: list[tuple[float, float]]) -> RateFit:
    """
    Dopasowanie prostej do log(błąd) względem log(eps) metodą najmniejszych kwadratów.

    Args:
        points: Pary (eps, błąd)

    Returns:
        RateFit; dla dwóch punktów błąd standardowy wynosi 0

    Raises:
        ValueError: mniej niż dwa punkty lub wartość niedodatnia
    """
    if len(points) < 2:
        raise ValueError("Dopasowanie wymaga co najmniej dwóch punktów")
    eps = np.array([e for e, _ in points], dtype=float)
    err = np.array([v for _, v in points], dtype=float)
    if np.any(eps <= 0.0) or np.any(err <= 0.0) or not np.all(np.isfinite(err)):
        raise ValueError("Eps i błędy muszą być dodatnie i skończone")
    fit = linregress(np.log(eps), np.log(err))
    stderr = 0.0 if len(points) == 2 else float(fit.stderr)
    return RateFit(slope=float(fit.slope), stderr=stderr, intercept=float(fit.intercept), n_points=len(points))


def _job(args: tuple[ExperimentConfig, float, ModelName]):
    cfg, epsilon, model = args
    return simulate(cfg, epsilon, model)


def _run_jobs(cfg: ExperimentConfig, jobs: list[tuple[float, ModelName]]) -> list:
    payload = [(cfg, epsilon, model) for epsilon, model in jobs]
    if cfg.workers > 1 and len(payload) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            futures = [pool.submit(_job, item) for item in payload]
            results = []
            for future in futures:
                try:
                    results.append(future.result())
                except Exception as exc:  # wynik zapisywany jako porażka danego zadania
                    results.append(exc)
            return results
    results = []
    for item in payload:
        try:
            results.append(_job(item))
        except Exception as exc:
            results.append(exc)
    return results


def sweep_epsilon(cfg: ExperimentConfig) -> SweepTable:
    """
    Uruchamia porównanie dla każdego eps i dopasowuje tempa zbieżności.

    Najpierw liczona jest referencja GN dla każdego eps, potem po jednym
    zadaniu na parę (eps, model). Porażka pary nie przerywa przeglądu.

    Raises:
        ConfigError: mniej niż trzy wartości eps
        BlowUpError, DepthError: blow-up referencji GN
    """
    epsilons = sorted(set(cfg.epsilons), reverse=True)
    if len(epsilons) < 3:
        raise ConfigError("Przegląd wymaga co najmniej trzech wartości eps")
    models = [m for m in cfg.models if m is not ModelName.GN]

    references = {}
    for epsilon, result in zip(epsilons, _run_jobs(cfg, [(e, ModelName.GN) for e in epsilons])):
        if isinstance(result, Exception):
            if isinstance(result, (BlowUpError, DepthError)):
                logger.error("Referencja GN nie powiodła się dla eps = %.4g", epsilon)
            raise result
        references[epsilon] = result

    jobs = [(epsilon, model) for epsilon in epsilons for model in models]
    runs = {}
    table = SweepTable(
        epsilons=epsilons,
        metadata={"config_hash": config_hash(cfg), "config": config_to_dict(cfg), "series": {}},
    )
    for (epsilon, model), result in zip(jobs, _run_jobs(cfg, jobs)):
        if isinstance(result, Exception):
            table.failures[(epsilon, model.value)] = f"{type(result).__name__}: {result}"
            logger.warning("eps = %.4g, model %s: %s", epsilon, model.value, result)
            continue
        runs.setdefault(epsilon, {})[model] = result

    for epsilon in epsilons:
        available = runs.get(epsilon, {})
        subset = replace(cfg, models=tuple(m for m in cfg.models if m is ModelName.GN or m in available))
        series = assemble_series(subset, epsilon, references[epsilon], available)
        table.metadata["series"][str(epsilon)] = {
            "n_points": series.metadata["n_points"],
            "length": series.metadata["length"],
            "dt": series.metadata["dt"],
            "blowups": series.blowups,
        }
        for tag, index in sorted(series.checkpoint_tags.items(), key=lambda item: item[1]):
            for model in series.models:
                values = series.errors[model]
                if index >= len(values["L2"]):
                    table.failures.setdefault((epsilon, model), f"blow-up przed punktem {tag}")
                    continue
                table.rows.append({
                    "epsilon": epsilon,
                    "model": model,
                    "checkpoint_tag": tag,
                    "time": float(series.times[index]),
                    "error_L2": float(values["L2"][index]),
                    "error_H1": float(values["H1"][index]),
                })

    for model in models:
        for tag in cfg.checkpoints:
            points = table.errors_for(model.value, tag)
            try:
                table.slopes[(model.value, tag)] = convergence_rate(points)
            except ValueError as exc:
                logger.info("Brak tempa dla %s @ %s: %s", model.value, tag, exc)
    return table
