"""Zapis wyników: CSV (pandas), metadane JSON oraz bloki .dat."""

from importlib.metadata import PackageNotFoundError, version
from pathlib import Path
import json
import logging
import platform

import numpy as np
import pandas as pd

from config.settings import OUTPUT_CONFIG
from core.errors import ConfigError
from core.harness.sweep import convergence_rate
from core.models import ErrorSeries, RateFit, SweepTable

logger = logging.getLogger(__name__)

SERIES_COLUMNS = ["time", "model", "error_L2", "error_H1", "checkpoint_tag"]
SWEEP_COLUMNS = ["epsilon", "model", "error_L2", "error_H1", "checkpoint_tag"]


def series_frame(series: ErrorSeries) -> pd.DataFrame:
    """Seria błędów w postaci długiej: jeden wiersz na (chwila, model)."""
    labels: dict[int, list[str]] = {}
    for tag, index in series.checkpoint_tags.items():
        labels.setdefault(index, []).append(tag)
    records = []
    for model in series.models:
        values = series.errors[model]
        for index in range(len(values["L2"])):
            records.append({
                "time": float(series.times[index]),
                "model": model,
                "error_L2": float(values["L2"][index]),
                "error_H1": float(values["H1"][index]),
                "checkpoint_tag": "|".join(labels.get(index, [])),
            })
    return pd.DataFrame.from_records(records, columns=SERIES_COLUMNS)


def sweep_frame(table: SweepTable) -> pd.DataFrame:
    """Tabela przeglądu: jeden wiersz na (eps, model, punkt kontrolny)."""
    df = pd.DataFrame.from_records(table.rows, columns=SWEEP_COLUMNS + ["time"])
    return df[SWEEP_COLUMNS].sort_values(["model", "checkpoint_tag", "epsilon"], kind="stable").reset_index(drop=True)


def slopes_frame(slopes: dict[tuple[str, str], RateFit]) -> pd.DataFrame:
    return pd.DataFrame.from_records(
        [
            {"model": model, "checkpoint_tag": tag, "slope": fit.slope, "stderr": fit.stderr,
             "intercept": fit.intercept, "n_points": fit.n_points}
            for (model, tag), fit in sorted(slopes.items())
        ],
        columns=["model", "checkpoint_tag", "slope", "stderr", "intercept", "n_points"],
    )


def write_csv(df: pd.DataFrame, path: str | Path) -> Path:
    """Zapisuje ramkę z pełną precyzją liczb (round-trip float64)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    df.to_csv(path, index=False, float_format=OUTPUT_CONFIG["float_format"], encoding="utf-8", lineterminator="\n")
    logger.info("Zapisano %s (%d wierszy)", path, len(df))
    return path


def _environment() -> dict:
    versions = {"python": platform.python_version()}
    for package in ("numpy", "scipy", "pandas"):
        try:
            versions[package] = version(package)
        except PackageNotFoundError:
            versions[package] = None
    return versions


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    return value


def write_sidecar(metadata: dict, path: str | Path) -> Path:
    """Metadane przebiegu obok pliku CSV; bez znaczników czasu, więc zapis jest deterministyczny."""
    path = Path(path)
    payload = {**_jsonable(metadata), "environment": _environment()}
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def write_dat(series: ErrorSeries, path: str | Path, norm: str = "L2") -> Path:
    """Bloki tekstowe (czas, błąd) dla każdego modelu, oddzielone pustymi liniami."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for model in series.models:
            values = series.errors[model][norm]
            handle.write(f"# {model} {norm}\n")
            np.savetxt(handle, np.column_stack([series.times[:len(values)], values]), fmt="%.17g")
            handle.write("\n\n")
    return path


def read_sweep(path: str | Path) -> pd.DataFrame:
    """Wczytuje tabelę przeglądu zapisaną przez write_csv."""
    if not Path(path).is_file():
        raise ConfigError(f"Brak pliku: {path}")
    df = pd.read_csv(path, dtype={"checkpoint_tag": str, "model": str}, keep_default_na=False)
    missing = set(SWEEP_COLUMNS) - set(df.columns)
    if missing:
        raise ConfigError(f"Brak kolumn w {path}: {sorted(missing)}")
    return df


def rates_from_frame(df: pd.DataFrame, norm: str = "L2") -> dict[tuple[str, str], RateFit]:
    """Tempa zbieżności dla każdej pary (model, punkt kontrolny) z tabeli przeglądu."""
    rates = {}
    for (model, tag), group in df.groupby(["model", "checkpoint_tag"], sort=True):
        points = list(zip(group["epsilon"].astype(float), group[f"error_{norm}"].astype(float)))
        try:
            rates[(model, tag)] = convergence_rate(points)
        except ValueError as exc:
            logger.info("Pominięto %s @ %s: %s", model, tag, exc)
    return rates
