"""Pliki eksperymentów w formacie INI."""

from configparser import ConfigParser
from dataclasses import fields
from enum import Enum
from pathlib import Path
import hashlib
import json

from core.errors import ConfigError
from core.models import (
    DataKind,
    ExperimentConfig,
    IntegratorMethod,
    ModelName,
    RatioPreset,
    Regime,
)

# klucz pliku -> (sekcja, pole ExperimentConfig)
_LAYOUT = {
    "experiment": ("regime", "ratio", "data", "models", "epsilons", "checkpoints", "t_final",
                   "n_samples", "s_err", "residuals"),
    "parameters": ("gamma", "delta", "theta", "lam"),
    "grid": ("dx", "support_margin", "dealias"),
    "integrator": ("method", "cfl", "blowup_threshold"),
    "solver": ("elliptic_tol", "elliptic_max_iter"),
    "output": ("workers",),
}

_ENUMS = {
    "regime": Regime,
    "ratio": RatioPreset,
    "data": DataKind,
    "method": IntegratorMethod,
}

SEED_TEMPLATE = """\
# Eksperyment porównawczy: referencja GN kontra modele przybliżone
[experiment]
regime = camassa-holm
ratio = critical
data = gaussian-localized
models = GN, KdV, CL
epsilons = 0.1, 0.08, 0.065, 0.05, 0.035
checkpoints = 10, 1/eps, eps^-3/2
n_samples = 200
s_err = 0

[parameters]
theta = 0.5
lam = 0

[grid]
dx = 0.2
support_margin = 20
dealias = false

[integrator]
method = abm4
cfl = 0.25

[solver]
elliptic_tol = 1e-12
elliptic_max_iter = 500

[output]
workers = 1
"""


def _split(text: str) -> list[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _parse_value(name: str, text: str, parser: ConfigParser, section: str):
    try:
        if name in _ENUMS:
            return _ENUMS[name](text.strip().lower())
        if name == "models":
            return tuple(ModelName.parse(item) for item in _split(text))
        if name == "epsilons":
            return tuple(float(item) for item in _split(text))
        if name == "checkpoints":
            return tuple(_split(text))
        if name in ("dealias", "residuals"):
            return parser.getboolean(section, name)
        if name in ("n_samples", "elliptic_max_iter", "workers"):
            return int(text)
        return float(text)
    except ValueError as exc:
        raise ConfigError(f"Niepoprawna wartość [{section}] {name} = {text!r}: {exc}") from None


def parse_config(text: str) -> ExperimentConfig:
    """
    Buduje ExperimentConfig z tekstu INI.

    Raises:
        ConfigError: nieznana sekcja, klucz lub wartość
    """
    parser = ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read_string(text)
    values = {}
    for section in parser.sections():
        if section not in _LAYOUT:
            raise ConfigError(f"Nieznana sekcja: [{section}]")
        for name, raw in parser.items(section):
            if name not in _LAYOUT[section]:
                raise ConfigError(f"Nieznany klucz w [{section}]: {name}")
            values[name] = _parse_value(name, raw, parser, section)
    cfg = ExperimentConfig(**values)
    if cfg.ratio is RatioPreset.CUSTOM and (cfg.gamma is None or cfg.delta is None):
        raise ConfigError("ratio = custom wymaga gamma i delta w [parameters]")
    if not cfg.models:
        raise ConfigError("Lista modeli jest pusta")
    return cfg


def load_config(path: str | Path) -> ExperimentConfig:
    """Wczytuje plik eksperymentu."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"Brak pliku konfiguracji: {path}")
    return parse_config(path.read_text(encoding="utf-8"))


def config_to_dict(cfg: ExperimentConfig) -> dict:
    """Konfiguracja jako słownik typów JSON."""
    result = {}
    for f in fields(cfg):
        value = getattr(cfg, f.name)
        if isinstance(value, Enum):
            value = value.value
        elif isinstance(value, tuple):
            value = [item.value if isinstance(item, Enum) else item for item in value]
        result[f.name] = value
    return result


def config_hash(cfg: ExperimentConfig) -> str:
    """Skrót sha256 konfiguracji (bez liczby procesów)."""
    payload = config_to_dict(cfg)
    payload.pop("workers", None)
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode("utf-8")).hexdigest()
