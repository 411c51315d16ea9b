"""Modele danych dla symulacji fal wewnętrznych."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional
import math

import numpy as np

from config.settings import PARAM_BOUNDS, MODEL_DEFAULTS, HARNESS_CONFIG, GRID_CONFIG, INTEGRATOR_CONFIG, SOLVER_CONFIG
from core.errors import ConfigError


class ModelName(Enum):
    """Modele porównywane z układem Greena–Naghdiego."""
    GN = "GN"
    IB = "iB"
    KDV = "KdV"
    EKDV = "eKdV"
    MKDV = "mKdV"
    CL = "CL"
    WEAKLY_COUPLED = "weakly-coupled"
    UNIDIRECTIONAL = "unidirectional"

    @classmethod
    def parse(cls, text: str) -> "ModelName":
        """Rozpoznaje nazwę modelu bez względu na wielkość liter."""
        for member in cls:
            if member.value.lower() == text.strip().lower():
                return member
        raise ConfigError(f"Nieznany model: {text!r}")


class ScalarModelKind(Enum):
    """Rodziny równań skalarnych i ich maski współczynników."""
    IB = "iB"
    KDV = "KdV"
    EKDV = "eKdV"
    CL = "CL"

    @property
    def mask(self) -> dict[str, bool]:
        """Które współczynniki model zachowuje."""
        keep_all = self is ScalarModelKind.CL
        return {
            "alpha1": True,
            "beta": self is not ScalarModelKind.IB,
            "nu": self is not ScalarModelKind.IB,
            "alpha2": self in (ScalarModelKind.EKDV, ScalarModelKind.CL),
            "alpha3": keep_all,
            "kappa1": keep_all,
            "kappa2": keep_all,
        }


class Frame(Enum):
    """Układ odniesienia dla równań skalarnych."""
    COMOVING = "comoving"
    LAB = "lab"  # transport poza odwrotnością (1 - mu beta dx^2)
    LAB_SMOOTHED = "lab-smoothed"  # transport pod odwrotnością


class IntegratorMethod(Enum):
    """Schematy całkowania w czasie."""
    ABM4 = "abm4"
    RK4 = "rk4"


class Regime(Enum):
    """Reżimy asymptotyczne."""
    LONG_WAVE = "long-wave"  # mu = eps
    CAMASSA_HOLM = "camassa-holm"  # mu = eps^2

    def mu_for(self, epsilon: float) -> float:
        """Parametr płytkości wynikający z reguły reżimu."""
        return epsilon if self is Regime.LONG_WAVE else epsilon ** 2


class RatioPreset(Enum):
    """Presety (gamma, delta)."""
    CRITICAL = "critical"
    NON_CRITICAL = "non-critical"
    CUSTOM = "custom"


class DataKind(Enum):
    """Rodzaje danych początkowych."""
    GAUSSIAN = "gaussian-localized"
    ALGEBRAIC = "algebraic-nonlocalized"
    UNIDIRECTIONAL = "unidirectional-compatible"

    @property
    def is_decomposition(self) -> bool:
        """Dane budowane z pary fal (v+, v-)."""
        return self is not DataKind.UNIDIRECTIONAL


class Side(Enum):
    """Półprosta dla okna w teście rekonstrukcji prędkości."""
    LEFT = "left-half"
    RIGHT = "right-half"


@dataclass(frozen=True)
class RegimeParams:
    """Parametry bezwymiarowe (eps, mu, delta, gamma) oraz pokrętła modeli (theta, lambda)."""
    epsilon: float
    mu: float
    delta: float
    gamma: float
    theta: float = MODEL_DEFAULTS["theta"]
    lam: float = MODEL_DEFAULTS["lambda"]

    def __post_init__(self):
        self.validate()

    def validate(self, bounds: dict | None = None) -> None:
        """
        Sprawdza przynależność do dopuszczalnego obszaru parametrów.

        Args:
            bounds: Granice parametrów (default: PARAM_BOUNDS)

        Raises:
            ConfigError: gdy któryś parametr jest spoza obszaru lub nieskończony
        """
        bounds = bounds or PARAM_BOUNDS
        for name in ("epsilon", "mu", "delta", "gamma", "theta", "lam"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ConfigError(f"Parametr {name} musi być skończony, jest {value}")
        for name, limits in bounds.items():
            value = getattr(self, name)
            if not limits["min"] <= value <= limits["max"]:
                raise ConfigError(
                    f"Parametr {name} = {value} poza przedziałem [{limits['min']}, {limits['max']}]"
                )

    @property
    def depth_sum(self) -> float:
        """gamma + delta."""
        return self.gamma + self.delta


@dataclass(frozen=True)
class ScalarCoeffs:
    """Współczynniki ogólnego równania skalarnego wraz z kierunkiem propagacji."""
    beta: float  # rola nu_t
    alpha1: float
    alpha2: float
    alpha3: float
    nu: float  # rola nu_x
    kappa1: float
    kappa2: float
    direction: int = 1

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise ConfigError(f"Kierunek musi być +1 lub -1, jest {self.direction}")


@dataclass(frozen=True)
class BaseCoeffs:
    """Stałe układu sprzężonego niezależne od (theta, lambda)."""
    alpha1: float
    alpha2: float
    alpha3: float
    nu: float
    kappa1: float
    kappa2: float
    kappa3: float


@dataclass(frozen=True)
class IntegratorConfig:
    """Konfiguracja całkowania w czasie."""
    dt: float
    t_end: float
    method: IntegratorMethod = IntegratorMethod.ABM4
    blowup_threshold: float = INTEGRATOR_CONFIG["blowup_threshold"]
    max_frequency: Optional[float] = None  # szacunek promienia spektralnego RHS

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigError(f"Krok czasowy musi być dodatni, jest {self.dt}")
        if self.t_end < 0:
            raise ConfigError(f"t_end musi być nieujemny, jest {self.t_end}")


@dataclass
class Trajectory:
    """Stany próbkowane w zadanych chwilach."""
    times: np.ndarray
    states: np.ndarray  # kształt (n_samples, *y0.shape)
    steps: int = 0

    def at(self, t: float) -> np.ndarray:
        """Zwraca stan w chwili próbkowania t."""
        index = int(np.argmin(np.abs(self.times - t)))
        return self.states[index]


@dataclass
class ExperimentConfig:
    """Konfiguracja eksperymentu porównawczego."""
    regime: Regime = Regime.CAMASSA_HOLM
    ratio: RatioPreset = RatioPreset.CRITICAL
    data: DataKind = DataKind.GAUSSIAN
    models: tuple[ModelName, ...] = (ModelName.GN, ModelName.KDV, ModelName.CL)
    epsilons: tuple[float, ...] = HARNESS_CONFIG["epsilons"]
    checkpoints: tuple[str, ...] = HARNESS_CONFIG["checkpoints"]
    s_err: float = HARNESS_CONFIG["s_err"]
    n_samples: int = HARNESS_CONFIG["n_samples"]
    gamma: Optional[float] = None  # tylko dla RatioPreset.CUSTOM
    delta: Optional[float] = None
    theta: float = MODEL_DEFAULTS["theta"]
    lam: float = MODEL_DEFAULTS["lambda"]
    dx: float = GRID_CONFIG["dx"]
    support_margin: float = GRID_CONFIG["support_margin"]
    dealias: bool = GRID_CONFIG["dealias"]
    method: IntegratorMethod = IntegratorMethod.ABM4
    cfl: float = INTEGRATOR_CONFIG["harness_cfl"]
    blowup_threshold: float = INTEGRATOR_CONFIG["blowup_threshold"]
    elliptic_tol: float = SOLVER_CONFIG["tol"]
    elliptic_max_iter: int = SOLVER_CONFIG["max_iter"]
    t_final: Optional[float] = None  # domyślnie największy punkt kontrolny
    residuals: bool = False
    workers: int = HARNESS_CONFIG["workers"]


@dataclass
class Samples:
    """Próbki (zeta, vbar) jednego potoku w chwilach wspólnych dla porównania."""
    model: ModelName
    times: np.ndarray
    zeta: np.ndarray  # (n_samples, n_points)
    vbar: np.ndarray
    dt: float
    blowup_time: Optional[float] = None
    diagnostics: dict = field(default_factory=dict)


@dataclass
class ErrorSeries:
    """Błędy modeli względem GN w funkcji czasu."""
    times: np.ndarray
    errors: dict[str, dict[str, np.ndarray]] = field(default_factory=dict)  # model -> norma -> wartości
    checkpoint_tags: dict[str, int] = field(default_factory=dict)  # etykieta -> indeks próbki
    blowups: dict[str, float] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def models(self) -> list[str]:
        """Modele obecne w serii."""
        return list(self.errors.keys())

    def value_at(self, model: str, tag: str, norm: str = "L2") -> Optional[float]:
        """Błąd modelu w punkcie kontrolnym o danej etykiecie."""
        index = self.checkpoint_tags.get(tag)
        values = self.errors.get(model, {}).get(norm)
        if index is None or values is None or index >= len(values):
            return None
        return float(values[index])


@dataclass(frozen=True)
class RateFit:
    """Nachylenie log(błąd) względem log(eps)."""
    slope: float
    stderr: float
    intercept: float
    n_points: int


@dataclass
class SweepTable:
    """Błędy w punktach kontrolnych dla serii wartości eps."""
    epsilons: list[float]
    rows: list[dict] = field(default_factory=list)  # epsilon, model, checkpoint_tag, time, error_L2, error_H1
    slopes: dict[tuple[str, str], RateFit] = field(default_factory=dict)  # (model, tag) -> dopasowanie
    failures: dict[tuple[float, str], str] = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def errors_for(self, model: str, tag: str, norm: str = "L2") -> list[tuple[float, float]]:
        """Pary (eps, błąd) dla jednego modelu i punktu kontrolnego."""
        return [
            (row["epsilon"], row[f"error_{norm}"])
            for row in self.rows
            if row["model"] == model and row["checkpoint_tag"] == tag
        ]
