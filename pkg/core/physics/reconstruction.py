"""Przybliżenie jednokierunkowe i odtwarzanie prędkości ścinania z deformacji interfejsu."""

import numpy as np

from config.settings import HARNESS_CONFIG, GRID_CONFIG
from core.models import Frame, RegimeParams, Side
from core.params.coefficients import reconstruction_coeffs, unidirectional_coeffs
from core.physics.green_naghdi import GnState, depths
from core.physics.scalar_models import scalar_rhs
from core.spectral.grid import Field, Grid
from core.spectral.norms import sobolev_norm
from core.spectral.operators import derivative


def unidirectional_rhs(zeta: Field, p: RegimeParams) -> Field:
    """Prawa strona równania jednokierunkowego dla zeta (transport pod operatorem wygładzającym)."""
    return scalar_rhs(zeta, unidirectional_coeffs(p), p, Frame.LAB_SMOOTHED)


def reconstruct_vbar_from_zeta(zeta: Field, p: RegimeParams) -> Field:
    """
    Prędkość v̄ = ((h1 + gamma h2)/(h1 h2)) * v[zeta] podporządkowana deformacji.

    v[zeta] = zeta + eps a1/2 zeta^2 + eps^2 a2/3 zeta^3 + eps^3 a3/4 zeta^4
              + mu nu zeta_xx + mu eps (k1 zeta zeta_xx + k2 zeta_x^2),
    ze współczynnikami przy theta = lambda = 0 niezależnie od parametrów ewolucji.

    Args:
        zeta: Deformacja interfejsu
        p: Parametry reżimu

    Returns:
        Pole v̄
    """
    h1, h2 = depths(zeta, p)
    r = reconstruction_coeffs(p)
    eps, mu = p.epsilon, p.mu
    zeta_x = derivative(zeta, 1)
    zeta_xx = derivative(zeta, 2)
    slaved = (
        zeta
        + (eps * r.alpha1 / 2.0) * zeta ** 2
        + (eps ** 2 * r.alpha2 / 3.0) * zeta ** 3
        + (eps ** 3 * r.alpha3 / 4.0) * zeta ** 4
        + (mu * r.nu) * zeta_xx
        + (mu * eps) * (r.kappa1 * zeta * zeta_xx + r.kappa2 * zeta_x * zeta_x)
    )
    return (h1 + p.gamma * h2) / (h1 * h2) * slaved


def smooth_step(s: np.ndarray) -> np.ndarray:
    # krok klasy C^inf: 0 dla s <= 0, 1 dla s >= 1
    s = np.clip(s, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        rise = np.where(s > 0.0, np.exp(-1.0 / np.where(s > 0.0, s, 1.0)), 0.0)
        fall = np.where(s < 1.0, np.exp(-1.0 / np.where(s < 1.0, 1.0 - s, 1.0)), 0.0)
    return rise / (rise + fall)


def half_window(grid: Grid, side: Side, width: float | None = None, taper: float | None = None) -> Field:
    """
    Gładkie okno półprostej: przejście o szerokości width wokół x = 0
    oraz wygaszenie przy szwie periodycznym.
    """
    width = width or HARNESS_CONFIG["ztov_window"]
    taper = taper or min(GRID_CONFIG["seam_taper"], 0.25 * grid.length)
    x = grid.x if side is Side.RIGHT else -grid.x
    half = 0.5 * grid.length
    inner = smooth_step((x + 0.5 * width) / width)
    seam = smooth_step((half - np.abs(x)) / taper)
    return Field(grid, inner * seam)


def ztov_residual(state: GnState, side: Side, p: RegimeParams, s: float = 0.0) -> float:
    """
    Względna niezgodność v̄ z prędkością odtworzoną z zeta na wybranej półprostej.

    Args:
        state: Stan układu GN
        side: Półprosta (okno gładkie)
        p: Parametry reżimu
        s: Indeks Sobolewa

    Returns:
        |chi (v̄ - v[zeta])|_{H^s} / |chi v̄|_{H^s}; 1 gdy mianownik jest zerem
    """
    vbar = state.vbar(p)
    window = half_window(vbar.grid, side)
    mismatch = sobolev_norm(window * (vbar - reconstruct_vbar_from_zeta(state.zeta, p)), s)
    reference = sobolev_norm(window * vbar, s)
    if reference == 0.0:
        return 1.0
    return mismatch / reference


def plateau_onset(times: np.ndarray, residual: np.ndarray, factor: float | None = None) -> float:
    """
    Pierwsza chwila, od której residuum pozostaje w paśmie factor wokół
    mediany z drugiej połowy przebiegu.
    """
    factor = factor or HARNESS_CONFIG["plateau_factor"]
    times, residual = np.asarray(times), np.asarray(residual)
    level = float(np.median(residual[len(residual) // 2:]))
    if level <= 0.0:
        return float(times[0])
    outside = np.flatnonzero((residual > factor * level) | (residual < level / factor))
    if outside.size == 0:
        return float(times[0])
    last = outside[-1]
    return float(times[min(last + 1, len(times) - 1)])


class UnidirectionalSystem:
    """Równanie jednokierunkowe dla zeta na tablicy (n,)."""

    def __init__(self, grid: Grid, p: RegimeParams):
        self.grid = grid
        self.p = p
        self.coeffs = unidirectional_coeffs(p)

    def initial_vector(self, zeta0: Field, vbar0: Field) -> np.ndarray:
        return zeta0.values.copy()

    def observe(self, y: np.ndarray, time: float = 0.0) -> tuple[Field, Field]:
        zeta = Field(self.grid, y)
        return zeta, reconstruct_vbar_from_zeta(zeta, self.p)

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        return scalar_rhs(Field(self.grid, y), self.coeffs, self.p, Frame.LAB_SMOOTHED).values
