"""Dane początkowe eksperymentów."""

import numpy as np

from config.settings import GRID_CONFIG
from core.errors import GridTooSmallError
from core.models import DataKind, RegimeParams
from core.physics.reconstruction import reconstruct_vbar_from_zeta, smooth_step
from core.spectral.grid import Field, Grid

LEFT_WAVE_RATIO = 2.0 / 3.0


def gaussian_profile(x: np.ndarray) -> np.ndarray:
    """exp(-(x/2)^2)."""
    return np.exp(-(x / 2.0) ** 2)


def algebraic_profile(x: np.ndarray) -> np.ndarray:
    """(1 + 10 x^2)^(-1/3); ogon zanika tylko algebraicznie."""
    return (1.0 + 10.0 * x ** 2) ** (-1.0 / 3.0)


def _profile(kind: DataKind, grid: Grid) -> Field:
    if kind is DataKind.ALGEBRAIC:
        # wygaszenie przy szwie, by przedłużenie periodyczne było gładkie
        taper = min(GRID_CONFIG["seam_taper"], 0.25 * grid.length)
        seam = smooth_step((0.5 * grid.length - np.abs(grid.x)) / taper)
        return Field(grid, algebraic_profile(grid.x) * seam)
    return Field(grid, gaussian_profile(grid.x))


def _check_tail(field: Field, name: str, tolerance: float) -> None:
    tail = max(abs(field.values[0]), abs(field.values[-1]))
    if tail > tolerance:
        raise GridTooSmallError(
            f"{name}: wartość {tail:.3e} na brzegu domeny powyżej {tolerance:.0e}; zwiększ L"
        )


def make_initial_data(kind: DataKind, grid: Grid, p: RegimeParams) -> tuple[Field, Field]:
    """
    Buduje (zeta0, v̄0).

    Dla danych rozkładowych v_+ = g, v_- = (2/3) g i (zeta0, v̄0) = (v_+ + v_-, (gamma+delta)(v_+ - v_-));
    dla danych jednokierunkowych zeta0 = g, a v̄0 odtwarzane z zeta0.

    Args:
        kind: Rodzaj danych
        grid: Siatka
        p: Parametry reżimu

    Returns:
        (zeta0, v̄0)

    Raises:
        GridTooSmallError: gdy ogon danych na brzegu przekracza tolerancję
    """
    g = _profile(kind, grid)
    if kind.is_decomposition:
        v_plus, v_minus = g, LEFT_WAVE_RATIO * g
        zeta0, vbar0 = v_plus + v_minus, p.depth_sum * (v_plus - v_minus)
    else:
        zeta0 = g
        vbar0 = reconstruct_vbar_from_zeta(zeta0, p)
    tolerance = GRID_CONFIG["tail_tolerance"]
    _check_tail(zeta0, "zeta0", tolerance)
    _check_tail(vbar0, "vbar0", tolerance)
    return zeta0, vbar0
