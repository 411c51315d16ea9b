"""Normy typu Sobolewa liczone ze współczynników Fouriera."""

import numpy as np
from scipy import fft

from core.spectral.grid import Field


def _mode_weights(n_modes: int, n_points: int) -> np.ndarray:
    # mody 1..n/2-1 reprezentują pary +-m
    weights = np.full(n_modes, 2.0)
    weights[0] = 1.0
    if n_points % 2 == 0:
        weights[-1] = 1.0
    return weights


def sobolev_norm(f: Field, s: float = 0.0) -> float:
    """
    Norma H^s: |f|^2 = L * sum_m (1 + k_m^2)^s |c_m|^2, c_m = rfft(f)/n.

    Args:
        f: Pole
        s: Indeks Sobolewa (>= 0)

    Returns:
        Wartość normy
    """
    grid = f.grid
    coefficients = fft.rfft(f.values) / grid.n_points
    weights = _mode_weights(len(coefficients), grid.n_points)
    total = np.sum(weights * (1.0 + grid.wavenumbers ** 2) ** s * np.abs(coefficients) ** 2)
    return float(np.sqrt(grid.length * total))


def scaled_energy(f: Field, s: float, mu_beta: float) -> float:
    """Energia (|f|_{H^s}^2 + mu_beta |f|_{H^{s+1}}^2)^(1/2)."""
    if mu_beta < 0:
        raise ValueError(f"mu_beta musi być nieujemne, jest {mu_beta}")
    low = sobolev_norm(f, s)
    if mu_beta == 0.0:
        return low
    return float(np.sqrt(low ** 2 + mu_beta * sobolev_norm(f, s + 1.0) ** 2))


def weighted_norm(f: Field, n: int, s: float, mu: float) -> float:
    """
    Norma ważona sum_j |w^j f|_{H^{s+2(n-j)}_mu}, w = x - środek domeny.

    Na domenie periodycznej to przybliżenie diagnostyczne, poprawne dopóki
    rozwiązanie nie dociera do szwu.
    """
    if n < 0:
        raise ValueError(f"n musi być >= 0, jest {n}")
    w = f.grid.x - f.grid.center
    return sum(
        scaled_energy(Field(f.grid, w ** j * f.values), s + 2 * (n - j), mu)
        for j in range(n + 1)
    )
