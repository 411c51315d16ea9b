"""Różniczkowanie spektralne i odwracanie mnożników Fouriera."""

import numpy as np
from scipy import fft

from core.errors import NonFiniteError, SingularMultiplierError
from core.spectral.grid import Field, dealias_filter


def _spectrum(f: Field) -> np.ndarray:
    if not f.is_finite:
        raise NonFiniteError("Transformata pola z wartościami nieskończonymi")
    return fft.rfft(f.values)


def _synthesize(f: Field, spectrum: np.ndarray) -> Field:
    return Field(f.grid, fft.irfft(spectrum, n=f.grid.n_points))


def fourier_multiplier(f: Field, symbol: np.ndarray) -> Field:
    """Mnoży mody pola przez symbol (tablica długości n/2 + 1)."""
    return _synthesize(f, _spectrum(f) * symbol)


def derivative(f: Field, order: int = 1) -> Field:
    """
    Pochodna spektralna rzędu order.

    Mod Nyquista pochodnych nieparzystego rzędu jest zerowany, więc wynik jest rzeczywisty.

    Args:
        f: Pole wejściowe
        order: Rząd pochodnej (>= 1)

    Returns:
        Pole d^order f / dx^order
    """
    if order < 1:
        raise ValueError(f"Rząd pochodnej musi być >= 1, jest {order}")
    symbol = (1j * f.grid.wavenumbers) ** order
    if order % 2:
        symbol[-1] = 0.0
    return fourier_multiplier(f, symbol)


def antiderivative(f: Field) -> Field:
    """Funkcja pierwotna o zerowej średniej; mod zerowy f jest pomijany."""
    k = f.grid.wavenumbers
    symbol = np.zeros_like(k, dtype=complex)
    symbol[1:-1] = 1.0 / (1j * k[1:-1])
    return fourier_multiplier(f, symbol)


def helmholtz_symbol(f: Field, a: float) -> np.ndarray:
    """Symbol 1 + a k^2 operatora (1 - a dx^2)."""
    return 1.0 + a * f.grid.wavenumbers ** 2


def helmholtz_inverse(f: Field, a: float) -> Field:
    """
    Rozwiązuje (1 - a dx^2) u = f dzieląc mody przez 1 + a k^2.

    Args:
        f: Prawa strona
        a: Współczynnik (dla a < 0 wymagane a > -1/k_max^2)

    Returns:
        Pole u

    Raises:
        SingularMultiplierError: gdy 1 + a k^2 <= 0 dla pewnego modu
    """
    if a == 0.0:
        return f
    symbol = helmholtz_symbol(f, a)
    if np.any(symbol <= 0.0):
        raise SingularMultiplierError(f"Mnożnik 1 + a k^2 niedodatni dla a = {a}")
    return fourier_multiplier(f, 1.0 / symbol)


def helmholtz_apply(f: Field, a: float) -> Field:
    """Stosuje (1 - a dx^2) w przód."""
    if a == 0.0:
        return f
    return fourier_multiplier(f, helmholtz_symbol(f, a))


def spectral_tail(f: Field, fraction: float = 1.0 / 3.0) -> float:
    """Największy moduł współczynnika w górnej części widma względem największego ogólnie."""
    magnitudes = np.abs(_spectrum(f))
    peak = magnitudes.max()
    if peak == 0.0:
        return 0.0
    start = int(np.ceil(len(magnitudes) * (1.0 - fraction)))
    return float(magnitudes[start:].max() / peak)


__all__ = [
    "derivative",
    "antiderivative",
    "helmholtz_inverse",
    "helmholtz_apply",
    "helmholtz_symbol",
    "fourier_multiplier",
    "spectral_tail",
    "dealias_filter",
]
