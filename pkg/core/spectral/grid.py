"""Siatka periodyczna i pole próbkowane na niej."""

from dataclasses import dataclass
from functools import cached_property
from typing import Callable
import math

import numpy as np
from scipy import fft

from config.settings import GRID_CONFIG
from core.errors import ConfigError, GridMismatchError, NonFiniteError


@dataclass(frozen=True)
class Grid:
    """Równomierna siatka na [-L/2, L/2) z warunkami periodycznymi."""
    n_points: int
    length: float
    dealias: bool = False

    def __post_init__(self):
        if self.n_points < GRID_CONFIG["min_points"] or self.n_points % 2:
            raise ConfigError(
                f"Liczba punktów musi być parzysta i >= {GRID_CONFIG['min_points']}, jest {self.n_points}"
            )
        if not self.length > 0:
            raise ConfigError(f"Długość domeny musi być dodatnia, jest {self.length}")

    @classmethod
    def for_horizon(
        cls,
        t_final: float,
        dx: float | None = None,
        margin: float | None = None,
        granularity: int | None = None,
        dealias: bool = False,
    ) -> "Grid":
        """
        Dobiera domenę tak, by fale przeciwbieżne nie zawinęły się do chwili t_final.

        Args:
            t_final: Horyzont czasowy
            dx: Krok przestrzenny (default: 0.2)
            margin: Półszerokość nośnika danych (default: 20)
            granularity: n zaokrąglane w górę do wielokrotności tej liczby

        Returns:
            Grid o długości >= 2 * (t_final + margin)
        """
        dx = dx or GRID_CONFIG["dx"]
        margin = GRID_CONFIG["support_margin"] if margin is None else margin
        granularity = granularity or GRID_CONFIG["size_granularity"]
        needed = 2.0 * (t_final + margin) / dx
        n = granularity * math.ceil(needed / granularity - 1e-12)
        return cls(n_points=max(n, GRID_CONFIG["min_points"]), length=n * dx, dealias=dealias)

    @property
    def dx(self) -> float:
        """Krok siatki."""
        return self.length / self.n_points

    @cached_property
    def x(self) -> np.ndarray:
        """Węzły x_j = -L/2 + j*dx."""
        return -0.5 * self.length + self.dx * np.arange(self.n_points)

    @property
    def center(self) -> float:
        """Środek domeny."""
        return 0.0

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Liczby falowe 2*pi*m/L dla m = 0..n/2 (transformata rzeczywista)."""
        return 2.0 * np.pi * fft.rfftfreq(self.n_points, d=self.dx)

    @property
    def k_max(self) -> float:
        """Największa rozdzielona liczba falowa (Nyquist)."""
        return np.pi / self.dx


def dealias_filter(values: np.ndarray) -> np.ndarray:
    """Reguła 2/3: zeruje mody |m| > n/3."""
    spectrum = fft.rfft(values)
    cutoff = len(values) // 3
    spectrum[cutoff + 1:] = 0.0
    return fft.irfft(spectrum, n=len(values))


@dataclass(frozen=True, eq=False)
class Field:
    """Rzeczywista funkcja próbkowana na siatce; operacje zwracają nowe pola."""
    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.n_points,):
            raise GridMismatchError(
                f"Oczekiwano {self.grid.n_points} próbek, otrzymano kształt {values.shape}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, grid: Grid, fn: Callable[[np.ndarray], np.ndarray]) -> "Field":
        """Próbkuje fn w węzłach siatki."""
        return cls(grid, fn(grid.x))

    @classmethod
    def zeros(cls, grid: Grid) -> "Field":
        return cls(grid, np.zeros(grid.n_points))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "Field":
        return cls(grid, np.full(grid.n_points, float(value)))

    # Arytmetyka

    def _operand(self, other) -> np.ndarray | float:
        if isinstance(other, Field):
            if other.grid != self.grid:
                raise GridMismatchError("Pola na różnych siatkach")
            return other.values
        return other

    def _product(self, values: np.ndarray, is_field_product: bool) -> "Field":
        if is_field_product and self.grid.dealias:
            values = dealias_filter(values)
        return Field(self.grid, values)

    def __add__(self, other) -> "Field":
        return Field(self.grid, self.values + self._operand(other))

    __radd__ = __add__

    def __sub__(self, other) -> "Field":
        return Field(self.grid, self.values - self._operand(other))

    def __rsub__(self, other) -> "Field":
        return Field(self.grid, self._operand(other) - self.values)

    def __mul__(self, other) -> "Field":
        return self._product(self.values * self._operand(other), isinstance(other, Field))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Field":
        return Field(self.grid, self.values / self._operand(other))

    def __rtruediv__(self, other) -> "Field":
        return Field(self.grid, self._operand(other) / self.values)

    def __pow__(self, power: int) -> "Field":
        return self._product(self.values ** power, power > 1)

    def __neg__(self) -> "Field":
        return Field(self.grid, -self.values)

    # Diagnostyka

    @property
    def is_finite(self) -> bool:
        """Czy wszystkie próbki są skończone."""
        return bool(np.all(np.isfinite(self.values)))

    def require_finite(self, name: str = "pole") -> "Field":
        """Zwraca self lub zgłasza NonFiniteError."""
        if not self.is_finite:
            raise NonFiniteError(f"{name}: wartości NaN lub nieskończone")
        return self

    def integral(self) -> float:
        """Całka po okresie (kwadratura trapezów = suma * dx)."""
        return float(np.sum(self.values) * self.grid.dx)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def shift(self, cells: int) -> "Field":
        """Przesunięcie o całkowitą liczbę komórek."""
        return Field(self.grid, np.roll(self.values, cells))

    def mirror(self) -> "Field":
        """Odbicie x -> -x (węzeł j przechodzi w n - j)."""
        return Field(self.grid, np.roll(self.values[::-1], 1))
