"""Ogólne równanie skalarne: iB, KdV/BBM, eKdV, mKdV i Constantin–Lannes."""

import logging

import numpy as np

from core.models import Frame, ModelName, RegimeParams, ScalarCoeffs, ScalarModelKind
from core.params.coefficients import coeffs_for_model, decoupled_coeffs, masked_coeffs
from core.spectral.grid import Field, Grid
from core.spectral.norms import scaled_energy
from core.spectral.operators import derivative, helmholtz_inverse

logger = logging.getLogger(__name__)


def scalar_coeffs(kind: ScalarModelKind, p: RegimeParams, direction: int = 1) -> ScalarCoeffs:
    """Współczynniki rodziny rozprzężonej z maską danego modelu."""
    return masked_coeffs(decoupled_coeffs(p, direction), kind)


def scalar_flux(u: Field, c: ScalarCoeffs, p: RegimeParams) -> Field:
    """
    Strumień F taki, że człony nawiasu równania to dF/dx.

    Człony u^k u_x zapisane są jako d(u^(k+1))/(k+1) dx, więc całka z u jest zachowana.
    """
    eps, mu = p.epsilon, p.mu
    flux = Field.zeros(u.grid)
    if c.alpha1:
        flux = flux + (0.5 * eps * c.alpha1) * u ** 2
    if c.alpha2:
        flux = flux + (eps ** 2 * c.alpha2 / 3.0) * u ** 3
    if c.alpha3:
        flux = flux + (eps ** 3 * c.alpha3 / 4.0) * u ** 4
    if c.nu or c.kappa1 or c.kappa2:
        u_xx = derivative(u, 2)
        if c.nu:
            flux = flux + (mu * c.nu) * u_xx
        if c.kappa1 or c.kappa2:
            u_x = derivative(u, 1)
            flux = flux + (mu * eps) * (c.kappa1 * u * u_xx + c.kappa2 * u_x * u_x)
    return flux


def scalar_rhs(u: Field, c: ScalarCoeffs, p: RegimeParams, frame: Frame = Frame.LAB) -> Field:
    """
    Prawa strona du/dt równania skalarnego.

    du/dt = -(1 - mu beta dx^2)^(-1) [ d * dx(F(u)) ] z d = kierunek; w układzie LAB
    dochodzi transport -d u_x poza odwrotnością, w LAB_SMOOTHED pod nią.

    Args:
        u: Pole
        c: Współczynniki z kierunkiem
        p: Parametry reżimu
        frame: Układ odniesienia

    Returns:
        Pole du/dt
    """
    u.require_finite("u")
    bracket = scalar_flux(u, c, p)
    if frame is Frame.LAB_SMOOTHED:
        bracket = bracket + u
    tendency = -c.direction * helmholtz_inverse(derivative(bracket, 1), p.mu * c.beta)
    if frame is Frame.LAB:
        tendency = tendency - c.direction * derivative(u, 1)
    return tendency.require_finite("du/dt")


def scalar_energy(u: Field, s: float, c: ScalarCoeffs, p: RegimeParams) -> float:
    """Energia E^s(u) = (|u|_{H^s}^2 + mu beta |u|_{H^{s+1}}^2)^(1/2)."""
    return scaled_energy(u, s, p.mu * c.beta)


def bbm_invariant(u: Field, c: ScalarCoeffs, p: RegimeParams) -> float:
    """Całka z u^2 + mu beta u_x^2."""
    u_x = derivative(u, 1)
    return (u * u + (p.mu * c.beta) * u_x * u_x).integral()


class ScalarSystem:
    """Jedno równanie skalarne na tablicy (n,) dla integratora."""

    def __init__(self, grid: Grid, c: ScalarCoeffs, p: RegimeParams, frame: Frame = Frame.LAB):
        self.grid = grid
        self.coeffs = c
        self.p = p
        self.frame = frame
        if c.beta == 0.0 and c.nu != 0.0:
            logger.warning("beta = 0 przy nu != 0: sztywność rośnie jak mu k^3")

    @classmethod
    def for_model(cls, grid: Grid, model: ModelName, p: RegimeParams, direction: int = 1,
                  frame: Frame = Frame.LAB) -> "ScalarSystem":
        return cls(grid, coeffs_for_model(model, p, direction), p, frame)

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        return scalar_rhs(Field(self.grid, y), self.coeffs, self.p, self.frame).values
