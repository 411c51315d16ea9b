"""Liniowe relacje dyspersyjne modeli."""

from dataclasses import dataclass

import numpy as np

from core.models import RegimeParams, ScalarCoeffs, Frame, ModelName
from core.params.coefficients import coeffs_for_model


@dataclass(frozen=True)
class ShearMode:
    """Mod liniowy układu z prędkością ścinania: omega^2 = k^2 - mu C k^4."""
    omega_squared: float
    unstable: bool

    @property
    def omega(self) -> float | None:
        """Rzeczywista częstość lub None dla modu niestabilnego."""
        return None if self.unstable else float(np.sqrt(self.omega_squared))


def gn_dispersion_constant(p: RegimeParams) -> float:
    """C = (1 + gamma delta) / (3 delta (gamma + delta))."""
    return (1.0 + p.gamma * p.delta) / (3.0 * p.delta * p.depth_sum)


def dispersion_omega(k, p: RegimeParams):
    """
    Częstość omega(k) = k / sqrt(1 + mu C k^2) zlinearyzowanego układu GN.

    Args:
        k: Liczba falowa (skalar lub tablica)
        p: Parametry reżimu

    Returns:
        Dodatnia gałąź omega
    """
    k = np.asarray(k, dtype=float)
    omega = k / np.sqrt(1.0 + p.mu * gn_dispersion_constant(p) * k ** 2)
    return float(omega) if omega.ndim == 0 else omega


def gn_group_speed(k, p: RegimeParams):
    """omega'(k) = (1 + mu C k^2)^(-3/2) <= 1."""
    k = np.asarray(k, dtype=float)
    return (1.0 + p.mu * gn_dispersion_constant(p) * k ** 2) ** -1.5


def shear_system_stability(k: float, p: RegimeParams) -> ShearMode:
    """Klasyfikuje mod k układu z prędkością ścinania (liniowo źle postawionego)."""
    omega_squared = k ** 2 - p.mu * k ** 4 * gn_dispersion_constant(p)
    return ShearMode(omega_squared=float(omega_squared), unstable=bool(omega_squared < 0.0))


def shear_threshold(p: RegimeParams) -> float:
    """Liczba falowa 1/sqrt(mu C), powyżej której mody rosną wykładniczo."""
    if p.mu == 0.0:
        return float("inf")
    return float(1.0 / np.sqrt(p.mu * gn_dispersion_constant(p)))


def scalar_omega(k, c: ScalarCoeffs, p: RegimeParams, frame: Frame = Frame.LAB):
    """Częstość zlinearyzowanego równania skalarnego (ze znakiem kierunku)."""
    k = np.asarray(k, dtype=float)
    smoothing = 1.0 + p.mu * c.beta * k ** 2
    dispersive = p.mu * c.nu * k ** 3
    if frame is Frame.COMOVING:
        omega = -dispersive / smoothing
    elif frame is Frame.LAB:
        omega = k - dispersive / smoothing
    else:
        omega = (k - dispersive) / smoothing
    return c.direction * omega


def scalar_group_speed(k, c: ScalarCoeffs, p: RegimeParams, frame: Frame = Frame.LAB):
    """Analityczna pochodna d omega / dk."""
    k = np.asarray(k, dtype=float)
    mb, mn = p.mu * c.beta, p.mu * c.nu
    smoothing = 1.0 + mb * k ** 2
    if frame is Frame.LAB_SMOOTHED:
        speed = ((1.0 - 3.0 * mn * k ** 2) * smoothing - (k - mn * k ** 3) * 2.0 * mb * k) / smoothing ** 2
    else:
        speed = -mn * k ** 2 * (3.0 + mb * k ** 2) / smoothing ** 2
        if frame is Frame.LAB:
            speed = 1.0 + speed
    return c.direction * speed


def nonlinear_speed_margin(c: ScalarCoeffs, p: RegimeParams, amplitude: float) -> float:
    """Górne oszacowanie prędkości charakterystyk członów nieliniowych."""
    a = abs(amplitude)
    return (
        p.epsilon * abs(c.alpha1) * a
        + p.epsilon ** 2 * abs(c.alpha2) * a ** 2
        + p.epsilon ** 3 * abs(c.alpha3) * a ** 3
    )


def model_frame(model: ModelName) -> Frame:
    """Układ odniesienia, w którym harness całkuje dany model."""
    return Frame.LAB_SMOOTHED if model is ModelName.UNIDIRECTIONAL else Frame.LAB


def max_group_speed(k: np.ndarray, p: RegimeParams, model: ModelName, amplitude: float = 1.0) -> float:
    """Największa prędkość grupowa modelu na rozdzielonych liczbach falowych."""
    if model is ModelName.GN:
        return float(np.max(np.abs(gn_group_speed(k, p))))
    c = coeffs_for_model(model, p)
    linear = np.max(np.abs(scalar_group_speed(k, c, p, model_frame(model))))
    return float(linear + nonlinear_speed_margin(c, p, amplitude))


def max_frequency(k: np.ndarray, p: RegimeParams, model: ModelName, amplitude: float = 1.0) -> float:
    """Oszacowanie promienia spektralnego półdyskretnego RHS."""
    if model is ModelName.GN:
        return float(np.max(np.abs(dispersion_omega(k, p))))
    c = coeffs_for_model(model, p)
    linear = np.max(np.abs(scalar_omega(k, c, p, model_frame(model))))
    return float(linear + nonlinear_speed_margin(c, p, amplitude) * np.max(np.abs(k)))
