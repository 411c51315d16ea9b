"""
Schematy o stałym kroku: predyktor-korektor Adamsa–Bashfortha–Moultona (PECE)
z rozbiegiem RK4 oraz klasyczny RK4.
"""

from collections import deque
from typing import Callable, Iterable
import logging
import math

import numpy as np

from config.settings import INTEGRATOR_CONFIG
from core.errors import BlowUpError, ConfigError, NonFiniteError
from core.models import IntegratorConfig, IntegratorMethod, ModelName, RegimeParams, Trajectory
from core.params.dispersion import max_group_speed
from core.spectral.grid import Grid

logger = logging.getLogger(__name__)

Rhs = Callable[[float, np.ndarray], np.ndarray]


def rk4_step(rhs: Rhs, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """Jeden krok klasycznej metody Rungego–Kutty rzędu 4."""
    k1 = rhs(t, y)
    k2 = rhs(t + 0.5 * dt, y + 0.5 * dt * k1)
    k3 = rhs(t + 0.5 * dt, y + 0.5 * dt * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class RungeKutta4:
    """Krokownik RK4 z interfejsem zgodnym z AdamsBashforthMoulton4."""

    def __init__(self, rhs: Rhs):
        self.rhs = rhs
        self.dt: float | None = None

    def set_dt(self, dt: float) -> None:
        self.dt = dt

    def reset(self) -> None:
        pass

    def step(self, t: float, y: np.ndarray) -> np.ndarray:
        return rk4_step(self.rhs, t, y, self.dt)


class AdamsBashforthMoulton4:
    """
    Predyktor AB4, jedna ewaluacja RHS, korektor AM4, ewaluacja (PECE).

    Pierwsze trzy kroki po każdym restarcie historii wykonuje RK4.
    """

    def __init__(self, rhs: Rhs):
        self.rhs = rhs
        self.dt: float | None = None
        self.history: deque[np.ndarray] = deque(maxlen=4)  # f_n, f_{n-1}, f_{n-2}, f_{n-3}

    def set_dt(self, dt: float) -> None:
        """Zmiana kroku unieważnia historię."""
        if self.dt is None or abs(dt - self.dt) > 1e-12 * dt:
            self.reset()
        self.dt = dt

    def reset(self) -> None:
        self.history.clear()

    def step(self, t: float, y: np.ndarray) -> np.ndarray:
        dt = self.dt
        if not self.history:
            self.history.appendleft(self.rhs(t, y))
        if len(self.history) < 4:
            y_new = rk4_step(self.rhs, t, y, dt)
        else:
            f0, f1, f2, f3 = self.history
            predicted = y + dt / 24.0 * (55.0 * f0 - 59.0 * f1 + 37.0 * f2 - 9.0 * f3)
            f_predicted = self.rhs(t + dt, predicted)
            y_new = y + dt / 24.0 * (9.0 * f_predicted + 19.0 * f0 - 5.0 * f1 + f2)
        self.history.appendleft(self.rhs(t + dt, y_new))
        return y_new


def _make_stepper(method: IntegratorMethod, rhs: Rhs):
    if method is IntegratorMethod.RK4:
        return RungeKutta4(rhs)
    return AdamsBashforthMoulton4(rhs)


def _check_stability(cfg: IntegratorConfig) -> None:
    if cfg.max_frequency is None:
        return
    limit = INTEGRATOR_CONFIG["stability_limits"][cfg.method.value]
    product = cfg.dt * cfg.max_frequency
    if product > limit:
        raise ConfigError(
            f"Krok dt = {cfg.dt:.4g} odrzucony: dt * omega_max = {product:.3f} > {limit} ({cfg.method.value})"
        )


def _sample_schedule(sample_times: Iterable[float] | None, t_end: float) -> np.ndarray:
    times = np.array(sorted(set(float(t) for t in (sample_times if sample_times is not None else [t_end]))))
    if times.size and (times[0] < 0.0 or times[-1] > t_end * (1.0 + 1e-12) + 1e-12):
        raise ConfigError(f"Chwile próbkowania poza [0, {t_end}]")
    return times


def integrate(
    rhs: Rhs,
    y0: np.ndarray,
    cfg: IntegratorConfig,
    sample_times: Iterable[float] | None = None,
) -> Trajectory:
    """
    Całkuje y' = rhs(t, y) od 0 do cfg.t_end.

    Przedział dzielony jest w chwilach próbkowania; w każdym odcinku krok to
    największa wartość <= cfg.dt dzieląca odcinek, więc próbki wypadają
    dokładnie na granicach kroków.

    Args:
        rhs: Prawa strona f(t, y)
        y0: Stan początkowy
        cfg: Konfiguracja całkowania
        sample_times: Chwile próbkowania (default: tylko t_end)

    Returns:
        Trajectory ze stanami w chwilach próbkowania

    Raises:
        BlowUpError: gdy norma maksimum przekroczy próg lub pojawią się NaN
        ConfigError: gdy dt nie spełnia heurystyki stabilności
    """
    _check_stability(cfg)
    schedule = _sample_schedule(sample_times, cfg.t_end)
    stepper = _make_stepper(cfg.method, rhs)
    tol = INTEGRATOR_CONFIG["sample_tol"]

    y = np.array(y0, dtype=float, copy=True)
    t = 0.0
    states: list[np.ndarray] = []
    recorded: list[float] = []
    steps = 0

    def abort(time: float) -> BlowUpError:
        partial = Trajectory(np.array(recorded), np.array(states), steps)
        logger.warning("Blow-up w chwili t = %.6g po %d krokach", time, steps)
        return BlowUpError(time, partial)

    for target in schedule:
        span = target - t
        if span > tol * max(1.0, target):
            n_steps = math.ceil(span / cfg.dt - 1e-9)
            h = span / n_steps
            stepper.set_dt(h)
            start = t
            for i in range(n_steps):
                t_i = start + i * h
                try:
                    y = stepper.step(t_i, y)
                except NonFiniteError:
                    raise abort(t_i + h)
                steps += 1
                peak = np.max(np.abs(y))
                if not np.isfinite(peak) or peak > cfg.blowup_threshold:
                    raise abort(t_i + h)
        t = float(target)
        recorded.append(t)
        states.append(y.copy())

    logger.debug("Całkowanie zakończone: %d kroków, metoda %s", steps, cfg.method.value)
    return Trajectory(np.array(recorded), np.array(states), steps)


def pick_dt(
    grid: Grid,
    p: RegimeParams,
    model: ModelName,
    cfl: float | None = None,
    amplitude: float = 1.0,
) -> float:
    """
    Krok czasowy dt = cfl * dx / c_max.

    Args:
        grid: Siatka
        p: Parametry reżimu
        model: Model, którego relacja dyspersyjna wyznacza c_max
        cfl: Liczba CFL (default: 0.5)
        amplitude: Amplituda danych do marginesu nieliniowego

    Returns:
        dt
    """
    cfl = INTEGRATOR_CONFIG["cfl"] if cfl is None else cfl
    c_max = max_group_speed(grid.wavenumbers, p, model, amplitude)
    return cfl * grid.dx / max(c_max, 1e-12)


def step_halving_error(rhs: Rhs, y0: np.ndarray, cfg: IntegratorConfig) -> float:
    """Różnica w normie maksimum między przebiegami z krokiem dt i dt/2 w chwili t_end."""
    coarse = integrate(rhs, y0, cfg).states[-1]
    halved = IntegratorConfig(
        dt=cfg.dt / 2.0,
        t_end=cfg.t_end,
        method=cfg.method,
        blowup_threshold=cfg.blowup_threshold,
    )
    fine = integrate(rhs, y0, halved).states[-1]
    return float(np.max(np.abs(coarse - fine)))
