"""
Przybliżenia zbudowane z równań skalarnych: rozkład na fale rozprzężone,
korektor sprzężenia i suma słabo sprzężona.
"""

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from core.errors import GridMismatchError, NonFiniteError, TimeMismatchError
from core.models import BaseCoeffs, Frame, ModelName, RegimeParams
from core.params.coefficients import base_coeffs, coeffs_for_model
from core.physics.scalar_models import scalar_rhs
from core.spectral.grid import Field, Grid
from core.spectral.operators import derivative, helmholtz_apply, helmholtz_inverse
from core.timeint.integrators import rk4_step

Forcing = Union[tuple[Field, Field], Callable[[float], tuple[Field, Field]]]


@dataclass
class DecoupledState:
    """Niewiadome v_+^lambda, v_-^lambda równań rozprzężonych."""
    v_plus_lambda: Field
    v_minus_lambda: Field
    time: float = 0.0


@dataclass
class CorrectorState:
    """w_+- = sigma * u^c_+-; w(0) = 0."""
    w_plus: Field
    w_minus: Field
    time: float = 0.0

    @classmethod
    def zeros(cls, grid: Grid, time: float = 0.0) -> "CorrectorState":
        return cls(Field.zeros(grid), Field.zeros(grid), time)


def _same_grid(*fields: Field) -> None:
    grid = fields[0].grid
    if any(f.grid != grid for f in fields[1:]):
        raise GridMismatchError("Pola na różnych siatkach")


def split_initial(zeta0: Field, v0: Field, p: RegimeParams) -> DecoupledState:
    """
    Dane początkowe fal: v_+-^lambda = (1 +- mu lambda dx^2)(1/2)(zeta0 +- v0/(gamma+delta)).

    Args:
        zeta0: Deformacja interfejsu w t = 0
        v0: Prędkość ścinania w t = 0
        p: Parametry reżimu

    Returns:
        DecoupledState w chwili 0
    """
    _same_grid(zeta0, v0)
    scaled = v0 / p.depth_sum
    v_plus = 0.5 * (zeta0 + scaled)
    v_minus = 0.5 * (zeta0 - scaled)
    shift = p.mu * p.lam
    return DecoupledState(
        v_plus_lambda=helmholtz_apply(v_plus, -shift),
        v_minus_lambda=helmholtz_apply(v_minus, shift),
    )


def physical_waves(d: DecoupledState, p: RegimeParams) -> tuple[Field, Field]:
    """v_+- = (1 +- mu lambda dx^2)^(-1) v_+-^lambda."""
    shift = p.mu * p.lam
    return (
        helmholtz_inverse(d.v_plus_lambda, -shift),
        helmholtz_inverse(d.v_minus_lambda, shift),
    )


def reconstruct_state(d: DecoupledState, p: RegimeParams) -> tuple[Field, Field]:
    """(zeta, v̄) = (v_+ + v_-, (gamma+delta)(v_+ - v_-))."""
    v_plus, v_minus = physical_waves(d, p)
    return v_plus + v_minus, p.depth_sum * (v_plus - v_minus)


@dataclass(frozen=True)
class _Derivatives:
    u: Field
    u1: Field
    u2: Field
    u3: Field

    @classmethod
    def of(cls, u: Field) -> "_Derivatives":
        return cls(u, derivative(u, 1), derivative(u, 2), derivative(u, 3))


def _bracket_time_derivative(l: _Derivatives, r: _Derivatives, b: BaseCoeffs) -> Field:
    # d/dt [k1(ul ul'' - ur ur'') + k2(ur ul'' - ul ur'') + (k1 + k2/2)(ul'^2 - ur'^2)]
    # przy d/dt ul = -ul', d/dt ur = ur'
    self_terms = (-1.0 * l.u1 * l.u2 - l.u * l.u3) - (r.u1 * r.u2 + r.u * r.u3)
    cross_terms = (r.u1 * l.u2 - r.u * l.u3) - (-1.0 * l.u1 * r.u2 + l.u * r.u3)
    slopes = -2.0 * (l.u1 * l.u2 + r.u1 * r.u2)
    return b.kappa1 * self_terms + b.kappa2 * cross_terms + (b.kappa1 + 0.5 * b.kappa2) * slopes


def _f_left(l: _Derivatives, r: _Derivatives, p: RegimeParams, b: BaseCoeffs) -> Field:
    eps, mu = p.epsilon, p.mu
    diff, total = l.u - r.u, l.u + r.u
    flux = (
        (0.5 * eps * b.alpha1) * ((l.u + r.u / 3.0) * diff)
        + (eps ** 2 * b.alpha2 / 3.0) * (diff * l.u * total)
        + (eps ** 3 * b.alpha3 / 4.0) * ((l.u - r.u / 5.0) * diff * total * total)
        + (mu * eps * b.kappa3) * (diff * (l.u2 - r.u2) / 3.0 + 0.5 * (l.u1 - r.u1) ** 2)
    )
    return (
        derivative(flux, 1)
        + (mu * b.nu) * (l.u3 + r.u3)
        - (mu * eps) * _bracket_time_derivative(l, r, b)
    )


def _f_right(l: _Derivatives, r: _Derivatives, p: RegimeParams, b: BaseCoeffs) -> Field:
    eps, mu = p.epsilon, p.mu
    diff, total = r.u - l.u, l.u + r.u
    flux = (
        (0.5 * eps * b.alpha1) * ((l.u / 3.0 + r.u) * diff)
        + (eps ** 2 * b.alpha2 / 3.0) * (diff * r.u * total)
        + (eps ** 3 * b.alpha3 / 4.0) * ((r.u - l.u / 5.0) * diff * total * total)
        + (mu * eps * b.kappa3) * (diff * (r.u2 - l.u2) / 3.0 + 0.5 * (r.u1 - l.u1) ** 2)
    )
    # nawias f_r jest przeciwny do nawiasu f_l
    return (
        -derivative(flux, 1)
        - (mu * b.nu) * (r.u3 + l.u3)
        + (mu * eps) * _bracket_time_derivative(l, r, b)
    )


def f_left(v_plus: Field, v_minus: Field, p: RegimeParams, b: BaseCoeffs | None = None) -> Field:
    """Nieliniowo-dyspersyjna część równania fali v_+ w układzie sprzężonym."""
    b = b or base_coeffs(p)
    return _f_left(_Derivatives.of(v_plus), _Derivatives.of(v_minus), p, b)


def f_right(v_plus: Field, v_minus: Field, p: RegimeParams, b: BaseCoeffs | None = None) -> Field:
    """Nieliniowo-dyspersyjna część równania fali v_- w układzie sprzężonym."""
    b = b or base_coeffs(p)
    return _f_right(_Derivatives.of(v_plus), _Derivatives.of(v_minus), p, b)


def coupling_forcing(
    v_plus: Field,
    v_minus: Field,
    p: RegimeParams,
    b: BaseCoeffs | None = None,
) -> tuple[Field, Field]:
    """
    Wymuszenie korektora: różnice f_l, f_r między falami sprzężonymi i osobnymi.

    Args:
        v_plus: Fala biegnąca w prawo
        v_minus: Fala biegnąca w lewo
        p: Parametry reżimu
        b: Stałe układu sprzężonego (default: base_coeffs(p))

    Returns:
        (F_+, F_-) z F_+ = -[f_l(v_+, v_-) - f_l(v_+, 0)], F_- = -[f_r(v_+, v_-) - f_r(0, v_-)]
    """
    _same_grid(v_plus, v_minus)
    b = b or base_coeffs(p)
    plus, minus = _Derivatives.of(v_plus), _Derivatives.of(v_minus)
    silent = _Derivatives.of(Field.zeros(v_plus.grid))
    forcing_plus = -(_f_left(plus, minus, p, b) - _f_left(plus, silent, p, b))
    forcing_minus = -(_f_right(plus, minus, p, b) - _f_right(silent, minus, p, b))
    return forcing_plus, forcing_minus


def _corrector_tendency(w: np.ndarray, forcing: tuple[Field, Field], grid: Grid) -> np.ndarray:
    w_plus, w_minus = Field(grid, w[0]), Field(grid, w[1])
    return np.stack([
        (forcing[0] - derivative(w_plus, 1)).values,
        (forcing[1] + derivative(w_minus, 1)).values,
    ])


def step_corrector(c: CorrectorState, forcing: Forcing, dt: float) -> CorrectorState:
    """
    Jeden krok RK4 dla (d_t +- d_x) w_+- = F_+-.

    Args:
        c: Stan korektora
        forcing: Para pól (stała w czasie) lub funkcja t -> (F_+, F_-)
        dt: Krok czasowy

    Returns:
        CorrectorState w chwili c.time + dt
    """
    grid = c.w_plus.grid
    source = forcing if callable(forcing) else (lambda t: forcing)

    def rhs(t: float, w: np.ndarray) -> np.ndarray:
        pair = source(t)
        _same_grid(c.w_plus, *pair)
        if not (pair[0].is_finite and pair[1].is_finite):
            raise NonFiniteError("Wymuszenie korektora zawiera NaN")
        return _corrector_tendency(w, pair, grid)

    y = rk4_step(rhs, c.time, np.stack([c.w_plus.values, c.w_minus.values]), dt)
    return CorrectorState(Field(grid, y[0]), Field(grid, y[1]), c.time + dt)


def weakly_coupled_state(d: DecoupledState, c: CorrectorState, p: RegimeParams) -> tuple[Field, Field]:
    """Stan rozprzężony plus (w_+ + w_-, (gamma+delta)(w_+ - w_-))."""
    if abs(d.time - c.time) > 1e-12 * max(1.0, abs(d.time)):
        raise TimeMismatchError(f"Stan rozprzężony t = {d.time}, korektor t = {c.time}")
    zeta, vbar = reconstruct_state(d, p)
    return zeta + c.w_plus + c.w_minus, vbar + p.depth_sum * (c.w_plus - c.w_minus)


class DecoupledSystem:
    """Para niezależnych równań skalarnych dla v_+^lambda i v_-^lambda (tablica (2, n))."""

    def __init__(self, grid: Grid, model: ModelName, p: RegimeParams, frame: Frame = Frame.LAB):
        self.grid = grid
        self.p = p
        self.frame = frame
        self.right = coeffs_for_model(model, p, +1)
        self.left = coeffs_for_model(model, p, -1)

    def initial_vector(self, zeta0: Field, vbar0: Field) -> np.ndarray:
        d = split_initial(zeta0, vbar0, self.p)
        return np.stack([d.v_plus_lambda.values, d.v_minus_lambda.values])

    def state(self, y: np.ndarray, time: float = 0.0) -> DecoupledState:
        return DecoupledState(Field(self.grid, y[0]), Field(self.grid, y[1]), time)

    def observe(self, y: np.ndarray, time: float = 0.0) -> tuple[Field, Field]:
        """(zeta, v̄) odpowiadające stanowi."""
        return reconstruct_state(self.state(y, time), self.p)

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        return np.stack([
            scalar_rhs(Field(self.grid, y[0]), self.right, self.p, self.frame).values,
            scalar_rhs(Field(self.grid, y[1]), self.left, self.p, self.frame).values,
        ])


class WeaklyCoupledSystem(DecoupledSystem):
    """Fale CL rozprzężone z korektorem sprzężenia (tablica (4, n))."""

    def __init__(self, grid: Grid, p: RegimeParams):
        super().__init__(grid, ModelName.CL, p, Frame.LAB)
        self.base = base_coeffs(p)

    def initial_vector(self, zeta0: Field, vbar0: Field) -> np.ndarray:
        waves = super().initial_vector(zeta0, vbar0)
        return np.concatenate([waves, np.zeros_like(waves)])

    def observe(self, y: np.ndarray, time: float = 0.0) -> tuple[Field, Field]:
        corrector = CorrectorState(Field(self.grid, y[2]), Field(self.grid, y[3]), time)
        return weakly_coupled_state(self.state(y[:2], time), corrector, self.p)

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        waves = super().rhs(t, y[:2])
        v_plus, v_minus = physical_waves(self.state(y[:2], t), self.p)
        forcing = coupling_forcing(v_plus, v_minus, self.p, self.base)
        return np.concatenate([waves, _corrector_tendency(y[2:], forcing, self.grid)])
