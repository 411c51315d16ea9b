"""Układ Greena–Naghdiego dla dwóch warstw w zmiennych (zeta, q)."""

from dataclasses import dataclass, field
import logging

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from config.settings import SOLVER_CONFIG
from core.errors import DepthError, EllipticSolveError, NonFiniteError
from core.models import RegimeParams
from core.params.dispersion import (
    dispersion_omega,
    gn_dispersion_constant,
    shear_system_stability,
)
from core.spectral.grid import Field, Grid, dealias_filter
from core.spectral.operators import derivative, helmholtz_inverse

logger = logging.getLogger(__name__)

__all__ = [
    "GnState",
    "EllipticSolver",
    "GreenNaghdiSystem",
    "depths",
    "qbar_apply",
    "rbar_apply",
    "recover_vbar",
    "gn_rhs",
    "gn_tendencies",
    "dispersion_omega",
    "shear_system_stability",
]


def _dx(grid: Grid, values: np.ndarray, order: int = 1) -> np.ndarray:
    return derivative(Field(grid, values), order).values


def depths(zeta: Field, p: RegimeParams, h_min: float | None = None) -> tuple[Field, Field]:
    """
    Głębokości warstw h1 = 1 - eps*zeta, h2 = 1/delta + eps*zeta.

    Raises:
        DepthError: gdy którakolwiek głębokość spadnie poniżej h_min
        NonFiniteError: gdy zeta zawiera NaN
    """
    zeta.require_finite("zeta")
    h_min = SOLVER_CONFIG["h_min"] if h_min is None else h_min
    h1 = 1.0 - p.epsilon * zeta
    h2 = 1.0 / p.delta + p.epsilon * zeta
    for name, h in (("h1", h1), ("h2", h2)):
        lowest = float(np.min(h.values))
        if lowest < h_min:
            raise DepthError(name, lowest, h_min)
    return h1, h2


def _qbar_values(grid: Grid, h1: np.ndarray, h2: np.ndarray, v: np.ndarray, gamma: float) -> np.ndarray:
    total = h1 + gamma * h2
    upper = _dx(grid, h2 ** 3 * _dx(grid, h1 * v / total))
    lower = _dx(grid, h1 ** 3 * _dx(grid, h2 * v / total))
    return -(h1 * upper + gamma * h2 * lower) / (3.0 * h1 * h2)


def _rbar_values(grid: Grid, h1: np.ndarray, h2: np.ndarray, v: np.ndarray, gamma: float) -> np.ndarray:
    total = h1 + gamma * h2
    grad_upper = _dx(grid, h1 * v / total)
    grad_lower = _dx(grid, h2 * v / total)
    quadratic = 0.5 * ((h2 * grad_upper) ** 2 - gamma * (h1 * grad_lower) ** 2)
    curvature = (h1 / h2) * _dx(grid, h2 ** 3 * grad_upper) - gamma * (h2 / h1) * _dx(grid, h1 ** 3 * grad_lower)
    return quadratic + v / (3.0 * total) * curvature


def qbar_apply(h1: Field, h2: Field, V: Field, p: RegimeParams) -> Field:
    """
    Operator Q[h1, h2] V.

    Args:
        h1, h2: Głębokości warstw (dodatnie)
        V: Pole prędkości
        p: Parametry reżimu

    Returns:
        -(1/(3 h1 h2)) [h1 d(h2^3 d(h1 V/H)) + gamma h2 d(h1^3 d(h2 V/H))], H = h1 + gamma h2
    """
    _require_positive(h1, h2)
    return Field(V.grid, _qbar_values(V.grid, h1.values, h2.values, V.values, p.gamma))


def rbar_apply(h1: Field, h2: Field, V: Field, p: RegimeParams) -> Field:
    """Operator R[h1, h2] V (część kwadratowa w gradientach plus człon krzywiznowy)."""
    _require_positive(h1, h2)
    return Field(V.grid, _rbar_values(V.grid, h1.values, h2.values, V.values, p.gamma))


def _require_positive(h1: Field, h2: Field) -> None:
    for name, h in (("h1", h1), ("h2", h2)):
        lowest = float(np.min(h.values))
        if not lowest > 0.0:
            raise DepthError(name, lowest, 0.0)


class EllipticSolver:
    """
    Rozwiązuje (I + mu Q) v = q metodą gradientów sprzężonych.

    Po pomnożeniu przez wagę w = h1 h2 / (h1 + gamma h2) operator jest symetryczny
    i dodatnio określony; prekondycjonerem jest symbol Fouriera dla zeta = 0.
    Ostatnie rozwiązanie służy jako punkt startowy kolejnego wywołania.
    """

    def __init__(self, config: dict | None = None):
        """
        Args:
            config: tol, max_iter, refinements, h_min (default: SOLVER_CONFIG)
        """
        config = {**SOLVER_CONFIG, **(config or {})}
        self.tol = config["tol"]
        self.max_iter = config["max_iter"]
        self.refinements = config["refinements"]
        self.h_min = config["h_min"]
        self.last_solution: np.ndarray | None = None
        self.total_iterations = 0
        self.calls = 0

    def solve(self, zeta: Field, q: Field, p: RegimeParams, tol: float | None = None) -> Field:
        """
        Odtwarza v̄ z q.

        Args:
            zeta: Deformacja interfejsu
            q: Zmienna ewoluowana q = v̄ + mu Q v̄
            p: Parametry reżimu
            tol: Względna tolerancja residuum w L2

        Returns:
            v̄ z |(I + mu Q) v̄ - q| <= tol |q|

        Raises:
            EllipticSolveError: brak zbieżności w limicie iteracji
        """
        tol = self.tol if tol is None else tol
        q.require_finite("q")
        if p.mu == 0.0:
            return q
        q_norm = float(np.linalg.norm(q.values))
        if q_norm == 0.0:
            return Field.zeros(q.grid)

        grid = q.grid
        n = grid.n_points
        h1, h2 = (h.values for h in depths(zeta, p, self.h_min))
        weight = h1 * h2 / (h1 + p.gamma * h2)

        def forward(v: np.ndarray) -> np.ndarray:
            return v + p.mu * _qbar_values(grid, h1, h2, v, p.gamma)

        def weighted(v: np.ndarray) -> np.ndarray:
            return weight * forward(v)

        def precondition(r: np.ndarray) -> np.ndarray:
            return p.depth_sum * helmholtz_inverse(Field(grid, r), p.mu * gn_dispersion_constant(p)).values

        operator = LinearOperator((n, n), matvec=weighted, dtype=float)
        preconditioner = LinearOperator((n, n), matvec=precondition, dtype=float)
        iterations = [0]

        def count(_):
            iterations[0] += 1

        rtol = tol * float(weight.min() / weight.max())
        v = self.last_solution if self.last_solution is not None and self.last_solution.shape == (n,) else None
        if v is None:
            v = helmholtz_inverse(q, p.mu * gn_dispersion_constant(p)).values
        residual = q.values - forward(v)
        relative = float(np.linalg.norm(residual)) / q_norm
        for _ in range(self.refinements + 1):
            if relative <= tol:
                break
            correction, info = cg(
                operator,
                weight * residual,
                rtol=rtol,
                atol=0.0,
                maxiter=self.max_iter,
                M=preconditioner,
                callback=count,
            )
            v = v + correction
            residual = q.values - forward(v)
            relative = float(np.linalg.norm(residual)) / q_norm
            if info > 0 and relative > tol:
                raise EllipticSolveError(
                    f"CG bez zbieżności po {self.max_iter} iteracjach (residuum {relative:.3e})", relative
                )
        if not relative <= tol:
            raise EllipticSolveError(f"Residuum {relative:.3e} powyżej tolerancji {tol:.1e}", relative)

        self.calls += 1
        self.total_iterations += iterations[0]
        self.last_solution = v
        return Field(grid, v)


def recover_vbar(zeta: Field, q: Field, p: RegimeParams, tol: float | None = None) -> Field:
    """Jednorazowe rozwiązanie (I + mu Q) v̄ = q bez pamięci punktu startowego."""
    return EllipticSolver().solve(zeta, q, p, tol)


@dataclass
class GnState:
    """Stan układu GN: zeta oraz q; v̄ odtwarzane na żądanie."""
    zeta: Field
    q: Field
    cached_vbar: Field | None = field(default=None, repr=False)

    @classmethod
    def from_vbar(cls, zeta: Field, vbar: Field, p: RegimeParams) -> "GnState":
        """Buduje stan z (zeta, v̄) licząc q = v̄ + mu Q v̄."""
        h1, h2 = depths(zeta, p)
        q = vbar + p.mu * qbar_apply(h1, h2, vbar, p)
        return cls(zeta=zeta, q=q, cached_vbar=vbar)

    def vbar(self, p: RegimeParams, solver: EllipticSolver | None = None) -> Field:
        """Prędkość ścinania uśredniona w warstwach."""
        if self.cached_vbar is None:
            self.cached_vbar = (solver or EllipticSolver()).solve(self.zeta, self.q, p)
        return self.cached_vbar

    def to_array(self) -> np.ndarray:
        return np.stack([self.zeta.values, self.q.values])

    @classmethod
    def from_array(cls, grid: Grid, y: np.ndarray) -> "GnState":
        return cls(zeta=Field(grid, y[0]), q=Field(grid, y[1]))


def gn_tendencies(zeta: Field, vbar: Field, p: RegimeParams) -> tuple[Field, Field]:
    """
    Pochodne czasowe (d zeta/dt, d q/dt) przy znanym v̄.

    Obie w postaci dywergencyjnej, więc mod zerowy jest dokładnie zerem.
    """
    grid = zeta.grid
    h1, h2 = (h.values for h in depths(zeta, p))
    total = h1 + p.gamma * h2
    v = vbar.values
    mass_flux = h1 * h2 * v / total
    momentum_flux = (
        p.depth_sum * zeta.values
        + 0.5 * p.epsilon * (h1 ** 2 - p.gamma * h2 ** 2) / total ** 2 * v ** 2
        - p.mu * p.epsilon * _rbar_values(grid, h1, h2, v, p.gamma)
    )
    if grid.dealias:
        mass_flux = dealias_filter(mass_flux)
        momentum_flux = dealias_filter(momentum_flux)
    dzeta = -_dx(grid, mass_flux)
    dq = -_dx(grid, momentum_flux)
    if not (np.all(np.isfinite(dzeta)) and np.all(np.isfinite(dq))):
        raise NonFiniteError("Niedozwolone wartości w RHS układu GN")
    return Field(grid, dzeta), Field(grid, dq)


def gn_rhs(state: GnState, p: RegimeParams, solver: EllipticSolver | None = None) -> tuple[Field, Field]:
    """
    Prawa strona układu GN.

    Args:
        state: Stan (zeta, q)
        p: Parametry reżimu
        solver: Solver eliptyczny (z pamięcią punktu startowego)

    Returns:
        (d zeta/dt, d q/dt)
    """
    vbar = state.vbar(p, solver)
    return gn_tendencies(state.zeta, vbar, p)


class GreenNaghdiSystem:
    """Układ półdyskretny na tablicach (2, n) dla integratora."""

    def __init__(self, grid: Grid, p: RegimeParams, solver_config: dict | None = None):
        self.grid = grid
        self.p = p
        self.solver = EllipticSolver(solver_config)

    def initial_vector(self, zeta0: Field, vbar0: Field) -> np.ndarray:
        return GnState.from_vbar(zeta0, vbar0, self.p).to_array()

    def unpack(self, y: np.ndarray) -> GnState:
        return GnState.from_array(self.grid, y)

    def rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        dzeta, dq = gn_rhs(self.unpack(y), self.p, self.solver)
        return np.stack([dzeta.values, dq.values])

    @property
    def mean_iterations(self) -> float:
        """Średnia liczba iteracji CG na wywołanie."""
        return self.solver.total_iterations / self.solver.calls if self.solver.calls else 0.0

    def observe(self, y: np.ndarray, time: float = 0.0) -> tuple[Field, Field]:
        """(zeta, v̄) odpowiadające stanowi."""
        state = self.unpack(y)
        return state.zeta, state.vbar(self.p, self.solver)
