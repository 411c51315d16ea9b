"""Niezależne wzorce różnic skończonych do porównań z operatorami spektralnymi."""

import numpy as np

from core.spectral.grid import Field, Grid

# centralna różnica rzędu 8 dla pierwszej pochodnej
FD8 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0.0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])

REFINE = 4


def fd_dx(values: np.ndarray, h: float, order: int = 1) -> np.ndarray:
    """Pochodna periodyczna przez order-krotne zastosowanie szablonu FD8."""
    out = np.asarray(values, dtype=float)
    for _ in range(order):
        out = sum(w * np.roll(out, -shift) for w, shift in zip(FD8, range(-4, 5))) / h
    return out


def band_limited(x: np.ndarray, length: float, seed: int, modes: int = 4, scale: float = 1.0) -> np.ndarray:
    """Gładka funkcja z kilku niskich modów, periodyczna na [-L/2, L/2)."""
    rng = np.random.default_rng(seed)
    result = np.zeros_like(x)
    for m in range(1, modes + 1):
        a, b = rng.normal(size=2) / m ** 2
        result += a * np.cos(2 * np.pi * m * x / length) + b * np.sin(2 * np.pi * m * x / length)
    return scale * result


class Refined:
    """Próbkuje funkcje na siatce REFINE razy gęstszej i wraca do węzłów siatki bazowej."""

    def __init__(self, grid: Grid):
        self.grid = grid
        self.fine = Grid(grid.n_points * REFINE, grid.length)
        self.h = self.fine.dx

    def sample(self, fn) -> np.ndarray:
        return fn(self.fine.x)

    def coarse(self, values: np.ndarray) -> Field:
        return Field(self.grid, values[::REFINE].copy())

    def dx(self, values: np.ndarray, order: int = 1) -> np.ndarray:
        return fd_dx(values, self.h, order)


def qbar_oracle(r: Refined, h1, h2, v, gamma):
    total = h1 + gamma * h2
    upper = r.dx(h2 ** 3 * r.dx(h1 * v / total))
    lower = r.dx(h1 ** 3 * r.dx(h2 * v / total))
    return -(h1 * upper + gamma * h2 * lower) / (3.0 * h1 * h2)


def rbar_oracle(r: Refined, h1, h2, v, gamma):
    total = h1 + gamma * h2
    gu = r.dx(h1 * v / total)
    gl = r.dx(h2 * v / total)
    quadratic = 0.5 * ((h2 * gu) ** 2 - gamma * (h1 * gl) ** 2)
    curvature = (h1 / h2) * r.dx(h2 ** 3 * gu) - gamma * (h2 / h1) * r.dx(h1 ** 3 * gl)
    return quadratic + v / (3.0 * total) * curvature


def gn_oracle(r: Refined, zeta, v, p):
    """(d zeta/dt, d q/dt) w postaci nieskonserwatywnej rozpisanej ręcznie."""
    h1 = 1.0 - p.epsilon * zeta
    h2 = 1.0 / p.delta + p.epsilon * zeta
    total = h1 + p.gamma * h2
    dzeta = -r.dx(h1 * h2 * v / total)
    kinetic = 0.5 * p.epsilon * (h1 ** 2 - p.gamma * h2 ** 2) / total ** 2 * v ** 2
    dq = -(p.depth_sum * r.dx(zeta) + r.dx(kinetic) - p.mu * p.epsilon * r.dx(rbar_oracle(r, h1, h2, v, p.gamma)))
    return dzeta, dq


def scalar_bracket_oracle(r: Refined, u, c, p):
    """Nawias równania skalarnego w postaci u^k u_x (bez form dywergencyjnych)."""
    eps, mu = p.epsilon, p.mu
    ux = r.dx(u)
    uxx = r.dx(u, 2)
    uxxx = r.dx(u, 3)
    return (
        eps * c.alpha1 * u * ux
        + eps ** 2 * c.alpha2 * u ** 2 * ux
        + eps ** 3 * c.alpha3 * u ** 3 * ux
        + mu * c.nu * uxxx
        + mu * eps * (c.kappa1 * u * uxxx + (c.kappa1 + 2.0 * c.kappa2) * ux * uxx)
    )


def relative_error(actual: np.ndarray, expected: np.ndarray) -> float:
    return float(np.linalg.norm(actual - expected) / max(np.linalg.norm(expected), 1e-300))


def f_left_oracle(r: Refined, left_fn, right_fn, p, b, h: float = 1e-3):
    """
    f_l(v_l, v_r) z pochodną czasową nawiasu liczoną ilorazem centralnym
    po przesunięciu fal: v_l(x - t) w prawo, v_r(x + t) w lewo.
    """
    x = r.fine.x
    eps, mu = p.epsilon, p.mu

    def bracket(shift):
        lu, ru = left_fn(x - shift), right_fn(x + shift)
        l2, r2 = r.dx(lu, 2), r.dx(ru, 2)
        return (
            b.kappa1 * (lu * l2 - ru * r2)
            + b.kappa2 * (ru * l2 - lu * r2)
            + (b.kappa1 + 0.5 * b.kappa2) * (r.dx(lu) ** 2 - r.dx(ru) ** 2)
        )

    lu, ru = left_fn(x), right_fn(x)
    diff, total = lu - ru, lu + ru
    flux = (
        0.5 * eps * b.alpha1 * (lu + ru / 3.0) * diff
        + eps ** 2 * b.alpha2 / 3.0 * diff * lu * total
        + eps ** 3 * b.alpha3 / 4.0 * (lu - ru / 5.0) * diff * total ** 2
        + mu * eps * b.kappa3 * (diff * r.dx(diff, 2) / 3.0 + 0.5 * r.dx(diff) ** 2)
    )
    bracket_t = (bracket(h) - bracket(-h)) / (2.0 * h)
    return r.dx(flux) + mu * b.nu * (r.dx(lu, 3) + r.dx(ru, 3)) - mu * eps * bracket_t


def vbar_oracle(r: Refined, zeta, p, c):
    """v̄ podporządkowane zeta przy współczynnikach rekonstrukcji c."""
    eps, mu = p.epsilon, p.mu
    h1 = 1.0 - eps * zeta
    h2 = 1.0 / p.delta + eps * zeta
    zx, zxx = r.dx(zeta), r.dx(zeta, 2)
    slaved = (
        zeta + eps * c.alpha1 / 2 * zeta ** 2 + eps ** 2 * c.alpha2 / 3 * zeta ** 3 + eps ** 3 * c.alpha3 / 4 * zeta ** 4
        + mu * c.nu * zxx + mu * eps * (c.kappa1 * zeta * zxx + c.kappa2 * zx ** 2)
    )
    return (h1 + p.gamma * h2) / (h1 * h2) * slaved
