"""Residuum zgodności przybliżenia z układem Greena–Naghdiego."""

import numpy as np

from core.models import RegimeParams
from core.physics.green_naghdi import depths, gn_tendencies, qbar_apply
from core.spectral.grid import Field, Grid
from core.spectral.norms import sobolev_norm


def _momentum(zeta: Field, vbar: Field, p: RegimeParams) -> Field:
    h1, h2 = depths(zeta, p)
    return vbar + p.mu * qbar_apply(h1, h2, vbar, p)


def consistency_residual(
    grid: Grid,
    times: np.ndarray,
    zetas: np.ndarray,
    vbars: np.ndarray,
    p: RegimeParams,
    s: float = 0.0,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Norma residuum (r1, r2) równań GN dla próbkowanej trajektorii przybliżonej.

    Pochodne czasowe liczone są trzypunktowym ilorazem centralnym na
    nierównomiernej siatce czasu, więc wynik dotyczy wewnętrznych próbek.

    Args:
        grid: Siatka
        times: Chwile próbkowania (rosnące, co najmniej 3)
        zetas: Próbki zeta, kształt (n_samples, n_points)
        vbars: Próbki v̄
        p: Parametry reżimu
        s: Indeks Sobolewa

    Returns:
        (chwile wewnętrzne, (|r1|^2 + |r2|^2)^(1/2) w H^s)
    """
    times = np.asarray(times, dtype=float)
    if len(times) < 3:
        raise ValueError("Potrzebne co najmniej 3 próbki")
    fields = [(Field(grid, z), Field(grid, v)) for z, v in zip(zetas, vbars)]
    momenta = [_momentum(z, v, p) for z, v in fields]
    norms = []
    for i in range(1, len(times) - 1):
        back, ahead = times[i] - times[i - 1], times[i + 1] - times[i]
        w_prev = -ahead / (back * (back + ahead))
        w_mid = (ahead - back) / (back * ahead)
        w_next = back / (ahead * (back + ahead))
        zeta_t = w_prev * fields[i - 1][0] + w_mid * fields[i][0] + w_next * fields[i + 1][0]
        q_t = w_prev * momenta[i - 1] + w_mid * momenta[i] + w_next * momenta[i + 1]
        dzeta, dq = gn_tendencies(fields[i][0], fields[i][1], p)
        r1, r2 = zeta_t - dzeta, q_t - dq
        norms.append(np.hypot(sobolev_norm(r1, s), sobolev_norm(r2, s)))
    return times[1:-1], np.array(norms)
