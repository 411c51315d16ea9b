"""Przebiegi porównawcze: referencja GN kontra przybliżenia na wspólnej siatce."""

from dataclasses import dataclass
import logging

import numpy as np

from config.settings import RATIO_PRESETS
from core.errors import BlowUpError, ConfigError, DepthError, GridMismatchError
from core.harness.config_file import config_hash, config_to_dict
from core.harness.initial_data import make_initial_data
from core.models import (
    ErrorSeries,
    ExperimentConfig,
    IntegratorConfig,
    ModelName,
    RatioPreset,
    RegimeParams,
    Samples,
    Side,
)
from core.params.dispersion import max_frequency
from core.physics.approximations import DecoupledSystem, WeaklyCoupledSystem
from core.physics.consistency import consistency_residual
from core.physics.green_naghdi import GnState, GreenNaghdiSystem
from core.physics.reconstruction import UnidirectionalSystem, plateau_onset, ztov_residual
from core.spectral.grid import Field, Grid
from core.spectral.norms import sobolev_norm, weighted_norm
from core.spectral.operators import spectral_tail
from core.timeint.integrators import integrate, pick_dt, step_halving_error

logger = logging.getLogger(__name__)

NORMS = {"L2": 0.0, "H1": 1.0}


@dataclass(frozen=True)
class Schedule:
    """Chwile próbkowania jednego przebiegu i położenie punktów kontrolnych."""
    t_final: float
    times: np.ndarray
    checkpoint_tags: dict[str, int]  # etykieta -> indeks próbki


def resolve_ratio(cfg: ExperimentConfig) -> tuple[float, float]:
    """(gamma, delta) dla presetu lub wartości własnych."""
    if cfg.ratio is RatioPreset.CUSTOM:
        if cfg.gamma is None or cfg.delta is None:
            raise ConfigError("Preset custom wymaga gamma i delta")
        return cfg.gamma, cfg.delta
    preset = RATIO_PRESETS[cfg.ratio.value]
    return preset["gamma"], preset["delta"]


def params_for(cfg: ExperimentConfig, epsilon: float) -> RegimeParams:
    """Parametry reżimu dla danego eps (mu z reguły reżimu)."""
    gamma, delta = resolve_ratio(cfg)
    return RegimeParams(
        epsilon=epsilon,
        mu=cfg.regime.mu_for(epsilon),
        delta=delta,
        gamma=gamma,
        theta=cfg.theta,
        lam=cfg.lam,
    )


def checkpoint_time(tag: str, epsilon: float) -> float:
    """Zamienia regułę punktu kontrolnego ('10', '1/eps', 'eps^-3/2') na chwilę."""
    rule = tag.strip().replace(" ", "")
    if rule == "1/eps":
        return 1.0 / epsilon
    if rule == "eps^-3/2":
        return epsilon ** -1.5
    try:
        return float(rule)
    except ValueError:
        raise ConfigError(f"Nieznana reguła punktu kontrolnego: {tag!r}") from None


def make_schedule(cfg: ExperimentConfig, epsilon: float) -> Schedule:
    """
    Chwile próbkowania: n_samples równych odstępów na [0, T] plus punkty kontrolne.

    Punkt kontrolny bliski próbce równomiernej zastępuje ją, więc czasy są ściśle rosnące.
    """
    if epsilon <= 0.0 and cfg.t_final is None:
        raise ConfigError("Dla eps = 0 wymagane jest jawne t_final")
    checkpoints = {}
    for tag in cfg.checkpoints:
        if epsilon > 0.0 or tag.replace(" ", "") not in ("1/eps", "eps^-3/2"):
            checkpoints[tag] = checkpoint_time(tag, epsilon)
    t_final = cfg.t_final if cfg.t_final is not None else max(checkpoints.values())
    times = list(np.linspace(0.0, t_final, cfg.n_samples + 1))
    spacing = t_final / cfg.n_samples
    for tag, t in checkpoints.items():
        if t > t_final * (1.0 + 1e-12):
            continue
        nearest = int(np.argmin(np.abs(np.array(times) - t)))
        if abs(times[nearest] - t) < 1e-6 * spacing:
            times[nearest] = t
        else:
            times.append(t)
    times = np.array(sorted(times))
    tags = {}
    for tag, t in checkpoints.items():
        matches = np.flatnonzero(np.abs(times - t) <= 1e-12 * max(1.0, t))
        if matches.size:
            tags[tag] = int(matches[0])
    return Schedule(t_final=t_final, times=times, checkpoint_tags=tags)


def grid_for(cfg: ExperimentConfig, t_final: float) -> Grid:
    return Grid.for_horizon(t_final, cfg.dx, cfg.support_margin, dealias=cfg.dealias)


def build_system(model: ModelName, grid: Grid, p: RegimeParams, cfg: ExperimentConfig):
    """Układ półdyskretny potoku danego modelu."""
    if model is ModelName.GN:
        return GreenNaghdiSystem(grid, p, {"tol": cfg.elliptic_tol, "max_iter": cfg.elliptic_max_iter})
    if model is ModelName.WEAKLY_COUPLED:
        return WeaklyCoupledSystem(grid, p)
    if model is ModelName.UNIDIRECTIONAL:
        return UnidirectionalSystem(grid, p)
    return DecoupledSystem(grid, model, p)


def _integrator_config(model: ModelName, grid: Grid, p: RegimeParams, cfg: ExperimentConfig,
                       t_final: float, amplitude: float) -> IntegratorConfig:
    dt = pick_dt(grid, p, model, cfl=cfg.cfl, amplitude=amplitude)
    return IntegratorConfig(
        dt=dt,
        t_end=t_final,
        method=cfg.method,
        blowup_threshold=cfg.blowup_threshold,
        max_frequency=max_frequency(grid.wavenumbers, p, model, amplitude),
    )


def simulate(cfg: ExperimentConfig, epsilon: float, model: ModelName) -> Samples:
    """
    Uruchamia jeden potok od wspólnych danych początkowych.

    Blow-up modelu przybliżonego jest zapisywany w wyniku; blow-up referencji GN jest zgłaszany.

    Args:
        cfg: Konfiguracja eksperymentu
        epsilon: Parametr nieliniowości
        model: Potok do uruchomienia

    Returns:
        Samples z (zeta, v̄) w chwilach próbkowania
    """
    p = params_for(cfg, epsilon)
    schedule = make_schedule(cfg, epsilon)
    grid = grid_for(cfg, schedule.t_final)
    zeta0, vbar0 = make_initial_data(cfg.data, grid, p)
    system = build_system(model, grid, p, cfg)
    amplitude = max(zeta0.max_abs(), vbar0.max_abs() / p.depth_sum)
    icfg = _integrator_config(model, grid, p, cfg, schedule.t_final, amplitude)
    logger.info("eps = %.4g, model %s: n = %d, L = %.1f, dt = %.4g",
                epsilon, model.value, grid.n_points, grid.length, icfg.dt)

    blowup_time = None
    try:
        trajectory = integrate(system.rhs, system.initial_vector(zeta0, vbar0), icfg, schedule.times)
        states = trajectory.states
        times = trajectory.times
    except (BlowUpError, DepthError) as exc:
        if model is ModelName.GN:
            raise
        blowup_time = getattr(exc, "time", None)
        partial = getattr(exc, "trajectory", None)
        states = partial.states if partial is not None else np.empty((0,))
        times = partial.times if partial is not None else np.empty(0)
        logger.warning("Model %s: blow-up przy eps = %.4g (t = %s)", model.value, epsilon, blowup_time)

    zetas, vbars = [], []
    for t, y in zip(times, states):
        try:
            zeta, vbar = system.observe(y, t)
        except DepthError:
            # odtworzenie v̄ niemożliwe; dalsze próbki traktowane jak blow-up
            blowup_time = float(t) if blowup_time is None else min(blowup_time, float(t))
            break
        zetas.append(zeta.values)
        vbars.append(vbar.values)
    times = np.asarray(times)[:len(zetas)]
    states = np.asarray(states)[:len(zetas)]

    samples = Samples(
        model=model,
        times=times,
        zeta=np.array(zetas).reshape(len(zetas), grid.n_points),
        vbar=np.array(vbars).reshape(len(vbars), grid.n_points),
        dt=icfg.dt,
        blowup_time=blowup_time,
    )
    samples.diagnostics = _diagnostics(samples, grid, p, states, system, model)
    return samples


def _diagnostics(samples: Samples, grid: Grid, p: RegimeParams, states, system, model: ModelName) -> dict:
    if len(samples.times) == 0:
        return {}
    tails = [spectral_tail(Field(grid, z)) for z in samples.zeta]
    masses = samples.zeta.sum(axis=1) * grid.dx
    diagnostics = {
        "n_points": grid.n_points,
        "length": grid.length,
        "dt": samples.dt,
        "spectral_tail_max": float(max(tails)),
        "mass_drift": float(np.max(np.abs(masses - masses[0]))),
        "initial_weighted_norm": weighted_norm(Field(grid, samples.zeta[0]), 1, 0.0, p.mu),
    }
    if model is ModelName.GN:
        impulses = np.asarray(states)[:, 1].sum(axis=1) * grid.dx
        diagnostics["impulse_drift"] = float(np.max(np.abs(impulses - impulses[0])))
        diagnostics["cg_mean_iterations"] = system.mean_iterations
    return diagnostics


def combined_error(
    ref: tuple[Field, Field],
    approx: tuple[Field, Field],
    s_err: float,
    p: RegimeParams,
) -> float:
    """
    Błąd łączny (|d zeta|^2_{H^s} + |d v̄|^2_{H^s} / (gamma+delta)^2)^(1/2).

    Raises:
        GridMismatchError: gdy stany leżą na różnych siatkach
    """
    if ref[0].grid != approx[0].grid or ref[1].grid != approx[1].grid:
        raise GridMismatchError("Stany porównywane na różnych siatkach")
    d_zeta = sobolev_norm(ref[0] - approx[0], s_err)
    d_vbar = sobolev_norm(ref[1] - approx[1], s_err)
    return float(np.sqrt(d_zeta ** 2 + (d_vbar / p.depth_sum) ** 2))


def compare(reference: Samples, approx: Samples, grid: Grid, p: RegimeParams) -> dict[str, np.ndarray]:
    """Błędy łączne w normach L2 i H1 dla wspólnych próbek."""
    count = min(len(reference.times), len(approx.times))
    errors = {name: np.empty(count) for name in NORMS}
    for i in range(count):
        ref = (Field(grid, reference.zeta[i]), Field(grid, reference.vbar[i]))
        other = (Field(grid, approx.zeta[i]), Field(grid, approx.vbar[i]))
        for name, s in NORMS.items():
            errors[name][i] = combined_error(ref, other, s, p)
    return errors


def assemble_series(cfg: ExperimentConfig, epsilon: float, reference: Samples,
                    runs: dict[ModelName, Samples]) -> ErrorSeries:
    """Składa serię błędów z gotowych przebiegów."""
    p = params_for(cfg, epsilon)
    schedule = make_schedule(cfg, epsilon)
    grid = grid_for(cfg, schedule.t_final)
    series = ErrorSeries(
        times=reference.times,
        checkpoint_tags=dict(schedule.checkpoint_tags),
        metadata={
            "config_hash": config_hash(cfg),
            "config": config_to_dict(cfg),
            "epsilon": epsilon,
            "mu": p.mu,
            "gamma": p.gamma,
            "delta": p.delta,
            "n_points": grid.n_points,
            "length": grid.length,
            "dt": {ModelName.GN.value: reference.dt},
            "diagnostics": {ModelName.GN.value: reference.diagnostics},
        },
    )
    for model in cfg.models:
        run = reference if model is ModelName.GN else runs[model]
        series.errors[model.value] = compare(reference, run, grid, p)
        series.metadata["dt"][model.value] = run.dt
        series.metadata["diagnostics"][model.value] = run.diagnostics
        if run.blowup_time is not None:
            series.blowups[model.value] = run.blowup_time
        if cfg.residuals and len(run.times) >= 3:
            times, values = consistency_residual(grid, run.times, run.zeta, run.vbar, p, cfg.s_err)
            series.metadata.setdefault("consistency_residual", {})[model.value] = {
                "times": times.tolist(),
                "values": values.tolist(),
            }
    return series


def run_comparison(cfg: ExperimentConfig, epsilon: float | None = None) -> ErrorSeries:
    """
    Porównuje wybrane modele z referencją GN dla jednego eps.

    Args:
        cfg: Konfiguracja eksperymentu
        epsilon: Parametr nieliniowości (default: pierwszy z cfg.epsilons)

    Returns:
        ErrorSeries z błędami L2 i H1 każdego modelu
    """
    epsilon = cfg.epsilons[0] if epsilon is None else epsilon
    reference = simulate(cfg, epsilon, ModelName.GN)
    runs = {model: simulate(cfg, epsilon, model) for model in cfg.models if model is not ModelName.GN}
    return assemble_series(cfg, epsilon, reference, runs)


def run_ztov_probe(cfg: ExperimentConfig, epsilon: float | None = None) -> ErrorSeries:
    """
    Residuum odtworzenia prędkości z deformacji na prawej półprostej wzdłuż przebiegu GN.

    Returns:
        ErrorSeries z modelem 'ztov' (L2 i H1) i chwilą T0 wejścia na plateau w metadanych
    """
    epsilon = cfg.epsilons[0] if epsilon is None else epsilon
    p = params_for(cfg, epsilon)
    schedule = make_schedule(cfg, epsilon)
    grid = grid_for(cfg, schedule.t_final)
    reference = simulate(cfg, epsilon, ModelName.GN)
    residuals = {name: np.empty(len(reference.times)) for name in NORMS}
    for i in range(len(reference.times)):
        zeta = Field(grid, reference.zeta[i])
        state = GnState.from_vbar(zeta, Field(grid, reference.vbar[i]), p)
        for name, s in NORMS.items():
            residuals[name][i] = ztov_residual(state, Side.RIGHT, p, s)
    return ErrorSeries(
        times=reference.times,
        errors={"ztov": residuals},
        checkpoint_tags=dict(schedule.checkpoint_tags),
        metadata={
            "config_hash": config_hash(cfg),
            "config": config_to_dict(cfg),
            "epsilon": epsilon,
            "mu": p.mu,
            "n_points": grid.n_points,
            "length": grid.length,
            "plateau_onset": plateau_onset(reference.times[1:], residuals["L2"][1:])
            if len(reference.times) > 2 else None,
            "diagnostics": {ModelName.GN.value: reference.diagnostics},
        },
    )


def reference_step_error(cfg: ExperimentConfig, epsilon: float, horizon: float = 10.0) -> float:
    """Oszacowanie błędu całkowania GN przez połowienie kroku na krótkim horyzoncie."""
    p = params_for(cfg, epsilon)
    schedule = make_schedule(cfg, epsilon)
    grid = grid_for(cfg, schedule.t_final)
    zeta0, vbar0 = make_initial_data(cfg.data, grid, p)
    system = build_system(ModelName.GN, grid, p, cfg)
    icfg = _integrator_config(ModelName.GN, grid, p, cfg, min(horizon, schedule.t_final), zeta0.max_abs())
    return step_halving_error(system.rhs, system.initial_vector(zeta0, vbar0), icfg)
