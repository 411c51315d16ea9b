"""Internal Waves Benchmark - CLI porównujący modele fal wewnętrznych z układem GN."""

from pathlib import Path
import argparse
import logging
import sys

import numpy as np

from config.settings import EXIT_CODES, LOGGING_CONFIG, OUTPUT_CONFIG
from core.errors import (
    BlowUpError,
    ConfigError,
    DepthError,
    EllipticSolveError,
    IWavesError,
    NonFiniteError,
    SingularMultiplierError,
)
from core.harness.config_file import SEED_TEMPLATE, load_config
from core.harness.output import (
    rates_from_frame,
    read_sweep,
    series_frame,
    slopes_frame,
    sweep_frame,
    write_csv,
    write_dat,
    write_sidecar,
)
from core.harness.runner import params_for, reference_step_error, run_comparison, run_ztov_probe
from core.harness.sweep import sweep_epsilon
from core.models import ExperimentConfig, ModelName, RegimeParams
from core.params import (
    base_coeffs,
    breaking_defect,
    coeffs_for_model,
    critical_defect,
    dispersion_omega,
    shear_system_stability,
    shear_threshold,
)

logger = logging.getLogger("iwaves")

COEFF_MODELS = (ModelName.IB, ModelName.KDV, ModelName.EKDV, ModelName.MKDV, ModelName.CL, ModelName.UNIDIRECTIONAL)


def setup_logging(verbose: int = 0) -> None:
    """Konfiguruje logowanie: -v podnosi poziom do DEBUG."""
    level = logging.DEBUG if verbose else getattr(logging, LOGGING_CONFIG["level"].upper(), logging.INFO)
    logging.basicConfig(level=level, format=LOGGING_CONFIG["format"], stream=sys.stderr, force=True)


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if getattr(args, "models", None):
        models = tuple(ModelName.parse(m) for m in args.models.split(","))
        if ModelName.GN not in models:
            models = (ModelName.GN,) + models
        cfg.models = models
    if getattr(args, "residuals", False):
        cfg.residuals = True
    if getattr(args, "workers", None):
        cfg.workers = args.workers
    return cfg


def _params_from_args(args) -> RegimeParams:
    cfg = _load(args)
    epsilon = args.epsilon if args.epsilon is not None else cfg.epsilons[0]
    return params_for(cfg, epsilon)


def _out_dir(args) -> Path:
    path = Path(args.out or OUTPUT_CONFIG["output_dir"])
    path.mkdir(parents=True, exist_ok=True)
    return path


def cmd_coeffs(args) -> int:
    p = _params_from_args(args)
    b = base_coeffs(p)
    print(f"eps = {p.epsilon}, mu = {p.mu}, gamma = {p.gamma}, delta = {p.delta}, "
          f"theta = {p.theta}, lambda = {p.lam}")
    print(f"delta^2 - gamma = {critical_defect(p):.6g}")
    print("Stałe układu sprzężonego:")
    for name in ("alpha1", "alpha2", "alpha3", "nu", "kappa1", "kappa2", "kappa3"):
        print(f"  {name:8s} {getattr(b, name): .10g}")
    header = f"{'model':16s}" + "".join(f"{n:>14s}" for n in ("beta", "alpha1", "alpha2", "alpha3", "nu",
                                                             "kappa1", "kappa2", "k1-2k2"))
    print(header)
    for model in COEFF_MODELS:
        c = coeffs_for_model(model, p)
        row = [c.beta, c.alpha1, c.alpha2, c.alpha3, c.nu, c.kappa1, c.kappa2, breaking_defect(c)]
        print(f"{model.value:16s}" + "".join(f"{v:14.6g}" for v in row))
    return EXIT_CODES["ok"]


def cmd_dispersion(args) -> int:
    p = _params_from_args(args)
    k = np.linspace(0.0, args.k_max, args.points)
    omega = dispersion_omega(k, p)
    print(f"{'k':>10s}{'omega_GN':>16s}{'shear omega^2':>16s}")
    for kk, om in zip(k, omega):
        mode = shear_system_stability(kk, p)
        print(f"{kk:10.4f}{om:16.8g}{mode.omega_squared:16.6g}{'  niestabilny' if mode.unstable else ''}")
    print(f"Próg niestabilności ścinania k_c = {shear_threshold(p):.6g}")
    return EXIT_CODES["ok"]


def cmd_run(args) -> int:
    cfg = _load(args)
    epsilon = args.epsilon if args.epsilon is not None else cfg.epsilons[0]
    if args.check_dt:
        error = reference_step_error(cfg, epsilon)
        logger.info("Połowienie kroku GN: różnica %.3e", error)
    series = run_comparison(cfg, epsilon)
    out = _out_dir(args)
    stem = f"errors_eps{epsilon:g}"
    write_csv(series_frame(series), out / f"{stem}.csv")
    write_sidecar({**series.metadata, "blowups": series.blowups}, out / f"{stem}.json")
    if args.dat:
        write_dat(series, out / f"{stem}.dat")
    if args.plot:
        from visualization.error_curves import create_error_plot
        create_error_plot(series).write_html(out / f"{stem}.html", include_plotlyjs="cdn")
    for model in series.models:
        for tag in cfg.checkpoints:
            value = series.value_at(model, tag)
            if value is not None and model != ModelName.GN.value:
                print(f"{model:16s} {tag:>10s}  L2 = {value:.6e}")
    return EXIT_CODES["ok"]


def cmd_sweep(args) -> int:
    cfg = _load(args)
    table = sweep_epsilon(cfg)
    out = _out_dir(args)
    write_csv(sweep_frame(table), out / "sweep.csv")
    write_csv(slopes_frame(table.slopes), out / "slopes.csv")
    write_sidecar(
        {**table.metadata, "failures": {f"{e}:{m}": msg for (e, m), msg in table.failures.items()}},
        out / "sweep.json",
    )
    _print_rates(table.slopes)
    return EXIT_CODES["ok"]


def _print_rates(rates) -> None:
    print(f"{'model':16s}{'checkpoint':>12s}{'slope':>10s}{'stderr':>10s}{'n':>4s}")
    for (model, tag), fit in sorted(rates.items()):
        print(f"{model:16s}{tag:>12s}{fit.slope:10.3f}{fit.stderr:10.3f}{fit.n_points:4d}")


def cmd_rates(args) -> int:
    df = read_sweep(args.csv)
    rates = rates_from_frame(df, args.norm)
    _print_rates(rates)
    if args.plot:
        from visualization.error_curves import create_rate_plot
        create_rate_plot(df, rates, args.norm).write_html(args.plot, include_plotlyjs="cdn")
    return EXIT_CODES["ok"]


def cmd_ztov(args) -> int:
    cfg = _load(args)
    epsilon = args.epsilon if args.epsilon is not None else cfg.epsilons[0]
    series = run_ztov_probe(cfg, epsilon)
    out = _out_dir(args)
    stem = f"ztov_eps{epsilon:g}"
    write_csv(series_frame(series), out / f"{stem}.csv")
    write_sidecar(series.metadata, out / f"{stem}.json")
    print(f"Plateau od T0 = {series.metadata['plateau_onset']}")
    return EXIT_CODES["ok"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iwaves", description="Benchmark modeli fal wewnętrznych względem układu GN")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--seed-config", action="store_true", help="wypisz przykładowy plik eksperymentu i zakończ")
    sub = parser.add_subparsers(dest="command")

    def common(p, epsilon=True):
        p.add_argument("--config", help="plik INI eksperymentu")
        if epsilon:
            p.add_argument("--epsilon", type=float)
        p.add_argument("--models", help="lista modeli oddzielona przecinkami")

    p = sub.add_parser("coeffs", help="współczynniki modeli dla danych parametrów")
    common(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("dispersion", help="relacja dyspersyjna GN i stabilność ścinania")
    common(p)
    p.add_argument("--k-max", type=float, default=5.0)
    p.add_argument("--points", type=int, default=11)
    p.set_defaults(func=cmd_dispersion)

    p = sub.add_parser("run", help="porównanie modeli z GN dla jednego eps")
    common(p)
    p.add_argument("--out")
    p.add_argument("--dat", action="store_true", help="dodatkowo bloki .dat")
    p.add_argument("--plot", action="store_true", help="wykres HTML błędów")
    p.add_argument("--residuals", action="store_true", help="residuum spójności trajektorii")
    p.add_argument("--check-dt", action="store_true", help="kontrola połowienia kroku dla GN")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="przegląd po eps z tempami zbieżności")
    common(p, epsilon=False)
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("rates", help="tempa zbieżności z zapisanej tabeli przeglądu")
    p.add_argument("csv")
    p.add_argument("--norm", choices=("L2", "H1"), default="L2")
    p.add_argument("--plot", metavar="PATH", help="wykres HTML log-log")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("ztov", help="odtwarzanie prędkości z deformacji wzdłuż przebiegu GN")
    common(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_ztov)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.verbose)
    if args.seed_config:
        sys.stdout.write(SEED_TEMPLATE)
        return EXIT_CODES["ok"]
    if not getattr(args, "func", None):
        parser.print_help()
        return EXIT_CODES["config"]
    try:
        return args.func(args)
    except (ConfigError, SingularMultiplierError) as exc:
        logger.error("Błąd konfiguracji: %s", exc)
        return EXIT_CODES["config"]
    except (BlowUpError, DepthError, NonFiniteError) as exc:
        logger.error("Referencja GN nie powiodła się: %s", exc)
        return EXIT_CODES["blowup"]
    except EllipticSolveError as exc:
        logger.error("Solver eliptyczny: %s", exc)
        return EXIT_CODES["elliptic"]
    except IWavesError as exc:
        logger.error("Nieobsłużony błąd symulacji: %s", exc)
        return EXIT_CODES["config"]


if __name__ == "__main__":
    sys.exit(main())
