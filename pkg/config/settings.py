"""Konfiguracja symulacji fal wewnętrznych w płynie dwuwarstwowym."""

import os

from dotenv import load_dotenv

load_dotenv()

# Dopuszczalny obszar parametrów bezwymiarowych
PARAM_BOUNDS = {
    "epsilon": {"min": 0.0, "max": 1.0},
    "mu": {"min": 0.0, "max": 1.0},
    "delta": {"min": 0.1, "max": 10.0},
    "gamma": {"min": 0.0, "max": 0.99},
}

# Presety stosunków gęstości i głębokości
RATIO_PRESETS = {
    "critical": {"gamma": 0.64, "delta": 0.8},  # delta^2 = gamma
    "non-critical": {"gamma": 0.9, "delta": 0.5},
}

# Domyślne pokrętła modeli (trik BBM i zamiana zmiennych bliska identyczności)
MODEL_DEFAULTS = {
    "theta": 0.5,
    "lambda": 0.0,
}

# Siatka periodyczna
GRID_CONFIG = {
    "dx": 0.2,
    "min_points": 16,
    "size_granularity": 64,  # n zaokrąglane w górę do wielokrotności
    "support_margin": 20.0,  # L = 2 * (T + margin)
    "tail_tolerance": 1e-12,
    "seam_taper": 20.0,
    "dealias": False,
}

# Rozwiązanie eliptyczne dla v̄
SOLVER_CONFIG = {
    "tol": 1e-12,
    "max_iter": 500,
    "refinements": 3,
    "h_min": 1e-6,
}

# Całkowanie w czasie
INTEGRATOR_CONFIG = {
    "method": "abm4",
    "cfl": 0.5,
    "harness_cfl": 0.25,
    "blowup_threshold": 1e6,
    "stability_limits": {"abm4": 1.0, "rk4": 2.8},
    "sample_tol": 1e-9,
}

# Eksperymenty porównawcze
HARNESS_CONFIG = {
    "epsilons": (0.1, 0.08, 0.065, 0.05, 0.035),
    "checkpoints": ("10", "1/eps", "eps^-3/2"),
    "n_samples": 200,
    "s_err": 0.0,
    "ztov_window": 10.0,
    "plateau_factor": 2.0,
    "workers": int(os.getenv("IWAVES_WORKERS", "1")),
}

# Wyjście
OUTPUT_CONFIG = {
    "output_dir": os.getenv("IWAVES_OUTPUT_DIR", "results"),
    "float_format": "%.17g",
    "write_dat": False,
}

# Logowanie
LOGGING_CONFIG = {
    "level": os.getenv("IWAVES_LOG_LEVEL", "INFO"),
    "format": "[%(levelname)s] %(name)s: %(message)s",
}

# Kody wyjścia CLI
EXIT_CODES = {
    "ok": 0,
    "config": 2,
    "blowup": 3,
    "elliptic": 4,
}
