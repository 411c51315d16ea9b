"""Eksperymenty porównawcze: dane początkowe, przebiegi, przeglądy po eps i zapis wyników."""
from core.harness.initial_data import make_initial_data
from core.harness.runner import (
    simulate,
    combined_error,
    run_comparison,
    run_ztov_probe,
    checkpoint_time,
    make_schedule,
)
from core.harness.sweep import sweep_epsilon, convergence_rate
from core.harness.config_file import load_config, parse_config, config_hash
