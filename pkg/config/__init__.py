from config.settings import (
    PARAM_BOUNDS,
    RATIO_PRESETS,
    GRID_CONFIG,
    SOLVER_CONFIG,
    INTEGRATOR_CONFIG,
    HARNESS_CONFIG,
)
