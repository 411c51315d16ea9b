"""Całkowanie w czasie układów półdyskretnych."""
from core.timeint.integrators import (
    rk4_step,
    AdamsBashforthMoulton4,
    RungeKutta4,
    integrate,
    pick_dt,
    step_halving_error,
)
