"""Rachunek pseudospektralny na siatce periodycznej."""
from core.spectral.grid import Grid, Field
from core.spectral.operators import (
    derivative,
    antiderivative,
    helmholtz_inverse,
    helmholtz_apply,
    spectral_tail,
)
from core.spectral.norms import sobolev_norm, scaled_energy, weighted_norm
