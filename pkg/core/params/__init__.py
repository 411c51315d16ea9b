"""Współczynniki modeli asymptotycznych."""
from core.params.coefficients import (
    base_coeffs,
    decoupled_coeffs,
    unidirectional_coeffs,
    reconstruction_coeffs,
    critical_defect,
    breaking_defect,
    coeffs_for_model,
)
from core.params.dispersion import (
    dispersion_omega,
    shear_system_stability,
    shear_threshold,
    gn_dispersion_constant,
)
