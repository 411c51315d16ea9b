"""Modele fizyczne: układ GN, równania skalarne i przybliżenia."""
from core.physics.green_naghdi import GnState, GreenNaghdiSystem, gn_rhs, recover_vbar
from core.physics.scalar_models import ScalarSystem, scalar_rhs, scalar_energy
from core.physics.approximations import (
    DecoupledState,
    CorrectorState,
    DecoupledSystem,
    WeaklyCoupledSystem,
    split_initial,
    reconstruct_state,
    coupling_forcing,
    step_corrector,
    weakly_coupled_state,
)
from core.physics.reconstruction import (
    UnidirectionalSystem,
    unidirectional_rhs,
    reconstruct_vbar_from_zeta,
    ztov_residual,
)
