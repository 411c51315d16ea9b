"""Tablice współczynników modeli skalarnych i układu sprzężonego."""

from dataclasses import dataclass, replace

from core.models import RegimeParams, ScalarCoeffs, BaseCoeffs, ModelName, ScalarModelKind


@dataclass(frozen=True)
class ReconstructionCoeffs:
    """Współczynniki wzoru odtwarzającego v̄ z zeta (theta = lambda = 0)."""
    alpha1: float
    alpha2: float
    alpha3: float
    nu: float
    kappa1: float
    kappa2: float


def critical_defect(p: RegimeParams) -> float:
    """Odległość od stosunku krytycznego: delta^2 - gamma."""
    return p.delta ** 2 - p.gamma


def base_coeffs(p: RegimeParams) -> BaseCoeffs:
    """
    Stałe układu pośredniego (sprzężonego) dla fal w obu kierunkach.

    Args:
        p: Parametry reżimu

    Returns:
        BaseCoeffs z siedmioma stałymi
    """
    g, d = p.gamma, p.delta
    s = g + d
    return BaseCoeffs(
        alpha1=1.5 * (d ** 2 - g) / s,
        alpha2=-3.0 * g * d * (d + 1.0) ** 2 / s ** 2,
        alpha3=-5.0 * d ** 2 * (d + 1.0) ** 2 * g * (1.0 - g) / s ** 3,
        nu=(1.0 + g * d) / (6.0 * d * s),
        kappa1=(1.0 + g * d) * (d ** 2 - g) / (3.0 * d * s ** 2),
        kappa2=(1.0 - g) / (3.0 * s),
        kappa3=(g - 1.0) / (2.0 * s),
    )


def decoupled_coeffs(p: RegimeParams, direction: int = 1) -> ScalarCoeffs:
    """
    Rodzina współczynników przybliżenia rozprzężonego (theta, lambda).

    Człony dyspersyjne dzielone są trikiem BBM: nu_t = theta*nu + lambda,
    nu_x = (1 - theta)*nu - lambda, a kappy przejmują poprawkę (1 - theta)*alpha1*nu.

    Args:
        p: Parametry reżimu (z theta i lambda)
        direction: +1 fala w prawo, -1 fala w lewo

    Returns:
        ScalarCoeffs dla równania CL
    """
    b = base_coeffs(p)
    shift = (1.0 - p.theta) * b.alpha1 * b.nu
    kappa1_theta = b.kappa1 + b.kappa3 / 3.0 + shift
    kappa2_theta = b.kappa1 + b.kappa2 / 2.0 + b.kappa3 / 2.0 + shift
    return ScalarCoeffs(
        beta=p.theta * b.nu + p.lam,
        alpha1=b.alpha1,
        alpha2=b.alpha2,
        alpha3=b.alpha3,
        nu=(1.0 - p.theta) * b.nu - p.lam,
        kappa1=kappa1_theta + b.alpha1 * p.lam,
        kappa2=kappa2_theta,
        direction=direction,
    )


def _unidirectional_nonlinear(p: RegimeParams) -> tuple[float, float, float]:
    g, d = p.gamma, p.delta
    s = g + d
    defect = d ** 2 - g
    alpha1 = 1.5 * defect / s
    alpha2 = 21.0 * defect ** 2 / (8.0 * s ** 2) - 3.0 * (d ** 3 + g) / s
    alpha3 = (
        71.0 * defect ** 3 / (16.0 * s ** 3)
        - 37.0 * defect * (d ** 3 + g) / (4.0 * s ** 2)
        + 5.0 * (d ** 4 - g) / s
    )
    return alpha1, alpha2, alpha3


def _unidirectional_kappas(p: RegimeParams, theta: float, lam: float) -> tuple[float, float]:
    g, d = p.gamma, p.delta
    s = g + d
    base = (d ** 2 - g) * (1.0 + g * d) / (d * s ** 2)
    kappa1 = (14.0 - 6.0 * (theta + lam)) * base / 24.0 - (1.0 - g) / (6.0 * s)
    kappa2 = (17.0 - 12.0 * theta) * base / 48.0 - (1.0 - g) / (12.0 * s)
    return kappa1, kappa2


def unidirectional_coeffs(p: RegimeParams) -> ScalarCoeffs:
    """
    Współczynniki równania jednokierunkowego dla zeta.

    Args:
        p: Parametry reżimu

    Returns:
        ScalarCoeffs z kierunkiem +1
    """
    alpha1, alpha2, alpha3 = _unidirectional_nonlinear(p)
    kappa1, kappa2 = _unidirectional_kappas(p, p.theta, p.lam)
    nu_total = (1.0 + p.gamma * p.delta) / (6.0 * p.delta * p.depth_sum)
    return ScalarCoeffs(
        beta=(p.theta + p.lam) * nu_total,
        alpha1=alpha1,
        alpha2=alpha2,
        alpha3=alpha3,
        nu=(1.0 - p.theta - p.lam) * nu_total,
        kappa1=kappa1,
        kappa2=kappa2,
        direction=1,
    )


def reconstruction_coeffs(p: RegimeParams) -> ReconstructionCoeffs:
    """Współczynniki odtwarzania prędkości; zawsze przy theta = lambda = 0."""
    alpha1, alpha2, alpha3 = _unidirectional_nonlinear(p)
    kappa1, kappa2 = _unidirectional_kappas(p, 0.0, 0.0)
    nu = (1.0 + p.gamma * p.delta) / (6.0 * p.delta * p.depth_sum)
    return ReconstructionCoeffs(alpha1, alpha2, alpha3, nu, kappa1, kappa2)


def breaking_defect(c: ScalarCoeffs) -> float:
    """kappa1 - 2*kappa2; zero wyznacza linię zmiany typu załamania fali."""
    return c.kappa1 - 2.0 * c.kappa2


def scalar_kind_for(model: ModelName) -> ScalarModelKind:
    """Rodzina równania skalarnego napędzająca dany potok rozprzężony."""
    mapping = {
        ModelName.IB: ScalarModelKind.IB,
        ModelName.KDV: ScalarModelKind.KDV,
        ModelName.EKDV: ScalarModelKind.EKDV,
        ModelName.MKDV: ScalarModelKind.EKDV,
        ModelName.CL: ScalarModelKind.CL,
        ModelName.WEAKLY_COUPLED: ScalarModelKind.CL,
    }
    if model not in mapping:
        raise ValueError(f"Model {model.value} nie jest modelem rozprzężonym")
    return mapping[model]


def masked_coeffs(c: ScalarCoeffs, kind: ScalarModelKind) -> ScalarCoeffs:
    """Zeruje współczynniki, których dana rodzina nie zawiera."""
    keep = kind.mask
    return replace(c, **{name: getattr(c, name) if kept else 0.0 for name, kept in keep.items()})


def coeffs_for_model(model: ModelName, p: RegimeParams, direction: int = 1) -> ScalarCoeffs:
    """
    Współczynniki równania skalarnego dla modelu z listy eksperymentu.

    mKdV to eKdV z alpha1 wymuszonym na 0; model jednokierunkowy używa własnej tablicy.

    Args:
        model: Nazwa modelu
        p: Parametry reżimu
        direction: Kierunek propagacji (dla modeli rozprzężonych)

    Returns:
        ScalarCoeffs
    """
    if model is ModelName.UNIDIRECTIONAL:
        return unidirectional_coeffs(p)
    coeffs = masked_coeffs(decoupled_coeffs(p, direction), scalar_kind_for(model))
    if model is ModelName.MKDV:
        coeffs = replace(coeffs, alpha1=0.0)
    return coeffs
