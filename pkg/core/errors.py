"""Wyjątki zgłaszane przez moduły symulacji."""


class IWavesError(Exception):
    """Bazowy wyjątek biblioteki."""


class ConfigError(IWavesError, ValueError):
    """Niepoprawna konfiguracja lub parametry spoza dopuszczalnego obszaru."""


class GridTooSmallError(ConfigError):
    """Ogon danych początkowych przy brzegu domeny przekracza tolerancję."""


class GridMismatchError(IWavesError, ValueError):
    """Pola zdefiniowane na różnych siatkach."""


class TimeMismatchError(IWavesError, ValueError):
    """Stany z różnych chwil czasu."""


class DepthError(IWavesError, ArithmeticError):
    """Głębokość warstwy spadła poniżej h_min."""

    def __init__(self, layer: str, minimum: float, floor: float):
        super().__init__(f"Głębokość {layer} = {minimum:.3e} poniżej h_min = {floor:.1e}")
        self.layer = layer
        self.minimum = minimum


class NonFiniteError(IWavesError, ArithmeticError):
    """Wartości NaN lub nieskończone w polu."""


class SingularMultiplierError(IWavesError, ArithmeticError):
    """Mnożnik 1 + a k^2 niedodatni dla pewnego modu."""


class EllipticSolveError(IWavesError, ArithmeticError):
    """Iteracja dla (I + mu Q) v = q nie osiągnęła tolerancji."""

    def __init__(self, message: str, residual: float | None = None):
        super().__init__(message)
        self.residual = residual


class BlowUpError(IWavesError, ArithmeticError):
    """Norma maksimum przekroczyła próg lub pojawiły się wartości nieskończone."""

    def __init__(self, time: float, trajectory=None):
        super().__init__(f"Blow-up w chwili t = {time:.6g}")
        self.time = time
        self.trajectory = trajectory
