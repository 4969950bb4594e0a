class SpinEntropyError(Exception):
    """Base class for every error raised by spin_entropy."""


class NormalizationError(SpinEntropyError, ValueError):
    pass


class CancellationError(NormalizationError):
    """A superposition cancelled to (numerically) zero norm."""


class DensityMatrixError(SpinEntropyError, ValueError):
    pass


class ExpectationValueError(SpinEntropyError, ArithmeticError):
    """An expectation value of a Hermitian operator came out complex."""


class SchmidtInvariantError(SpinEntropyError, ValueError):
    pass


class OutOfRangeError(SpinEntropyError, ValueError):
    pass


class InvalidArgumentError(SpinEntropyError, ValueError):
    pass


class PurityError(SpinEntropyError, ValueError):
    """The two marginals of a supposedly pure state disagree."""


class StateFileError(SpinEntropyError, ValueError):
    def __init__(self, field: str, message: str) -> None:
        super().__init__(f"{field}: {message}")
        self.field = field
