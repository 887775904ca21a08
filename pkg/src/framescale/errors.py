"""Exception hierarchy."""


class FramescaleError(Exception):
    """Base class for all errors raised by this package."""


class FrameError(FramescaleError, ValueError):
    """Malformed frame input (zero vector, ragged rows, empty input)."""


class NotAFrameError(FramescaleError, ValueError):
    """The vectors do not span the ambient space."""


class NumericalFailure(FramescaleError, ArithmeticError):
    """A computation lost too much accuracy to return a trustworthy answer."""


class ConvergenceError(NumericalFailure):
    """Iterative method did not converge.

    ``residual`` carries the last measured quantity that was supposed to
    go to zero (e.g. the off-diagonal norm in the Jacobi method).
    """

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class InvalidCertificate(FramescaleError, ValueError):
    """A certificate failed verification against its frame."""


class DegenerateCertificate(FramescaleError, ValueError):
    """A certificate is too close to zero to define a quadric cone."""
