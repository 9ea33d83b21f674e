"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the operation's domain."""


class SizeError(DomainError):
    """Unsupported electron/qubit count."""


class DegenerateBasisError(ArithmeticError):
    """The localized orbitals are (nearly) linearly dependent.

    Raised when an eigenvalue-matching denominator or a state norm falls
    below threshold; the single-orbital-per-dot picture is invalid there.
    """


class NonConvergenceError(RuntimeError):
    """A quadrature rule hit its node cap before reaching the target tolerance."""
