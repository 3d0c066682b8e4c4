"""Exception hierarchy shared by the solver, field model and exporters."""


class FiberModeError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(FiberModeError, ValueError):
    """An argument lies outside the domain a function is defined on."""


class InvalidSpecError(DomainError):
    """Fiber geometry or material parameters are physically inconsistent."""


class SingularityError(FiberModeError, ArithmeticError):
    """Evaluation hit a pole or a point where a quantity is undefined."""


class NoRootError(FiberModeError, RuntimeError):
    """No sign change of the eigenvalue residual was found in the guided window."""


class ConfigError(FiberModeError, ValueError):
    """A sampling or export configuration is invalid."""


class ExportError(FiberModeError, OSError):
    """Writing or reading an exported field map failed."""
