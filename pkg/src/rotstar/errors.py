"""Exception hierarchy shared by the solver modules."""


class RotstarError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(RotstarError, ValueError):
    """A parameter lies outside the admissible range of an operation."""


class NoFiniteRadius(RotstarError):
    """The radial solution did not reach zero before the radius cutoff."""


class QuadratureFailure(RotstarError):
    """Adaptive quadrature could not meet its tolerance within budget."""


class InvalidInit(RotstarError, ValueError):
    """The initial density of an SCF solve carries no mass."""


class BoundaryHit(RotstarError):
    """The target mass is unreachable inside the validity region."""


class NonConvergence(RotstarError):
    """The SCF iteration exhausted its iteration cap."""


class SupportOverflow(RotstarError):
    """The density became positive on the outermost grid ring."""


class ConfigError(RotstarError, ValueError):
    """A run configuration file is malformed or inconsistent."""
