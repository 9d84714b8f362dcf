"""Exception hierarchy shared by every module of the package."""


class PdmWellError(Exception):
    """Base class for all errors raised by pdmwell."""


class NonConvergence(PdmWellError):
    """An iterative numerical procedure exhausted its evaluation budget."""


class NonFinite(PdmWellError):
    """A function returned NaN or infinity where a finite value is required."""


class SingularPoint(PdmWellError):
    """Evaluation requested at the singular point x_d of the mass profile."""


class DomainError(PdmWellError):
    """Argument outside the mathematical domain of the operation."""


class NotNormalized(PdmWellError):
    """A probability density failed its normalization precondition."""


class InvalidConfig(PdmWellError):
    """A run configuration violates one of its invariants."""
