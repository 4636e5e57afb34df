"""Exception hierarchy shared by all modules."""


class VarLpError(ValueError):
    """Base class for every error raised by :mod:`varlp`."""


class AlignmentError(VarLpError):
    """A coordinate, cube or scale is not aligned with the cell lattice."""


class DimensionError(VarLpError):
    """Unsupported spatial dimension."""


class DomainError(VarLpError):
    """A numeric argument lies outside its admissible range."""


class ExponentDomainError(DomainError):
    """Exponents violate an ordering or summation constraint."""


class GridMismatchError(VarLpError):
    """Objects living on different grids were combined."""


class PreconditionError(VarLpError):
    """Hypotheses of an inequality are not met by the instance."""


class DegenerateInputError(VarLpError):
    """The input makes the requested quantity undefined (e.g. f = 0)."""


class ClassViolationError(VarLpError):
    """An exponent is not in the required class (infinite constant)."""


class ConfigError(VarLpError):
    """Scenario configuration is invalid; ``errors`` lists every problem."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))
