"""Exception types shared across the package."""


class RisThzError(Exception):
    """Base class for model errors."""


class DomainError(RisThzError, ValueError):
    """An input is outside the mathematical domain of an operation."""


class IndexRangeError(RisThzError, IndexError):
    """An element index falls outside the lattice index range."""


class ShapeError(RisThzError, ValueError):
    """An array argument has the wrong dimensions."""


class SingularGeometryError(RisThzError):
    """Grazing incidence or departure: the element pattern is zero, loss is infinite."""


class ConfigError(RisThzError, ValueError):
    """A scenario or sweep configuration is invalid."""
