"""Exception types raised across the package."""


class HybridMapError(Exception):
    """Base class for all package errors."""


class DimensionError(HybridMapError, ValueError):
    """Operands act on different numbers of qubits."""


class ConfigurationError(HybridMapError, ValueError):
    """A lattice/mapping configuration violates a precondition."""


class UnsupportedOperatorError(HybridMapError):
    """The requested operator cannot be encoded by this mapping."""


class CapacityError(HybridMapError):
    """An exact solver was asked for more than it is configured to handle."""


class InfeasibleError(HybridMapError):
    """No solution exists (e.g. terminals in different components)."""
