"""Exception hierarchy shared by every projprod module."""


class ProjprodError(Exception):
    """Base class for all errors raised by projprod."""


class InputError(ProjprodError, ValueError):
    """An argument is malformed: wrong shape, non-finite entries, bad JSON."""


class DimensionError(InputError):
    """Two objects that must live in the same space do not."""


class DomainError(InputError):
    """A value lies outside the domain of the operation (pole hit, zero outside the disc)."""


class ClassificationError(ProjprodError):
    """The operator is not a product of two projections.

    ``residual`` carries the Crimmins residual ``||T T* T - T^2||`` that
    decided the verdict.
    """

    def __init__(self, msg, residual=None):
        super().__init__(msg)
        self.residual = residual


class ConsistencyError(ProjprodError):
    """Two independent computations of the same object disagree beyond tolerance."""


class ConfigError(ProjprodError):
    """A configuration value cannot support the requested computation."""


class TruncationError(ConfigError):
    """The Hardy-space truncation order is too small for the products in play."""

    def __init__(self, msg, suggested_order=None):
        super().__init__(msg)
        self.suggested_order = suggested_order


class EmptyFamilyError(ProjprodError):
    """No nonconstant inner function ``phi`` has ``phi H^2`` inside the given subspace."""
