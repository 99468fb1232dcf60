"""Exception types shared across the package."""
from __future__ import annotations


class IfsShadowError(Exception):
    """Base class for all errors raised by this package."""


class SpaceMismatchError(IfsShadowError, TypeError):
    """A point does not have the shape the space expects."""


class UnknownSymbolError(IfsShadowError, KeyError):
    """A symbol is not part of the system's index set."""


class InfeasibleParameterError(IfsShadowError, ValueError):
    """Parameters cannot satisfy the requested guarantee (e.g. jump/period >= delta)."""


class ValidationFailedError(IfsShadowError, ValueError):
    """An orbit does not meet the validation level an operation requires."""


class PreimageError(IfsShadowError, ValueError):
    """No usable preimage exists for a backward orbit step."""


class ConjugacyError(IfsShadowError, ValueError):
    """The supplied change of coordinates fails its round-trip check."""


class BudgetExceededError(IfsShadowError, ValueError):
    """A search would exceed the configured evaluation budget."""
