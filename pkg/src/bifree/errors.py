"""Exception types shared across the package."""


class BifreeError(Exception):
    """Base class for all errors raised by this package."""


class SizeLimitError(BifreeError, ValueError):
    """An input exceeds the resource guard of an enumeration or transform."""


class DimensionError(BifreeError, ValueError):
    """Two objects that must live on the same ground set do not."""


class IncompleteNetError(BifreeError, KeyError):
    """A multiplicative net has no value for a requested side pattern."""


class CapOverflowError(BifreeError, OverflowError):
    """A Fock-space operation would produce a word longer than the cap."""


class UnsupportedShapeError(BifreeError, ValueError):
    """The faces of a distribution do not have the shape an operation needs."""
