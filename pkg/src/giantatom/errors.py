"""Exception types shared across the simulation modules."""


class GiantAtomError(Exception):
    """Base class for all errors raised by this package."""


class GridError(GiantAtomError):
    """No uniform time grid aligns with the delay and the profile breakpoints."""


class StabilityError(GiantAtomError):
    """The atomic amplitude left the unit disk; the step is too coarse."""


class BoundaryLeakError(GiantAtomError):
    """Field amplitude reached the ends of the finite chain."""


class DomainError(GiantAtomError, ValueError):
    """An operation was called outside the parameter domain where it is defined."""


class RangeError(GiantAtomError, IndexError):
    """A requested time lies outside the stored trajectory."""


class FitError(GiantAtomError):
    """A least-squares fit did not describe the data."""


class ValidationError(GiantAtomError, ValueError):
    """A parameter violates a model invariant."""


class ParseError(GiantAtomError, ValueError):
    """A configuration document could not be parsed."""
