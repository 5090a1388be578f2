"""Exception types shared across the library."""


class InvalidInputError(ValueError):
    """An argument violates an operation's contract."""


class UnsupportedInputError(ValueError):
    """The input is deliberately out of scope (e.g. a singular game matrix)."""


class NumericalError(RuntimeError):
    """A computation could not certify its result at the requested tolerance."""


class JuryInconclusiveError(NumericalError):
    """The Jury table degenerated; fall back to the root-based verdict."""


class InsufficientDataError(InvalidInputError):
    """A trajectory has too few usable samples for rate estimation."""


class InvalidBracketError(InvalidInputError):
    """A bisection bracket does not straddle a verdict change."""
