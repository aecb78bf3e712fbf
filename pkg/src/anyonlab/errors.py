"""Exception types shared across the package."""


class AnyonLabError(Exception):
    """Base class for all package errors."""


class NotAUnit(AnyonLabError):
    """Element (scalar or series) has no multiplicative inverse mod d."""


class DimensionMismatch(AnyonLabError):
    """Operands disagree on qudit dimension d or cell width w."""


class WindowOverflow(AnyonLabError):
    """A monomial falls outside the truncation window; never clipped silently."""


class WindowTooSmall(AnyonLabError):
    """Truncation region cannot hold a single full stabilizer translate."""


class UnknownCode(AnyonLabError):
    """Requested catalog code name does not exist."""


class ParseError(AnyonLabError):
    """Malformed code or geometry file."""

    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column


class ValidationError(AnyonLabError):
    """Code file violates a structural invariant (e.g. non-commuting generators)."""


class StringTooShort(AnyonLabError):
    """String operator too short for a well-defined spin/braiding commutator."""


class GroupTooLarge(AnyonLabError):
    """Anyon group exceeds the enumeration cap."""


class CommutationFailure(AnyonLabError):
    """Could not find mutually commuting condensation strings within the cap."""


class NonTermination(AnyonLabError):
    """Iterative completion exceeded its iteration cap."""


class IncompatibleCodes(AnyonLabError):
    """Defect construction requires both sides to share the qudit dimension."""


class RegionEmpty(AnyonLabError):
    """Render region contains no operator support."""
