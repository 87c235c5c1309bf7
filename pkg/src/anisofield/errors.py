"""Semantic exception hierarchy.

Every failure mode of the lab maps to one of these classes so that callers
(and the CLI exit-code table) can react to the error family rather than
string-match messages.
"""


class AnisoFieldError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(AnisoFieldError, ValueError):
    """Parameter outside its mathematical domain (e.g. Q not in (1,2))."""


class BoundaryError(AnisoFieldError):
    """Parameters fall on a case boundary the theory deliberately omits."""


class SingularityError(AnisoFieldError, ZeroDivisionError):
    """Evaluation requested at a singular point (e.g. the origin)."""


class TruncationError(AnisoFieldError):
    """Kernel truncation tail exceeds the configured tolerance."""


class ConvergenceError(AnisoFieldError):
    """A series truncation bound exceeds the requested tolerance."""


class MemoryCapError(AnisoFieldError, MemoryError):
    """Requested array would exceed the configured memory cap."""


class SizeCapError(AnisoFieldError):
    """Brute-force computation exceeds its size cap."""


class DimensionMismatch(AnisoFieldError, ValueError):
    """Array shapes incompatible with the requested operation."""


class OutOfBounds(AnisoFieldError, IndexError):
    """Requested rectangle does not fit inside the field."""


class DegenerateVariance(AnisoFieldError):
    """Sample variance indistinguishable from zero."""


class SingularFit(AnisoFieldError):
    """Regression design matrix is singular (e.g. < 2 distinct abscissae)."""


class QuadratureError(AnisoFieldError):
    """Quadrature refinement failed to stabilize within budget."""


class RankError(AnisoFieldError, ValueError):
    """Hermite coefficient list violates the declared rank."""


class ParseError(AnisoFieldError, ValueError):
    """Malformed configuration document."""


class ValidationError(AnisoFieldError, ValueError):
    """Well-formed configuration violating a cross-field constraint."""


class IoError(AnisoFieldError, OSError):
    """Filesystem failure while persisting results."""
