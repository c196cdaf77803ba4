"""Exception hierarchy shared across the package.

``DataError`` subclasses map to CLI exit code 2; everything else that is not
a usage error maps to exit code 3.
"""


class Cha2Error(Exception):
    """Base class for all package-specific errors."""


class UsageError(Cha2Error):
    """Bad command-line invocation or config file."""


class DataError(Cha2Error):
    """Problems caused by the input data rather than the code or the host."""


# --- string / token level ---------------------------------------------------

class MalformedToken(DataError):
    """A molecule string contains characters outside bracketed token groups."""


class UnknownToken(DataError):
    """A token is not part of the alphabet (or dialect)."""


class TooLong(DataError):
    """A token sequence exceeds the fixed maximum length."""


# --- molecular graphs -------------------------------------------------------

class UnsupportedElement(DataError):
    pass


class UnbalancedParenthesis(DataError):
    pass


class UnclosedRing(DataError):
    pass


class ValenceViolation(DataError):
    pass


class KekulizationFailure(DataError):
    pass


class EmptyMolecule(DataError):
    """Descriptor computation requested for the empty graph."""


class EmitError(DataError):
    """A valid graph cannot be expressed in the supported string dialect."""


# --- autoencoder ------------------------------------------------------------

class InvalidDimension(Cha2Error):
    pass


class ShapeMismatch(Cha2Error):
    pass


class EmptyTrainingSet(DataError):
    pass


class BadCheckpoint(DataError):
    """Checkpoint file is truncated or carries a foreign magic/version."""


# --- convex hull ------------------------------------------------------------

class DegeneratePointSet(DataError):
    """All input points coincide; no hull exists."""


class DimensionTooHigh(DataError):
    """Intrinsic dimension of the point set exceeds the supported maximum."""


class ZeroVolume(DataError):
    """Hull is degenerate in its own intrinsic space; cannot sample interior."""


# --- scoring ----------------------------------------------------------------

class EmptyConfig(Cha2Error):
    """Proxy score configuration carries no positively weighted curve."""


class ProtocolError(Cha2Error):
    """External scorer sent a line that violates the wire protocol."""


class ScorerUnavailable(Cha2Error):
    """External scorer process died, never started, or timed out."""


# --- pipeline ---------------------------------------------------------------

class MalformedCsv(DataError):
    pass


class EmptySplit(DataError):
    """A score-threshold split produced an empty training or hull set."""
