"""Exception hierarchy shared across the package."""


class NewformError(Exception):
    """Base class for all package-specific errors."""


class SingularCurve(NewformError):
    """Weierstrass data with vanishing discriminant."""


class UnsupportedReduction(NewformError):
    """Multiplicative reduction at p in {2, 3}: split/nonsplit undecidable here."""


class NonUnitConstantTerm(NewformError):
    """Series inversion requires constant term +1 or -1 (nonzero in rational mode)."""


class NonMonicSeries(NewformError):
    """Operation requires a series of the shape q + O(q^2)."""


class InternalIntegralityFailure(NewformError):
    """Moebius inversion produced a non-integer exponent; indicates a bug."""


class PrecisionExceeded(NewformError):
    """Requested data lies beyond the truncation order of the inputs."""


class IncompatibleExponent(NewformError):
    """Requested exponent is not representable on the series' fractional grid."""


class BlockMismatch(NewformError):
    """Exponent sequence does not fit the claimed (r, t) block pattern."""


class ZeroSequence(NewformError):
    """Block inference needs at least one nonzero exponent."""


class TableMismatch(NewformError):
    """Recomputation contradicts an embedded table row; fatal fixture error."""


class SchemaViolation(NewformError):
    """Registry or fixture file fails structural validation."""


class UnknownLevel(NewformError):
    """No registry record exists for the requested conductor."""


class InvalidArgs(NewformError):
    """Theta arguments violate the formal convergence condition."""


class NetworkUnavailable(NewformError):
    """Remote lookup attempted while offline and not cached."""


class NotFound(NewformError):
    """Remote database has no record under the requested label."""


class ParseFailure(NewformError):
    """Remote payload could not be interpreted; raw text retained."""


class InsufficientData(NewformError):
    """Cross-check requested beyond the coefficients available on one side."""
