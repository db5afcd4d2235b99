"""Exception types shared across the toolkit."""


class SkyshotError(Exception):
    """Base class for all toolkit errors."""


class InvalidArgumentError(SkyshotError, ValueError):
    """An argument violates a documented precondition or invariant."""


class UnsupportedLatitudeError(InvalidArgumentError):
    """Geodetic conversion requested too close to a pole (|lat| >= 89.9 deg)."""


class DegenerateHeadingError(InvalidArgumentError):
    """A heading is required but undefined (e.g. chase of a stationary target)."""


class ZeroLengthShotError(InvalidArgumentError):
    """A shot parametrization collapses to a single point."""


class InsufficientDataError(SkyshotError):
    """Not enough samples/points to compute the requested quantity."""


class OutOfBoundsError(SkyshotError):
    """A query point lies outside the terrain lattice."""


class PlanParseError(SkyshotError):
    """A plan document is malformed or uses an unsupported feature."""


class SchemaVersionError(SkyshotError):
    """A project document has an unsupported schema version or unknown fields."""


class IntegrityError(SkyshotError):
    """A project document contains a dangling id reference."""


class ExportError(SkyshotError):
    """A plan cannot be serialized (non-finite values, conversion domain)."""


class StateConflictError(SkyshotError):
    """An operation is not allowed in the session's current run state."""
