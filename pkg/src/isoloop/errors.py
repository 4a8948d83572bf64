"""Exception hierarchy for isoloop.

Every error raised by the library derives from IsoloopError so callers can
catch the whole family at one place (the CLI maps subfamilies to exit codes).
"""


class IsoloopError(Exception):
    """Base class for all isoloop errors."""


class DuplicatePoint(IsoloopError):
    """Two points of a configuration coincide (the map is not an embedding)."""


class OrbitCollision(IsoloopError):
    """A generated orbit circle passes through or around a bystander point."""


class ParseError(IsoloopError):
    """A trajectory/word file could not be parsed at all."""


class SchemaError(IsoloopError):
    """A parsed file does not match the documented schema."""


class InvariantViolation(IsoloopError):
    """A structurally valid file describes an invalid trajectory."""


class AmbiguousStep(IsoloopError):
    """A step's x-order change cannot be resolved into crossing events.

    Carries the offending step index in ``step`` when known.
    """

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class Collision(IsoloopError):
    """Two points coincide at a sample or under in-step interpolation."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class WordOverflow(IsoloopError):
    """A loop-class representative exceeded the configured length cap."""


class ChartError(IsoloopError):
    """The x-order chart is undefined (repeated x-coordinates)."""


class NotCoarsenable(IsoloopError):
    """The loop class has no representative avoiding the cluster disks."""


class StepTooLarge(IsoloopError):
    """A trajectory step moves a point too far for the bump carry."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class ProximityViolation(IsoloopError):
    """A polyline vertex is too close to a puncture."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DegenerateCrossing(IsoloopError):
    """Ray-crossing reads stayed degenerate after perturbation retries."""
