"""Exception hierarchy shared by the reconstruction modules."""


class ReconstructionError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(ReconstructionError, ValueError):
    pass


class ZeroVector(ReconstructionError, ValueError):
    pass


class IndexOutOfRange(ReconstructionError, IndexError):
    pass


class TooFewPoints(ReconstructionError, ValueError):
    pass


class DegenerateDirection(ReconstructionError):
    """Two vertices share a height in the queried direction."""


class NeedTwoVertices(ReconstructionError, ValueError):
    pass


class SingularIntersection(ReconstructionError):
    pass


class MatchCountMismatch(ReconstructionError):
    pass


class MinAngleTooSmall(ReconstructionError):
    """Bow tie half-angle fell below the configured assertion threshold."""

    def __init__(self, theta, threshold):
        super().__init__(f"bow tie half-angle {theta:.3e} < threshold {threshold:.3e}")
        self.theta = theta
        self.threshold = threshold


class ProjectionDegenerate(ReconstructionError):
    pass


class DegenerateConfiguration(ReconstructionError):
    """Raised by the Delaunay builder on (near-)cocircular or collinear input."""
