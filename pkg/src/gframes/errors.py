"""Exception types shared across the package."""


class GFramesError(Exception):
    """Base class for every error raised by this package."""


class StructuralError(GFramesError, ValueError):
    """Shapes, signatures or serialized payloads do not line up."""


class PreconditionError(GFramesError, ValueError):
    """A mathematical precondition of the requested operation fails."""


class NotReconstructionSystemError(PreconditionError):
    """The summed block Gram matrix is singular where invertibility is required."""


class SamplingError(GFramesError, RuntimeError):
    """A randomized draw failed to produce an acceptable sample within budget."""
