"""Exception hierarchy shared by all phasekit modules."""


class PhaseKitError(ValueError):
    """Base class for every validation error raised by phasekit."""


class DimensionMismatch(PhaseKitError):
    pass


class InvalidState(PhaseKitError):
    """A vector or matrix fails the invariants of a quantum state."""


class BlochOutOfBall(PhaseKitError):
    pass


class NotUnitary(PhaseKitError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class CompletenessViolation(PhaseKitError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class IndexOutOfRange(PhaseKitError, IndexError):
    pass


class ParamOutOfRange(PhaseKitError):
    pass


class WeightSumInvalid(PhaseKitError):
    pass


class NormInvalid(PhaseKitError):
    pass


class RedundantKrausWarning(UserWarning):
    """More Kraus operators than the ``d²`` any channel needs."""
