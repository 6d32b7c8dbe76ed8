class WorkbenchError(Exception):
    """Base class for every domain error raised by the workbench."""

    code = "workbench-error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_json(self):
        error = {"code": self.code, "message": self.message}
        if self.details:
            error["details"] = self.details
        return {"error": error}


class ArithmeticOverflowError(WorkbenchError):
    code = "arithmetic-overflow"


class NormalizationError(WorkbenchError):
    code = "normalization"


class AmbientMismatchError(WorkbenchError):
    code = "ambient-mismatch"


class TruncationOverflowError(WorkbenchError):
    code = "truncation-overflow"


class BelowPrecisionError(WorkbenchError):
    code = "below-precision"

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound

    def to_json(self):
        payload = super().to_json()
        if self.bound is not None:
            payload["error"]["bound"] = self.bound.to_json()
        return payload


class NonIntegralError(WorkbenchError):
    code = "non-integral"


class PrecisionMismatchError(WorkbenchError):
    code = "precision-mismatch"


class WittCapExceededError(WorkbenchError):
    code = "witt-cap-exceeded"


class WittCacheCorruptError(WorkbenchError):
    code = "witt-cache-corrupt"


class DescriptorMismatchError(WorkbenchError):
    code = "descriptor-mismatch"


class BoundednessViolationError(WorkbenchError):
    code = "boundedness-violation"


class NotPowerMultiplicativeError(WorkbenchError):
    code = "not-power-multiplicative"


class UnsupportedFamilyError(WorkbenchError):
    code = "unsupported-family"


class UnsupportedIdealError(WorkbenchError):
    code = "unsupported-ideal"


class UnsupportedPresentationError(WorkbenchError):
    code = "unsupported-presentation"


class InvalidFractionError(WorkbenchError):
    code = "invalid-fraction"


class FamilyIncompleteError(WorkbenchError):
    code = "family-incomplete"


class UnsupportedConfigurationError(WorkbenchError):
    code = "unsupported-configuration"


class InputFormatError(WorkbenchError):
    code = "input-format"
