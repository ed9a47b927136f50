"""Exception types. Each carries a short machine-readable ``code``."""


class MedRadiusError(ValueError):
    code = "error"

    def __init__(self, message=None):
        super().__init__(message or self.code)


class EmptySampleError(MedRadiusError):
    code = "empty-sample"


class DimensionError(MedRadiusError):
    code = "dimension-mismatch"


class DegenerateScaleError(MedRadiusError):
    """Raised when the central median radius is zero (half the mass on one point)."""

    code = "degenerate-scale"


class CenterNotMinimalError(MedRadiusError):
    code = "center-not-minimal"


class SingularCovarianceError(MedRadiusError):
    code = "singular-covariance"


class AllDirectionsDegenerateError(MedRadiusError):
    code = "all-directions-degenerate"


class ConstantInputError(MedRadiusError):
    code = "constant-input"


class InputError(MedRadiusError):
    code = "input-error"
