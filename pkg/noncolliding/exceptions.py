class NonCollidingError(Exception):
    pass


class ValidationFailure(NonCollidingError):
    """Inputs violate the preconditions of an operation"""
    pass


class NumericalFailure(NonCollidingError):
    """A numerical method failed on valid inputs"""
    pass


class PoleError(ValidationFailure):
    """Function evaluated at one of its poles"""
    pass


class BranchCutError(ValidationFailure):
    """Logarithm evaluated on its branch cut"""
    pass


class SingularityError(ValidationFailure):
    """Real argument lies on the singular set of the action"""
    pass


class InvalidTimeError(ValidationFailure):
    """Kernel queried at a time outside its range"""
    pass


class TimeRangeError(ValidationFailure):
    """Time index beyond the sampled or allowed horizon"""
    pass


class DuplicatePointError(ValidationFailure):
    """Correlation requested at a repeated space-time point"""
    pass


class DomainError(ValidationFailure):
    """Parameter outside its admissible domain"""
    pass


class ParameterError(ValidationFailure):
    """Inconsistent combination of generator parameters"""
    pass


class InvalidProfileError(ValidationFailure):
    """Density or height profile violates its invariants"""
    pass


class InvalidSpecError(ValidationFailure):
    """Tiling specification violates its invariants"""
    pass


class ContourSizeError(ValidationFailure):
    """Trapezoid too small for the shifted initial configuration"""
    pass


class NormalizationError(ValidationFailure):
    """Probability density does not have unit mass"""
    pass


class MonotonicityError(ValidationFailure):
    """Generated configuration is not strictly increasing"""
    pass


class MultipleZeroError(ValidationFailure):
    """Profile function has more than one zero"""
    pass


class InstanceTooLargeError(ValidationFailure):
    """Instance exceeds the bounds of an exhaustive oracle"""
    pass


class ScenarioError(ValidationFailure):
    """Scenario configuration cannot be run"""
    pass


class ManifestError(ValidationFailure):
    """Artifact directory has no readable manifest"""
    pass


class QuadratureError(NumericalFailure):
    """Quadrature did not converge within its panel budget"""
    pass


class ImaginaryLeakError(NumericalFailure):
    """Real-valued quantity came out with a large imaginary part"""
    pass


class NoRootError(NumericalFailure):
    """No root in the search region"""
    pass


class MultipleRootError(NumericalFailure):
    """More roots than the theory allows in the search region"""
    pass


class ContinuationError(NumericalFailure):
    """Level-curve continuation lost the curve"""
    pass


class ConditioningError(NumericalFailure):
    """Conditioned kernel became singular during sampling"""
    pass


class PathDegeneracyError(NumericalFailure):
    """Integration path too close to a singularity"""
    pass
