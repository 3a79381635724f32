"""Exception types shared across the package."""


class FrontlabError(Exception):
    """Base class for all frontlab errors."""


class ExpressionError(FrontlabError):
    """Syntax or validation error in a surface/metric expression.

    Carries a 0-based ``pos`` (column in the expression text) so callers
    can point at the offending token.
    """

    def __init__(self, message, pos=None):
        self.pos = pos
        if pos is not None:
            message = f"{message} (at column {pos + 1})"
        super().__init__(message)


class SpecFileError(FrontlabError):
    """Malformed surface spec document."""


class EvaluationError(FrontlabError):
    """Domain error while evaluating an expression as a jet.

    Raised for log/sqrt of a non-positive constant term, division by a
    jet with zero constant term, unbound parameters, and similar.
    """


class JetOrderError(FrontlabError):
    """Requested jet order exceeds the configured maximum."""


class DeflationError(FrontlabError):
    """A jet was not divisible by the requested variable.

    This signals that a quantity expected to vanish on the singular axis
    does not, i.e. a modeling error upstream, not numerical noise.
    """


class NormalResolutionError(FrontlabError):
    """A unit normal field could not be resolved or validated."""


class DegenerateSingularityError(FrontlabError):
    """The operation requires a non-degenerate singular point."""


class KindError(FrontlabError):
    """The operation is not applicable to this kind of singular point."""


class SliceError(FrontlabError):
    """Orthogonal slicing failed (wrong chart, cross cap, or degenerate cusp)."""


class MetricError(FrontlabError):
    """The ambient metric is degenerate or not positive definite."""
