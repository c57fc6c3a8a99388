"""Exception types shared across the package."""


class VarstrataError(Exception):
    pass


class ShapeError(VarstrataError, ValueError):
    pass


class RankError(VarstrataError, ValueError):
    pass


class ParseError(VarstrataError, ValueError):
    pass


class PreconditionError(VarstrataError, ValueError):
    """A query outside the standing hypotheses of a formula or predicate.

    ``hypothesis`` names the failing condition so callers can tell an
    ill-posed query from an empty stratum.
    """

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = f"precondition violated: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class ResourceError(VarstrataError, RuntimeError):
    pass


class ValidationError(VarstrataError, ValueError):
    """Structure failed validation; ``degree`` and ``witness`` locate the violation."""

    def __init__(self, message, degree=None, witness=None):
        self.degree = degree
        self.witness = witness
        super().__init__(message)


class InterpolationError(VarstrataError, ArithmeticError):
    pass
