"""Exception hierarchy shared by every module of the package."""


class AlgebraError(ValueError):
    """Base class for invalid inputs to algebra routines."""


class ArityMismatch(AlgebraError):
    pass


class IndexOutOfRange(AlgebraError):
    pass


class ArityBound(AlgebraError):
    """Arity or carrier size outside the configured construction limits."""


class CarrierMismatch(AlgebraError):
    pass


class SizeMismatch(AlgebraError):
    pass


class CarrierTooLarge(AlgebraError):
    pass


class BudgetExceeded(AlgebraError):
    """An exhaustive scan would exceed the evaluation budget.

    Callers may fall back to :func:`mnsemiring.constructions.sampled_verify`.
    """

    def __init__(self, needed, budget):
        super().__init__(f"exhaustive check needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


class NoIdentity(AlgebraError):
    pass


class IdentityConflict(AssertionError):
    """Two distinct elements satisfy the identity law; cannot happen for a genuine table."""


class NotACongruence(AlgebraError):
    pass


class NotAHomomorphism(AlgebraError):
    pass


class EmptySubset(AlgebraError):
    pass


class EmptyIntersection(AlgebraError):
    pass


class PositionOutOfRange(AlgebraError):
    pass


class TermSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at offset {position}")
        self.position = position


class EmptyOperator(TermSyntaxError):
    pass


class UnassignedAtom(KeyError):
    pass


class PosetCycle(ValueError):
    pass


class TermTooWide(ValueError):
    pass


class FormatError(ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
