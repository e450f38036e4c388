class QclawError(Exception):
    """Base class for library errors."""


class ContextMismatch(QclawError):
    pass


class NotDivisible(QclawError):
    pass


class ZeroElement(QclawError):
    pass


class RankDeficient(QclawError):
    pass


class NoUniqueMaxDegree(QclawError):
    pass


class LeadingCoefficientNotUnit(QclawError):
    pass


class Incompatible(QclawError):
    pass


class NotLaurent(QclawError):
    pass


class PermutationMixesFrozen(QclawError):
    pass


class IndexOutOfRange(QclawError):
    pass


class EmptyWord(QclawError):
    pass


class SameSign(QclawError):
    pass


class NotAShuffle(QclawError):
    pass


class SingularCartan(QclawError):
    pass


class NotReducedPair(QclawError):
    pass


class NonIntegerLambda(QclawError):
    pass


class IncompleteTable(QclawError):
    pass


class NotInSpan(QclawError):
    pass


class NonTerminating(QclawError):
    pass


class NonEssentialViolated(QclawError):
    pass


class NegativeOrder(QclawError):
    pass
