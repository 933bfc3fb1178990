"""Exception hierarchy shared by all rittlab modules."""


class RittlabError(Exception):
    """Base class; ``kind`` is the machine-readable name used by the CLI."""

    @property
    def kind(self):
        return type(self).__name__


# numberfield
class ReduciblePolynomial(RittlabError):
    pass


class BoxContainsNoRoot(RittlabError):
    pass


class BoxContainsMultipleRoots(RittlabError):
    pass


class DivisionByZero(RittlabError, ZeroDivisionError):
    pass


class MixedFields(RittlabError):
    pass


# polyalg
class NotIrreduciblePrime(RittlabError):
    pass


class UnsupportedShape(RittlabError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


# exppoly / ritt / divgcd
class ZeroFunction(RittlabError):
    pass


class FactorSplit(RittlabError):
    def __init__(self, t, factors):
        super().__init__(f"candidate splits after refinement t={t}")
        self.t = t
        self.factors = factors


class DistinctSupports(RittlabError):
    pass


# efunc
class InsufficientInitialData(RittlabError):
    pass


class LeadingSingularity(RittlabError):
    pass


class CrossCheckMismatch(RittlabError):
    pass


class NonUnitConstantTerm(RittlabError):
    pass


class DivisionByZeroSeries(RittlabError):
    pass


# zeros
class ZeroOnBoundary(RittlabError):
    pass


class MaxDepth(RittlabError):
    pass


# bessel
class CertificationFailed(RittlabError):
    pass


# cli
class ParseError(RittlabError, SyntaxError):
    def __init__(self, msg, pos=None):
        super().__init__(msg if pos is None else f"{msg} at position {pos}")
        self.pos = pos


class ExponentNotAffine(ParseError):
    pass


class UnknownSymbol(ParseError):
    pass
