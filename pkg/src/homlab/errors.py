"""Exception hierarchy. Every error raised by homlab derives from HomlabError."""


class HomlabError(ValueError):
    pass


# posets
class ClosureViolation(HomlabError):
    pass


class NoMinimum(HomlabError):
    pass


class UnknownElement(HomlabError, KeyError):
    pass


class NoTop(HomlabError):
    pass


class BadParameter(HomlabError):
    pass


# graphs
class UnknownVertex(HomlabError, KeyError):
    pass


class BaseContainsVertex(HomlabError):
    pass


class BaseMismatch(HomlabError):
    pass


class InvalidGraph(HomlabError):
    pass


# morphisms
class PosetMismatch(HomlabError):
    pass


class VertexInDomain(HomlabError):
    pass


class NotHomomorphism(HomlabError):
    pass


class NotMonomorphism(HomlabError):
    pass


class NonLinearQ(HomlabError):
    pass


# constructions
class SizeExplosion(HomlabError):
    pass


class DirectedQ(HomlabError):
    pass


class NonDirectedQ(HomlabError):
    pass


class LinearQ(HomlabError):
    pass


class IndexOutOfRange(HomlabError):
    pass


class EqualIndices(HomlabError):
    pass


class WrongGenerator(HomlabError):
    pass


class NonInjectivePattern(HomlabError):
    pass
