"""Exception hierarchy shared by all modules."""


class DybeError(Exception):
    """Base class for all library errors."""


class PoleAtPoint(DybeError, ZeroDivisionError):
    """A rational function was evaluated where its denominator vanishes."""


class BothPrefactored(DybeError):
    """Both factors of a series product carry an exp(<lambda, mu>) prefactor."""


class UnsupportedRank(DybeError, ValueError):
    pass


class NotDominant(DybeError, ValueError):
    pass


class NonGenericWeight(DybeError):
    """A sampled weight hit a reducibility or pole hyperplane."""


class SingularSystem(NonGenericWeight):
    """The intertwiner linear system has no unique solution at this weight."""


class SingularQ(NonGenericWeight):
    pass


class NonHomogeneousVector(DybeError, ValueError):
    pass


class DepthExceeded(DybeError):
    pass


class EmptyZeroWeightSpace(DybeError, ValueError):
    pass


class ParseError(DybeError, ValueError):
    pass
