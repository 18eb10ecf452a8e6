"""Exception hierarchy for topzeta."""


class ZetaError(Exception):
    """Base class for every error raised by this package."""


class NotDivisible(ZetaError):
    pass


class OriginInSupport(ZetaError):
    """f(0) != 0: the point is not on the hypersurface."""


class EmptySupport(ZetaError):
    pass


class NotCompact(ZetaError):
    pass


class DependentNormals(ZetaError):
    pass


class WrongDim(ZetaError):
    pass


class NotAVertex(ZetaError):
    pass


class BrokenFan(ZetaError):
    """The facets around a vertex do not form a single cycle."""


class InvalidParams(ZetaError):
    pass


class ZeroPolynomial(ZetaError):
    pass


class PolySyntaxError(ZetaError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
