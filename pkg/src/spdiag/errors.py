"""Exception hierarchy shared by every module of the package."""


class SpdiagError(Exception):
    """Base class for all errors raised by spdiag."""


class InvalidInput(SpdiagError, ValueError):
    """Malformed diagonal, triangulation, poset or quiver data."""


class NotTypeA(SpdiagError):
    """A quiver or poset is not of type A where one is required."""


class CyclicQuiver(SpdiagError):
    pass


class NotSink(SpdiagError):
    pass


class DiagonalInT(SpdiagError):
    """The diagonal belongs to the triangulation, so it is not an object of C_T."""


class NotConvex(SpdiagError):
    pass


class NotAModule(SpdiagError):
    """A family of matrices violates the composition condition of an incidence-algebra module."""


class NotSpDiagonal(SpdiagError):
    pass


class InexactDivision(SpdiagError):
    """A Laurent polynomial division left a remainder."""


class IdentityFailed(SpdiagError):
    """A symbolic identity that must hold did not."""

    def __init__(self, message, vertex=None):
        super().__init__(message)
        self.vertex = vertex
