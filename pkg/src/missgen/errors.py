"""Exception types shared by every module of the package."""


class MissgenError(Exception):
    """Base class for all errors raised by missgen."""


class InvalidArgument(MissgenError, ValueError):
    pass


class NotInvertible(InvalidArgument):
    pass


class UnsupportedPrimeClass(MissgenError):
    """The prime is valid but lies outside the class an operation supports."""


class StructuralViolation(MissgenError):
    """A proven structural property failed to hold.

    Raised instead of silently continuing: it points either at a bug or at a
    counterexample to the claimed structure, and both need a human.
    """


class InconsistentTriplet(MissgenError, ValueError):
    pass


class AssumptionAExhausted(MissgenError):
    """No prime of the form 2^i * N^j + 1 was found inside the search bound."""


class PipelineInconsistency(MissgenError):
    pass
