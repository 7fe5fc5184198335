"""Exception types raised across the package.

Every contract violation gets its own class so callers (and the CLI exit-code
mapping) can discriminate without parsing messages.  All of them derive from
CapforgeError.
"""


class CapforgeError(Exception):
    pass


class UsageError(CapforgeError, ValueError):
    """Bad input or violated precondition."""


# field ---------------------------------------------------------------------

class EvenCharacteristic(UsageError):
    pass


class CompositeCharacteristic(UsageError):
    pass


class ReducibleModulus(UsageError):
    pass


class DivisionByZero(UsageError):
    pass


class ZeroToNegativePower(UsageError):
    pass


class NonDivisorM(UsageError):
    pass


class ZeroInput(UsageError):
    pass


class NoSuchElement(UsageError):
    pass


# plane ---------------------------------------------------------------------

class DuplicatePoints(UsageError):
    pass


class NotCollinear(UsageError):
    pass


class MixedDimensions(UsageError):
    pass


# cubic ---------------------------------------------------------------------

class UnsupportedCharacteristic(UsageError):
    """The nodal cubic machinery needs p > 3."""


class ZeroParam(UsageError):
    pass


class NotOnCubic(UsageError):
    pass


class SingularPoint(UsageError):
    pass


class InvalidCoset(UsageError):
    pass


class BadIndex(UsageError):
    pass


class NotThreeIndependent(UsageError):
    pass


class BadDivisibility(UsageError):
    pass


class BadGcd(UsageError):
    pass


# auxcurve ------------------------------------------------------------------

class PreconditionNotMet(UsageError):
    pass


class OnCubicPoint(UsageError):
    pass


class BadCosetPair(UsageError):
    pass


class NotFoundError(CapforgeError):
    """A witness search exhausted its domain.

    `domain` records how many candidates were scanned so callers can tell a
    genuine nonexistence proof from a truncated search.
    """

    def __init__(self, message, domain=None):
        super().__init__(message)
        self.domain = domain


# verify / lift -------------------------------------------------------------

class NotAnArc(UsageError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotACap(UsageError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class TooLarge(CapforgeError):
    """Resource gate: the requested exhaustive sweep exceeds configured bounds."""


class BadDimension(UsageError):
    pass
