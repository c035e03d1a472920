"""Exception types shared across the package."""


class CardshareError(Exception):
    """Base class for every error raised by this package."""


class InvalidParams(CardshareError):
    """A parameter constraint is violated; subclasses name which one."""


# --- finite fields ---------------------------------------------------------

class NotAPrimePower(InvalidParams):
    """The requested field order is not p**k for any prime p."""


class SpecMismatch(CardshareError):
    """Operands belong to different field constructions and cannot combine."""


class DivisionByZero(CardshareError, ZeroDivisionError):
    pass


# --- geometry --------------------------------------------------------------

class DimensionMismatch(CardshareError):
    pass


class PointNotOnHyperplane(CardshareError):
    pass


class NoneContains(CardshareError):
    """No transversal hyperplane contains all of the given points."""


class Ambiguous(CardshareError):
    """More than one transversal hyperplane contains all of the given points."""


# --- suitability of protocol parameters -------------------------------------

class TooFewAgents(InvalidParams):
    pass


class QNotAboveM(InvalidParams):
    pass


class AliceSizeWrong(InvalidParams):
    pass


class BobTooSmall(InvalidParams):
    pass


class TotalSizeWrong(InvalidParams):
    pass


class InfeasibleParams(InvalidParams):
    pass


# --- protocol ---------------------------------------------------------------

class DeckSizeMismatch(CardshareError):
    pass


class HandSizeWrong(CardshareError):
    pass


class HandNotOnHyperplane(CardshareError):
    pass


class InconsistentRun(CardshareError):
    """A transcript admits no deal compatible with the reconstructing hand."""


# --- eavesdropper -----------------------------------------------------------

class MalformedRun(CardshareError):
    pass


class TooLarge(CardshareError):
    """Brute-force enumeration would exceed the safety guard."""


# --- sessions ----------------------------------------------------------------

class SessionComplete(CardshareError):
    pass


class SessionIncomplete(CardshareError):
    pass
