"""Exception hierarchy shared by every zcolor module."""


class ZColorError(Exception):
    """Base class for all errors raised by zcolor."""


class MalformedWord(ZColorError, ValueError):
    pass


class GeneratorOutOfRange(ZColorError, ValueError):
    pass


class NonPositiveStrands(ZColorError, ValueError):
    pass


class CrossingFreeComponent(ZColorError, ValueError):
    """A braid closure has a component that never passes under a crossing."""


class NotSquare(ZColorError, ValueError):
    pass


class LengthMismatch(ZColorError, ValueError):
    pass


class ClosureMismatch(ZColorError, ValueError):
    """Right-end colors differ from the left-end seed."""


class InvalidColoring(ZColorError, ValueError):
    """A coloring violates the crossing relation somewhere."""


class NotColorable(ZColorError):
    """The diagram has no nontrivial Z-coloring."""


class CarrierTooLarge(ZColorError):
    pass


class ComponentCountNotOne(ZColorError, ValueError):
    pass


class InvalidParams(ZColorError, ValueError):
    pass


class OddR(ZColorError, ValueError):
    pass


class UnsupportedParity(ZColorError, ValueError):
    pass


class BudgetExceeded(ZColorError):
    pass


class IoFailure(ZColorError, OSError):
    pass


class RackSpecError(ZColorError, ValueError):
    pass
