"""Exception types shared across the package."""


class PancylabError(Exception):
    """Base class for all package-specific errors."""


class LoopEdge(PancylabError):
    pass


class DuplicateEdge(PancylabError):
    pass


class IndexOutOfRange(PancylabError):
    pass


class MissingEdge(PancylabError):
    pass


class DisconnectedSet(PancylabError):
    pass


class MinDegreeTooLow(PancylabError):
    pass


class MalformedGraph6(PancylabError):
    pass


class ParamTooSmall(PancylabError):
    pass


class DegenerateCycle(PancylabError):
    pass


class LengthOutOfRange(PancylabError):
    pass


class ParamOutOfRange(PancylabError):
    pass


class EdgeNotInBlock(PancylabError):
    pass


class NoSuchPath(PancylabError):
    pass


class RecipeInapplicable(PancylabError):
    pass


class RangeUnsatisfiable(PancylabError):
    pass


class GapError(PancylabError):
    """No recipe applied and the fallback search exhausted its budget."""


class CounterexampleError(PancylabError):
    """The fallback search proved that no such cycle exists."""


class OrderTooLarge(PancylabError):
    pass


class BadKind(PancylabError):
    pass


class UsageError(PancylabError):
    pass
