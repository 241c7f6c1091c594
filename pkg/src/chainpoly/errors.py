"""Exception hierarchy shared by all modules."""


class ChainPolyError(Exception):
    """Base class for every error raised by this package."""


class CycleError(ChainPolyError):
    pass


class LabelError(ChainPolyError):
    pass


class ParseError(ChainPolyError):
    pass


class NotMaximalChainError(ChainPolyError):
    pass


class EqualChainsError(ChainPolyError):
    pass


class WitnessError(ChainPolyError):
    pass


class NotApplicableError(ChainPolyError):
    pass


class NotClosedError(ChainPolyError):
    pass


class NotNestedError(ChainPolyError):
    pass


class CapExceededError(ChainPolyError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} maximal chains exceeds the cap of {cap}")
        self.count = count
        self.cap = cap


class DimensionMismatchError(ChainPolyError):
    pass


class MissingWeightError(ChainPolyError):
    pass
