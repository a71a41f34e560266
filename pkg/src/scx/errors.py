"""Exception hierarchy shared by every module."""


class ScxError(Exception):
    """Base class for all library errors."""


class NegativeWeight(ScxError, ValueError):
    pass


class EmptyFacet(ScxError, ValueError):
    pass


class NotAFacet(ScxError, ValueError):
    pass


class NotASubcomplex(ScxError, ValueError):
    pass


class NotProper(ScxError, ValueError):
    """The positive-weight part of a difference is not closed under inclusion."""


class NotAComplex(ScxError, ValueError):
    pass


class NotSymmetric(ScxError, ValueError):
    pass


class InvalidMap(ScxError, ValueError):
    """A vertex map that does not send faces onto faces."""


class NegativeInducedWeight(ScxError, ValueError):
    pass


class SourceNotConnected(ScxError, ValueError):
    pass


class NotACovering(ScxError, ValueError):
    pass


class NotStrong(ScxError, ValueError):
    pass


class NotConstant(ScxError, ValueError):
    pass


class NotFree(ScxError, ValueError):
    pass


class NotContractible(ScxError, ValueError):
    pass


class NotPure(ScxError, ValueError):
    pass


class HypothesisError(ScxError, ValueError):
    """Inputs do not satisfy the hypotheses of the requested theorem check."""


class ParseError(ScxError, ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, path: str = ""):
        self.line = line
        self.column = column
        self.path = path
        where = f"{path}:" if path else ""
        super().__init__(f"{where}{line}:{column}: {message}")
