"""Exception hierarchy shared by the package."""


class DriccatiError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZero(DriccatiError, ZeroDivisionError):
    pass


class ZeroElement(DriccatiError, ValueError):
    """An operation needs a nonzero element (e.g. a Laurent expansion)."""


class ParseError(DriccatiError, ValueError):
    """Malformed expression text.

    ``pos`` is the 0-based character offset where parsing stopped and
    ``expected`` a short description of what would have been accepted there.
    """

    def __init__(self, message, pos=None, expected=None):
        self.pos = pos
        self.expected = expected
        where = "" if pos is None else f" at position {pos}"
        exp = "" if expected is None else f" (expected {expected})"
        super().__init__(f"{message}{where}{exp}")


class NonIntegerExponent(ParseError):
    pass


class EvalError(ParseError):
    """Grammatical input that does not denote a field element, like ``1/0``."""


class ShapeError(ParseError):
    pass


class PoleOfTransform(DriccatiError, ZeroDivisionError):
    pass


class SingularGauge(DriccatiError, ValueError):
    pass


class WrongForm(DriccatiError, ValueError):
    pass


class DegenerateInput(DriccatiError, ValueError):
    pass


class MissingDY(DriccatiError, ValueError):
    pass


class ZeroR(DriccatiError, ValueError):
    pass


class HypothesisNotCertified(DriccatiError, ValueError):
    pass


class NotQDilation(DriccatiError, ValueError):
    pass


class DegenerateOperator(DriccatiError, ValueError):
    pass
