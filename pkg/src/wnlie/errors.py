"""Exception hierarchy shared by every subpackage."""


class WnlieError(Exception):
    """Base class for all library errors."""


class DimensionMismatch(WnlieError, ValueError):
    pass


class InconsistentSystem(WnlieError, ValueError):
    pass


class NotMonic(WnlieError, ValueError):
    pass


class Reducible(WnlieError, ValueError):
    def __init__(self, msg, root=None):
        super().__init__(msg)
        self.root = root


class JacobiViolation(WnlieError, ValueError):
    def __init__(self, msg, triple=None, defect=None):
        super().__init__(msg)
        self.triple = triple
        self.defect = defect


class NotAnIdeal(WnlieError, ValueError):
    pass


class NotADerivation(WnlieError, ValueError):
    pass


class NotADerivationAction(NotADerivation):
    pass


class WindowOverflow(WnlieError, ArithmeticError):
    pass


class NoReductionFound(WnlieError):
    def __init__(self, msg, offending_fiber=None, tried=0):
        super().__init__(msg)
        self.offending_fiber = offending_fiber
        self.tried = tried


class DuplicatePuncture(WnlieError, ValueError):
    pass


class NotCommutativeAssociative(WnlieError, ValueError):
    pass


class NotTraceless(WnlieError, ValueError):
    pass


class CaseARequiresSlN(WnlieError, ValueError):
    pass


class NotAffine(WnlieError, ValueError):
    pass


class SplitFailed(WnlieError):
    pass


class ShapeMismatch(WnlieError, ValueError):
    pass


class NotSplit(WnlieError):
    def __init__(self, msg, factor=None):
        super().__init__(msg)
        self.factor = factor


class RankNotOne(WnlieError, ValueError):
    pass


class UnsupportedType(WnlieError, ValueError):
    pass


class BoundExceeded(WnlieError):
    pass


class ParseError(WnlieError, ValueError):
    def __init__(self, msg, location=None):
        super().__init__(f"{location}: {msg}" if location else msg)
        self.location = location


class UnknownCommand(WnlieError, ValueError):
    pass
