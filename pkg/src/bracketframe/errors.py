"""Exception hierarchy for bracketframe."""


class BracketFrameError(Exception):
    """Base class for all library errors."""


class GridMismatch(BracketFrameError, ValueError):
    pass


class IncompatibleDilation(BracketFrameError, ValueError):
    pass


class NotRealValued(BracketFrameError, ValueError):
    pass


class ZeroWindow(BracketFrameError, ValueError):
    pass


class IndexOutOfRange(BracketFrameError, IndexError):
    pass


class LatticeNotCritical(BracketFrameError, ValueError):
    pass


class EmptyProbeSet(BracketFrameError, ValueError):
    pass


class NotFactorable(BracketFrameError, ValueError):
    def __init__(self, residual):
        self.residual = residual
        super().__init__(
            f"operator does not commute with periodic modulations "
            f"(relative residual {residual:.3e})"
        )


class ADependent(BracketFrameError, ValueError):
    """Raised by Gram-Schmidt when an input lies in the modulation span of its predecessors."""

    def __init__(self, index):
        self.index = index
        super().__init__(f"input {index} is bracket-dependent on the preceding inputs")


class NotConverged(BracketFrameError, RuntimeError):
    def __init__(self, iters, what="iteration"):
        self.iters = iters
        super().__init__(f"{what} did not converge in {iters} iterations")


class SingularFrameOperator(BracketFrameError, ArithmeticError):
    pass


class UnknownWindow(BracketFrameError, ValueError):
    pass


class BadParameter(BracketFrameError, ValueError):
    pass
