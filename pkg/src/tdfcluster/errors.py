"""Exception hierarchy shared by all tdfcluster modules."""


class TdfError(Exception):
    """Base class for every error raised by tdfcluster."""


class SpecError(TdfError, ValueError):
    """A family spec, graph spec, or file could not be parsed or is invalid."""


class IndexOutOfRange(TdfError, IndexError):
    pass


class EntangleUnexcited(TdfError, ValueError):
    pass


class InvalidPermutation(TdfError, ValueError):
    pass


class ScheduleError(TdfError, ValueError):
    """A schedule violates one of its structural invariants."""


class MaskViolation(ScheduleError):
    """A gate mask references a vacuum (unexcited) slot."""


class DelayMismatch(ScheduleError):
    pass


class EmbeddingInfeasible(TdfError):
    """No unit-step lattice embedding exists or the search ran out of budget.

    ``reason`` is ``"capacity"`` when F(a, d) <= 0 and ``"exhausted"`` when
    the backtracking search gave up.
    """

    def __init__(self, message: str, reason: str):
        super().__init__(message)
        self.reason = reason


class NotGraphState(TdfError):
    pass


class TooLarge(TdfError, ValueError):
    pass


class OutOfRange(TdfError, ValueError):
    pass
