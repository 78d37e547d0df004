"""Exception hierarchy shared by all holomotion modules."""


class HolomotionError(Exception):
    """Base class for every error raised by this package."""


class DomainError(HolomotionError, ValueError):
    """A parameter or point lies outside the documented domain of an operation."""


class OrbitOverflow(HolomotionError, ArithmeticError):
    def __init__(self, index, value):
        super().__init__(f"orbit became non-finite at index {index} (value {value!r})")
        self.index = index
        self.value = value


class PreCritical(HolomotionError, ArithmeticError):
    """Some iterate hit the critical point, so the derivative product vanishes."""

    def __init__(self, index):
        super().__init__(f"derivative product vanishes at step {index}")
        self.index = index


class SeriesDivergence(HolomotionError, ArithmeticError):
    """The derivative series terms stopped decreasing; the orbit left the Julia set."""


class NonReal(DomainError):
    pass


class Singular(DomainError):
    """Point too close to a singularity of the metric (0 or 1)."""


class BoundViolation(HolomotionError, AssertionError):
    pass


class OrbitHitsBoundary(HolomotionError, ValueError):
    def __init__(self, index):
        super().__init__(f"orbit hits a semicircle endpoint at step {index}")
        self.index = index


class HitsCritical(HolomotionError, ValueError):
    def __init__(self, index):
        super().__init__(f"critical orbit returns to 1/2 at symbol {index}")
        self.index = index


class CriticalNotInJulia(HolomotionError, ValueError):
    pass


class EPeriodic(HolomotionError, ValueError):
    pass


class BudgetExceeded(HolomotionError, MemoryError):
    pass
