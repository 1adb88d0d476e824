"""Exception types raised by the library."""


class SplitOctError(Exception):
    pass


class ZeroNorm(SplitOctError, ArithmeticError):
    """The element is a zero divisor (norm^2 ~ 0)."""


class LightLikeVector(SplitOctError, ArithmeticError):
    """Positive-norm element whose vector part is light-like; no polar direction."""


class DomainViolation(SplitOctError, ValueError):
    """A hyperbolic plane decomposition has a non-positive 2-norm radicand."""


class NoMatch(SplitOctError):
    """A linearized transformation lies outside the generator span."""


class ZeroMomentum(SplitOctError, ValueError):
    pass


class SingularFrame(SplitOctError, ZeroDivisionError):
    pass


class VirtualRegime(SplitOctError, ValueError):
    """Negative Lagrangian radicand; ``radicand`` holds its value."""

    def __init__(self, radicand: float):
        super().__init__(f"Lagrangian radicand is negative ({radicand:g}): virtual trajectory")
        self.radicand = radicand


class NotNullTrajectory(SplitOctError, ValueError):
    pass
