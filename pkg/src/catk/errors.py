"""Exception hierarchy shared by every catk module."""


class CatkError(Exception):
    """Base class for all errors raised by catk."""


class InvalidInputError(CatkError, ValueError):
    pass


class NumericalDomainError(CatkError, ArithmeticError):
    pass


class InfeasibleError(CatkError, ValueError):
    pass


class HypothesisViolation(CatkError):
    """A comparison statement was invoked outside its hypotheses."""

    def __init__(self, flag, message=None):
        self.flag = flag
        super().__init__(message or f"hypothesis violated: {flag}")


class AccuracyError(CatkError):
    def __init__(self, drift, tol):
        self.drift = drift
        self.tol = tol
        super().__init__(f"unit-speed drift {drift:.3e} exceeds tolerance {tol:.3e}")


class ResolutionError(CatkError, ValueError):
    pass


class ConvexificationFailure(CatkError):
    def __init__(self, reflex, message=None):
        self.reflex = list(reflex)
        super().__init__(message or f"convexification did not converge; reflex vertices {self.reflex}")


class ImmersionFailure(CatkError):
    def __init__(self, u, v, det):
        self.node = (u, v)
        self.det = det
        super().__init__(f"first fundamental form degenerate at (u, v) = ({u:.6g}, {v:.6g}), det = {det:.3e}")


class TopologyError(CatkError):
    pass


class TransversalityError(CatkError):
    pass


class BoundaryError(CatkError, ValueError):
    pass
