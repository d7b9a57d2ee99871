"""Exception and warning types shared across the package."""


class SlipStabError(Exception):
    """Base class for every error this package raises on purpose."""


class NotPositiveDefinite(SlipStabError, ValueError):
    """The anti-plane stiffness matrix (or a density) is not positive definite."""


class NonpositiveVelocity(SlipStabError, ValueError):
    """Slip velocity must be strictly positive for the logarithmic friction law."""


class DomainError(SlipStabError, ValueError):
    """Argument lies outside the mathematical domain of the operation."""


class VelocityStrengthening(SlipStabError, ValueError):
    """Operation is only meaningful for steady-state velocity weakening (b > a)."""


class BranchPole(SlipStabError, ArithmeticError):
    """Transfer-function denominator vanished; cannot happen for physical input."""


class EmptyInterval(SlipStabError, ValueError):
    """The intersonic speed interval (c1, c1') is empty: equal wave speeds."""


class ContourThroughZero(SlipStabError, ArithmeticError):
    """A characteristic root sits on (or hugs) the counting contour after retries."""


class StepFailure(SlipStabError, RuntimeError):
    """ODE step size underflowed. Carries the last accepted state, if any."""

    def __init__(self, message, last_state=None):
        super().__init__(message)
        self.last_state = last_state


class BlowUp(SlipStabError, RuntimeError):
    """Velocity exceeded the runaway guard (reserved; runs normally flag and halt)."""


class Inconclusive(SlipStabError, RuntimeError):
    """Stiffness bisection could not classify growth vs decay within its budget."""


class InputError(SlipStabError, ValueError):
    """Malformed run configuration. The message names the offending field."""


class EmptyIntervalWarning(UserWarning):
    """Intersonic search requested for equal wave speeds; result is trivially empty."""
