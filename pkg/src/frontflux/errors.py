"""Exception and warning types raised by frontflux solvers."""


class FrontfluxError(Exception):
    """Base class for all frontflux failures."""


class ParameterError(FrontfluxError, ValueError):
    """Physical or numerical parameters violate a constraint."""


class DegenerateRecurrenceError(FrontfluxError):
    """The linear coefficient multiplying a new series term vanished."""

    def __init__(self, order, message=None):
        self.order = order
        super().__init__(message or f"recurrence is degenerate at order {order}")


class SeriesOverflowError(FrontfluxError):
    """Series coefficients grew past the configured magnitude guard."""

    def __init__(self, order, message=None):
        self.order = order
        super().__init__(message or f"coefficient blowup at order {order}")


class NonPhysicalProfileError(FrontfluxError):
    """The profile predicts a non-positive temperature at the origin."""


class NoSignChangeError(FrontfluxError):
    """A bracket scan found no sign change of the residual."""

    def __init__(self, message, signs=None):
        self.signs = signs
        super().__init__(message)


class SingularIntegrationError(FrontfluxError):
    """The integrated profile reached zero before the origin."""


class StepFailureError(FrontfluxError):
    """The adaptive integrator could not meet its tolerance."""


class FrontEscapeError(FrontfluxError):
    """The thermal front reached the right edge of the PDE domain."""


class NewtonDivergenceError(FrontfluxError):
    """Newton iteration failed to converge at a time step."""

    def __init__(self, t, dt, message=None):
        self.t = t
        self.dt = dt
        super().__init__(message or f"Newton failed at t={t:.6g} with dt={dt:.3g}")


class DomainMismatchError(FrontfluxError):
    """Two profiles share no common theta interval."""


class NonPhysicalProfileWarning(UserWarning):
    """A negative profile value was clamped to zero during reconstruction."""


class MultipleRootsWarning(UserWarning):
    """More than one bracketed root was found; the smallest was kept."""
