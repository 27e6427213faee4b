"""Exception types shared across the package."""


class SpectralResolutionError(RuntimeError):
    """Grid could not resolve the requested number of bound states."""


class PropagationAccuracyError(RuntimeError):
    """Norm drift exceeded the hard accuracy bound (time step too coarse)."""

    def __init__(self, norm_drift: float, dt: float):
        self.norm_drift = norm_drift
        self.dt = dt
        super().__init__(
            f"norm drift {norm_drift:.3e} exceeds 1e-4 at dt={dt:g} ns; "
            "reduce the step size"
        )


class CoordinateSingularityError(RuntimeError):
    """Euler-angle chart degenerated (cos 2*beta reached zero).

    The rotation-angle parametrization cannot track the propagator past
    beta = pi/4; integrate the state directly instead.
    """

    def __init__(self, t: float):
        self.t = t
        super().__init__(
            f"cos(2*beta) vanished near t={t:g} ns; the angle equations are "
            "singular here — fall back to direct state propagation"
        )


class DegenerateFrameError(ValueError):
    """Both detuning and coupling are zero; the mixing angle is undefined."""
