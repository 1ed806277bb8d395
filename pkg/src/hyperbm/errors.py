"""Exception and warning types shared across the package."""


class DimensionMismatchError(ValueError):
    """Two half-space points do not live in the same ambient dimension."""


class UnsupportedExactModeError(ValueError):
    """Exact kernel evaluation requested for a dimension with no closed form.

    Only n=2 and n=3 have usable exact kernels; callers needing n >= 4
    should work with the certified envelopes from ``density_envelope``.
    """


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge within its subdivision budget.

    Carries the partial estimate and the integrator's own error estimate so
    callers can decide whether the partial result is still usable.
    """

    def __init__(self, message, partial_estimate=None, error_estimate=None):
        super().__init__(message)
        self.partial_estimate = partial_estimate
        self.error_estimate = error_estimate


class NumericalWarning(UserWarning):
    """Raised (as a warning) when independent evaluation paths disagree."""
