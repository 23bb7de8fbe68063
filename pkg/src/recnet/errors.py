"""Exception and warning types shared across the package.

Analysis routines raise the errors below instead of returning sentinels;
degenerate-but-recoverable situations emit the warning classes so that a
sweep can record them per grid point and keep going.
"""


class RecnetError(Exception):
    """Base class for all package errors."""


class DegenerateFrequencyError(RecnetError):
    """Sector frequency R vanished or turned imaginary; the closed-form
    coefficients would divide by zero."""

    def __init__(self, n, kappa, beta, r_squared):
        self.n = n
        self.kappa = kappa
        self.beta = beta
        self.r_squared = r_squared
        super().__init__(
            f"degenerate sector frequency at n={n} (kappa={kappa}, beta={beta}): "
            f"R^2={r_squared!r}"
        )


class TruncationError(RecnetError):
    """Fock truncation leaves too much Poisson tail mass."""


class DivergenceError(RecnetError):
    """Trajectory magnitude exceeded the divergence guard."""

    def __init__(self, step):
        self.step = step
        super().__init__(f"state magnitude exceeded 1e12 at integrator step {step}")


class ConstantSeriesError(RecnetError):
    """Operation undefined on a constant series."""


class LagTooLargeError(RecnetError):
    """Lag leaves too few sample pairs for the histogram estimator."""


class InsufficientDataError(RecnetError):
    """Not enough points for the requested embedding or neighbor search."""


class DisconnectedGraphError(RecnetError):
    """Shortest-path average requested on a disconnected network."""

    def __init__(self, n_components):
        self.n_components = n_components
        super().__init__(
            f"network is disconnected ({n_components} components); restrict to "
            f"the largest component explicitly if that is intended"
        )


class UndefinedTransitivityError(RecnetError):
    """No paths of length two: the transitivity denominator is zero."""


class DegenerateVarianceError(RecnetError):
    """Remaining-degree variance is zero (regular graph); assortativity
    undefined."""


class ConfigError(RecnetError):
    """Invalid or incomplete sweep/CLI configuration."""


class SweepFailedError(RecnetError):
    """Every grid point of a sweep failed."""


class RecnetWarning(UserWarning):
    """Base class for package warnings; sweep flags record subclass names."""


class ConstantSeriesWarning(RecnetWarning):
    """Mutual information on a constant series is defined as zero."""


class NoLocalMinimumWarning(RecnetWarning):
    """Delay curve has no local minimum in the scanned range."""


class ThresholdNeverMetWarning(RecnetWarning):
    """False-neighbor fraction never dropped below the threshold."""


class DegeneratePairsWarning(RecnetWarning):
    """Neighbor pairs at zero distance were excluded from divergence
    averaging."""


class NoLinearRegionWarning(RecnetWarning):
    """No stable linear region found in a divergence curve."""


class DuplicatePointsWarning(RecnetWarning):
    """More than half of the embedded points coincide."""


class EmptyCellWarning(RecnetWarning):
    """Cells of the partition were never visited by the series."""
