"""Numerics for the radial behavior of Brownian motion on the Poincare half-space.

Subpackages by concern:

- ``geometry``   half-space points, distance, sphere areas, radial drift
- ``kernels``    exact heat kernels (n=2, 3), two-sided envelopes, densities
- ``sampling``   reproducible Monte Carlo (Numba kernels + NumPy fallback)
- ``deviations`` rate functions, cumulant bound, Legendre transform, tails
- ``hitting``    ball-hitting probabilities and their exponential decay
- ``cli``        JSON-config experiment runner (``hyperbm`` entry point)
"""

__version__ = "0.1.0"

from .errors import (
    DimensionMismatchError,
    NumericalWarning,
    QuadratureError,
    UnsupportedExactModeError,
)
from .geometry import (
    HalfSpacePoint,
    RadiusTime,
    hyperbolic_distance,
    origin,
    radial_drift,
    surface_area_coeff,
)
from .kernels import (
    KernelQuery,
    QuadratureConfig,
    SandwichReport,
    density_envelope,
    g_bound,
    h_bound,
    heat_kernel,
    k2,
    k3,
    radial_density,
    sandwich_scan,
)
from .sampling import (
    PathSample,
    SimulationPlan,
    SimulationResult,
    first_passage,
    sample_radial_exact_3d,
    simulate_halfspace,
    simulate_radial,
)
from .deviations import (
    gaussian_abs_moment,
    corrected_cumulant_limit,
    kappa,
    ldp_tail_quadrature,
    legendre_transform,
    mdp_rate_estimate,
    mgf_upper_bound,
    rate,
)
from .hitting import (
    HittingQuery,
    SeriesBudget,
    c_coeff,
    decay_rate,
    euclidean_hitting,
    hitting_probability,
    log_tanh_half,
    refined_series_bracket,
)

__all__ = [name for name in dir() if not name.startswith("_")]
