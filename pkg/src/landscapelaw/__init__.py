"""Integrated density of states of Anderson tight-binding models.

Exact counts come from symmetric-factorization inertia; the landscape-law
curve N_u comes from cube minima of the effective potential W = 1/u with
H u = 1. Fitting utilities extract the comparison constants between the two
curves and their low-energy scaling behavior.
"""

from .backend import backend_name
from .ensemble import (
    EnsembleCurve,
    curves_from_realizations,
    run_ensemble,
    run_realizations,
    split_error_bars,
)
from .errors import (
    ConfigError,
    ConvergenceFailureError,
    EnsembleError,
    FactorizationError,
    InsufficientDataError,
    InvalidArgumentError,
    LandscapeLawError,
    OutOfRangeError,
    ScalingRegimeError,
    SingularSystemError,
    SizeLimitError,
    UndefinedRegionError,
    WindowTooWideError,
)
from .fitting import (
    ConstantsReport,
    FitWindow,
    RatioCurve,
    fit_c4,
    fit_c5,
    fit_c6,
    fit_constants,
    loglog_interpolate,
    make_window,
    universal_ratio,
)
from .landscape import Landscape, landscape_identity_residual, solve_landscape
from .lattice import (
    LatticeModel,
    LatticeSpec,
    PotentialDistribution,
    apply_hamiltonian,
    assemble_dense,
    make_model,
    sample_potential,
)
from .nu_counting import (
    cube_side,
    landscape_law_curve,
    landscape_law_value,
    landscape_law_value_bruteforce,
)
from .scaling import (
    AffineFit,
    ScalingReport,
    effective_constants,
    fit_affine,
    low_energy_window,
    scaling_report,
    transform_curve,
)
from .spectral import (
    EnergyGrid,
    SpectralCurve,
    count_eigenvalues_below,
    dense_eigenvalues,
    idos_curve,
)

__version__ = "0.1.0"
