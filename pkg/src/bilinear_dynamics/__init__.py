"""Stability analysis and simulation of gradient-play dynamics in
unconstrained bilinear zero-sum games."""

from .dynamics import (
    HgdaScheme,
    Trajectory,
    empirical_rate,
    gda_scheme,
    nash_residual,
    ogda_scheme,
    simulate,
    simulated_verdict,
)
from .errors import (
    InsufficientDataError,
    InvalidBracketError,
    InvalidInputError,
    JuryInconclusiveError,
    NumericalError,
    UnsupportedInputError,
)
from .hgda import (
    HgdaAnalysis,
    analyze,
    check_nash_conditions,
    eta_stability_boundary,
    transfer_functions,
)
from .linalg import (
    GameMatrix,
    Spectrum,
    block_companion,
    characteristic_polynomial,
    game_spectrum,
    spectral_norm,
    symmetric_eigenvalues,
)
from .ogda import (
    RootPair,
    characteristic_poly_ogda,
    ogda_verdict,
    optimal_learning_rate,
    root_pair,
    stability_threshold,
)
from .polynomial import Polynomial, common_roots, companion_matrix, reduction_polynomial, roots
from .rng import SplitMix64
from .stability import StabilityReport, Verdict, jury_test, report_from_roots, root_verdict
from .tolerances import DEFAULT, Tolerances

__version__ = "0.1.0"

__all__ = [
    "DEFAULT",
    "GameMatrix",
    "HgdaAnalysis",
    "HgdaScheme",
    "InsufficientDataError",
    "InvalidBracketError",
    "InvalidInputError",
    "JuryInconclusiveError",
    "NumericalError",
    "Polynomial",
    "RootPair",
    "SplitMix64",
    "Spectrum",
    "StabilityReport",
    "Tolerances",
    "Trajectory",
    "UnsupportedInputError",
    "Verdict",
    "analyze",
    "block_companion",
    "characteristic_poly_ogda",
    "characteristic_polynomial",
    "check_nash_conditions",
    "common_roots",
    "companion_matrix",
    "empirical_rate",
    "eta_stability_boundary",
    "game_spectrum",
    "gda_scheme",
    "jury_test",
    "nash_residual",
    "ogda_scheme",
    "ogda_verdict",
    "optimal_learning_rate",
    "reduction_polynomial",
    "report_from_roots",
    "root_pair",
    "root_verdict",
    "roots",
    "simulate",
    "simulated_verdict",
    "spectral_norm",
    "stability_threshold",
    "symmetric_eigenvalues",
    "transfer_functions",
]
