"""Central tolerance settings.

Stability classification near the unit circle must use one consistent set of
epsilons, so every numeric default lives in this record instead of being
scattered through the modules.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    symmetry: float = 1e-12            # allowed asymmetry before eigensolving
    jacobi_off: float = 1e-30          # squared off-diagonal mass at which sweeps stop
    marginal_band: float = 1e-7        # half-width of the |z| = 1 band classed as marginal
    root_pairing: float = 1e-8         # distance at which roots of two polynomials count as shared
    root_residual: float = 1e-6        # |p(root)| <= this * (1 + max|coeff|)
    deflation_residual: float = 1e-6   # relative coefficient residual allowed after factoring
    coeff_trim: float = 1e-12          # relative threshold for trimming leading coefficients
    jury_degenerate: float = 1e-12     # table leading entry treated as degenerate below this
    det_guard: float = 1e-12           # |det A| at or below this is rejected as singular
    nash_condition: float = 1e-12      # tolerance on the "weights sum to one / gradient weights nonzero" checks
    cross_check: float = 1e-6          # analyzer root set vs. companion eigenvalues
    eta_bisection: float = 1e-6        # bracket width for the stability-boundary search
    rate_bisection: float = 1e-10      # bracket width for the optimal-learning-rate search


DEFAULT = Tolerances()
