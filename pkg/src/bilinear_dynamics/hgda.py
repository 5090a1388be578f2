"""Stability analysis of general k-step history schemes on bilinear games.

The pipeline: build the smoothness and gradient transfer polynomials S and G
from the scheme weights, factor out their (approximate) shared roots P,
expand the stability polynomial of the reduced pair against the spectrum of
the scaled coupling matrix, and classify the joint root set.  The shared
factor's roots are genuine characteristic roots of the coupled system, so
the verdict requires both the reduction polynomial and P to be stable.

Every analysis is cross-checked against the time-domain oracle: the distinct
joint roots must coincide with the eigenvalues of the scheme's block
companion matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import tolerances
from .dynamics import HgdaScheme
from .errors import InvalidBracketError, InvalidInputError, NumericalError, UnsupportedInputError
from .linalg import GameMatrix, block_companion, characteristic_polynomial, game_spectrum
from .polynomial import (
    Polynomial,
    common_roots,
    complex_roots,
    reduction_polynomial,
    roots,
    set_distance,
)
from .stability import StabilityReport, Verdict, report_from_roots


def transfer_functions(scheme: HgdaScheme) -> tuple[Polynomial, Polynomial]:
    """Smoothness and gradient transfer polynomials of a scheme.

    S(z) = z^k - p1*z^(k-1) - ... - pk   (monic, degree k)
    G(z) = q1*z^(k-1) + ... + qk         (degree <= k-1)
    """
    k = scheme.horizon
    smooth = [0.0] * (k + 1)
    smooth[k] = 1.0
    grad = [0.0] * k
    for i in range(1, k + 1):
        smooth[k - i] = -scheme.p[i - 1]
        grad[k - i] = scheme.q[i - 1]
    return Polynomial(smooth), Polynomial(grad)


def check_nash_conditions(
    scheme: HgdaScheme, tol: tolerances.Tolerances = tolerances.DEFAULT
) -> bool:
    """True iff limit points of the scheme, when they exist, are equilibria.

    Equivalent to S(1) = 0 and G(1) != 0: the smoothness weights sum to one
    and the gradient weights do not cancel.
    """
    smooth, grad = transfer_functions(scheme)
    return abs(float(smooth(1.0))) <= tol.nash_condition and abs(float(grad(1.0))) > tol.nash_condition


def _factored_reduction_roots(
    smooth_red: Polynomial,
    grad_red: Polynomial,
    game: GameMatrix,
    eta: float,
    tol: tolerances.Tolerances,
) -> np.ndarray:
    """Roots of the reduction polynomial, computed one coupling eigenvalue at
    a time.

    The reduction factors as the product over eigenvalues lam of
    -(S - j*sqrt(lam)*G) * (S + j*sqrt(lam)*G), so its root multiset is the
    union of each factor's roots with their conjugates.  Extracting roots per
    factor sidesteps the severe conditioning of the expanded coefficients
    when roots from different eigenvalues cluster.
    """
    spectrum = game_spectrum(game, eta, tol)
    width = smooth_red.degree + 1
    s_arr = np.zeros(width, dtype=complex)
    s_arr[: smooth_red.degree + 1] = smooth_red.coeffs
    g_arr = np.zeros(width, dtype=complex)
    g_arr[: grad_red.degree + 1] = grad_red.coeffs
    collected = []
    for lam in spectrum.eigenvalues:
        factor = s_arr - 1j * np.sqrt(lam) * g_arr
        rts = complex_roots(factor, tol)
        collected.append(rts)
        collected.append(np.conj(rts))
    return np.concatenate(collected)


@dataclass(frozen=True)
class HgdaAnalysis:
    """Full analysis artifact for one (scheme, game) pair.

    ``report`` classifies the union of the reduction polynomial's roots and
    the shared factor's roots.  ``nash_ok`` is False only when the analysis
    was forced past the equilibrium conditions, in which case the verdict
    speaks to stability only, not to where the dynamics converge.
    """

    smoothness: Polynomial
    gradient: Polynomial
    shared_factor: Polynomial
    reduction: Polynomial
    report: StabilityReport
    nash_ok: bool


def analyze(
    scheme: HgdaScheme,
    game: GameMatrix,
    band: float | None = None,
    allow_non_nash: bool = False,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> HgdaAnalysis:
    """Analyze a scheme on a game and return the joint stability report.

    Raises unless the scheme satisfies the equilibrium conditions (pass
    ``allow_non_nash=True`` to study stability of a non-compliant scheme
    anyway) and the game matrix is non-singular with a nonzero learning
    rate.  A NumericalError signals that the polynomial route and the
    block-companion oracle disagreed beyond tolerance.
    """
    if abs(game.determinant) <= tol.det_guard:
        raise UnsupportedInputError("singular (or near-singular) game matrices are not supported")
    if scheme.eta == 0.0:
        raise InvalidInputError("learning rate must be nonzero; the dynamics would stay at the start")
    smooth, grad = transfer_functions(scheme)
    nash_ok = check_nash_conditions(scheme, tol)
    if not nash_ok and not allow_non_nash:
        if abs(float(smooth(1.0))) > tol.nash_condition:
            raise InvalidInputError(
                "smoothness weights must sum to 1 for limit points to be equilibria"
            )
        raise InvalidInputError(
            "gradient weights must not sum to 0 for limit points to be equilibria"
        )

    shared, smooth_red, grad_red = common_roots(smooth, grad, tol=tol)
    coupling = (scheme.eta * scheme.eta) * (game.entries @ game.entries.T)
    alpha = characteristic_polynomial(coupling)
    # ascending (an, ..., a1, 1) -> tail (a1, ..., an)
    alpha_tail = list(alpha.coeffs[-2::-1])
    reduction = reduction_polynomial(smooth_red, grad_red, alpha_tail, tol)

    joint = list(_factored_reduction_roots(smooth_red, grad_red, game, scheme.eta, tol))
    if shared.degree >= 1:
        joint.extend(roots(shared, tol))
    report = report_from_roots(joint, band=band, tol=tol)

    companion_eigs = np.linalg.eigvals(block_companion(scheme, game))
    mismatch = set_distance(joint, companion_eigs)
    if mismatch > tol.cross_check:
        raise NumericalError(
            f"polynomial roots and companion eigenvalues disagree by {mismatch:.3e}"
        )
    return HgdaAnalysis(
        smoothness=smooth,
        gradient=grad,
        shared_factor=shared,
        reduction=reduction,
        report=report,
        nash_ok=nash_ok,
    )


def eta_stability_boundary(
    scheme_family: Callable[[float], HgdaScheme],
    game: GameMatrix,
    bracket: tuple[float, float],
    width: float | None = None,
    classify: Callable[[float], Verdict] | None = None,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> float:
    """Learning rate at which a scheme family flips between stable and unstable.

    ``scheme_family`` maps a learning rate to a scheme; the verdicts at the
    bracket ends must differ (stable on exactly one side).  ``classify`` may
    replace the analytic verdict, e.g. with a simulation-based one.  Bisects
    until the bracket is narrower than ``width`` and returns its midpoint.
    """
    if width is None:
        width = tol.eta_bisection
    if classify is None:
        def classify(eta: float) -> Verdict:
            return analyze(scheme_family(eta), game, tol=tol).report.verdict

    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise InvalidBracketError("bracket must satisfy lo < hi")
    lo_stable = classify(lo) is Verdict.STABLE
    hi_stable = classify(hi) is Verdict.STABLE
    if lo_stable == hi_stable:
        raise InvalidBracketError(
            "verdicts agree at both bracket ends; nothing to bisect"
        )
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if (classify(mid) is Verdict.STABLE) == lo_stable:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
