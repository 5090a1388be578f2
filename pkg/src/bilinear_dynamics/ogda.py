"""Closed-form stability analysis of optimistic gradient descent/ascent.

For a square non-singular game matrix A, every eigenvalue lam of the scaled
coupling matrix eta^2 * A * A^T contributes characteristic roots through the
quadratic z^2 - z(1 + 2*sqrt(lam)*j) + sqrt(lam)*j = 0 (together with its
conjugate, whose solutions have the same moduli).  The root magnitudes have
explicit branch formulas, which makes the verdict, the convergence rate and
the optimal learning rate computable without any root finding:

    lam <= 1/4:  |z1| = sqrt(2 + 2*sqrt(1 - 4*lam)) / 2
    lam >  1/4:  |z1| = sqrt(2*lam + sqrt(lam*(4*lam - 1)))

|z1| dips below 1 on (0, 1/3) and crosses 1 exactly at lam = 1/3, so the
dynamics converge iff eta^2 * gamma^2 < 1/3 with gamma the spectral norm.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import tolerances
from .errors import InvalidInputError, UnsupportedInputError
from .linalg import GameMatrix, game_spectrum, spectral_norm
from .polynomial import Polynomial
from .stability import StabilityReport, Verdict, report_from_roots


@dataclass(frozen=True)
class RootPair:
    """Roots of the per-eigenvalue quadratic, ordered so norm1 >= norm2."""

    lam: float
    z1: complex
    z2: complex
    norm1: float
    norm2: float


def root_pair(lam: float) -> RootPair:
    """Characteristic root pair contributed by one coupling eigenvalue lam > 0."""
    if not lam > 0.0:
        raise InvalidInputError("coupling eigenvalue must be positive")
    disc = cmath.sqrt(1.0 - 4.0 * lam)
    mid = 1.0 + 2.0j * math.sqrt(lam)
    z1 = (mid + disc) / 2.0
    z2 = (mid - disc) / 2.0
    if lam <= 0.25:
        inner = math.sqrt(1.0 - 4.0 * lam)
        norm1 = math.sqrt(2.0 + 2.0 * inner) / 2.0
        norm2 = math.sqrt(2.0 - 2.0 * inner) / 2.0
    else:
        inner = math.sqrt(lam * (4.0 * lam - 1.0))
        norm1 = math.sqrt(2.0 * lam + inner)
        norm2 = math.sqrt(2.0 * lam - inner)
    return RootPair(lam=lam, z1=z1, z2=z2, norm1=norm1, norm2=norm2)


def stability_threshold(game: GameMatrix) -> float:
    """Largest |eta| below which the optimistic dynamics converge: 1/(sqrt(3)*gamma)."""
    gamma = spectral_norm(game)
    if gamma == 0.0:
        raise UnsupportedInputError("zero game matrix has no stability threshold")
    return 1.0 / (math.sqrt(3.0) * gamma)


def characteristic_poly_ogda(
    game: GameMatrix, eta: float, tol: tolerances.Tolerances = tolerances.DEFAULT
) -> Polynomial:
    """Degree-4n characteristic polynomial of the optimistic dynamics.

    Expands the product over coupling eigenvalues lam of
    (z^2 - z)^2 + lam * (2z - 1)^2.
    """
    spectrum = game_spectrum(game, eta, tol)
    smooth_sq = Polynomial([0.0, -1.0, 1.0]).squared()  # (z^2 - z)^2
    grad_sq = Polynomial([-1.0, 2.0]).squared()  # (2z - 1)^2
    chi = Polynomial.one()
    for lam in spectrum.eigenvalues:
        chi = chi * (smooth_sq + grad_sq.scaled(lam))
    return chi


def _require_nonsingular(game: GameMatrix, tol: tolerances.Tolerances) -> None:
    if abs(game.determinant) <= tol.det_guard:
        raise UnsupportedInputError(
            "singular (or near-singular) game matrices are not supported"
        )


def ogda_verdict(
    game: GameMatrix,
    eta: float,
    band: float | None = None,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> StabilityReport:
    """Stability report for the optimistic dynamics, from the closed forms.

    The spectral radius is the largest |z1| over the coupling eigenvalues,
    evaluated by the branch formulas rather than numeric root finding so the
    lam = 1/3 boundary is classified exactly.  The reported roots are the
    full 4n-element characteristic set (each quadratic plus its conjugate).
    """
    _require_nonsingular(game, tol)
    if eta == 0.0:
        # Frozen dynamics: characteristic roots are 0 and 1, nothing converges
        # to an equilibrium.
        return report_from_roots([0.0 + 0.0j, 1.0 + 0.0j], band=band, spectral_radius=1.0, tol=tol)
    spectrum = game_spectrum(game, eta, tol)
    rts = []
    radius = 0.0
    for lam in spectrum.eigenvalues:
        pair = root_pair(lam)
        rts.extend([pair.z1, pair.z2, pair.z1.conjugate(), pair.z2.conjugate()])
        radius = max(radius, pair.norm1)
    return report_from_roots(rts, band=band, spectral_radius=radius, tol=tol)


def optimal_learning_rate(
    game: GameMatrix, tol: tolerances.Tolerances = tolerances.DEFAULT
) -> tuple[float, float]:
    """Learning rate minimizing the spectral radius, with the radius it attains.

    With all eigenvalues of A*A^T equal the optimum is 1/(2*gamma), putting
    the single coupling eigenvalue at the branch point 1/4 where the radius
    is sqrt(2)/2.  Otherwise the radius is the max of a decreasing branch
    (smallest eigenvalue) and an increasing branch (largest eigenvalue), and
    the optimum is their unique crossing, found by bisection inside the
    stability interval.
    """
    _require_nonsingular(game, tol)
    base = game_spectrum(game, 1.0, tol)  # eigenvalues of A A^T
    mu_min, mu_max = base.eigenvalues[0], base.eigenvalues[-1]
    gamma = base.spectral_norm
    if (mu_max - mu_min) <= 1e-9 * mu_max:
        # eta = 1/(2*gamma) puts eta^2 * gamma^2 at the branch point 1/4
        # identically, so evaluate there rather than amplifying rounding
        # through the square-root cusp
        return 1.0 / (2.0 * gamma), root_pair(0.25).norm1

    def gap(eta: float) -> float:
        return root_pair(eta * eta * mu_min).norm1 - root_pair(eta * eta * mu_max).norm1

    hi = 1.0 / (math.sqrt(3.0) * gamma)
    lo = 1e-3 * hi
    if not (gap(lo) > 0.0 and gap(hi) < 0.0):
        raise InvalidInputError("failed to bracket the radius crossing")
    while hi - lo > tol.rate_bisection:
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    eta = 0.5 * (lo + hi)
    radius = max(root_pair(eta * eta * mu_min).norm1, root_pair(eta * eta * mu_max).norm1)
    return eta, radius
