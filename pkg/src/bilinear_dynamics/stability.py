"""Schur stability: decide whether all roots of a polynomial lie inside the
unit circle.

Two deliberately redundant deciders are provided: a Jury tabulation that
never computes roots, and a root-based verdict that also reports the
spectral radius and hence the convergence rate of the associated recursion.
Roots within a small band around the unit circle are classed as marginal
rather than guessed either way.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import tolerances
from .errors import InvalidInputError, JuryInconclusiveError
from .polynomial import Polynomial, roots


class Verdict(enum.Enum):
    STABLE = "stable"
    MARGINAL = "marginal"
    UNSTABLE = "unstable"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


@dataclass(frozen=True)
class StabilityReport:
    """Root geometry of a characteristic polynomial plus the derived verdict.

    ``rate`` is the per-step contraction factor (equal to the spectral
    radius) and is present exactly when the verdict is stable.
    ``boundary_roots`` lists roots whose modulus falls inside the marginal
    band around 1, whatever the verdict.
    """

    verdict: Verdict
    spectral_radius: float
    roots: tuple
    boundary_roots: tuple
    rate: Optional[float]


def report_from_roots(
    rts,
    band: float | None = None,
    spectral_radius: float | None = None,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> StabilityReport:
    """Classify a set of characteristic roots.

    ``spectral_radius`` may be supplied when a more accurate closed-form
    value is known than max |root|.
    """
    if band is None:
        band = tol.marginal_band
    if not 0.0 < band <= 0.1:
        raise InvalidInputError("marginal band must lie in (0, 0.1]")
    rts = tuple(complex(r) for r in np.atleast_1d(np.asarray(rts, dtype=complex)))
    moduli = [abs(r) for r in rts]
    radius = max(moduli) if moduli else 0.0
    if spectral_radius is not None:
        radius = float(spectral_radius)
    boundary = tuple(r for r, m in zip(rts, moduli) if 1.0 - band <= m <= 1.0 + band)
    if radius < 1.0 - band:
        verdict = Verdict.STABLE
    elif radius > 1.0 + band:
        verdict = Verdict.UNSTABLE
    else:
        verdict = Verdict.MARGINAL
    rate = radius if verdict is Verdict.STABLE else None
    return StabilityReport(
        verdict=verdict,
        spectral_radius=radius,
        roots=rts,
        boundary_roots=boundary,
        rate=rate,
    )


def root_verdict(
    p: Polynomial,
    band: float | None = None,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> StabilityReport:
    """Stability verdict from explicitly computed roots."""
    return report_from_roots(roots(p, tol), band=band, tol=tol)


def jury_test(p: Polynomial, tol: tolerances.Tolerances = tolerances.DEFAULT) -> bool:
    """Jury tabulation: True iff all roots are strictly inside the unit circle.

    Checks the classical necessary conditions p(1) > 0, (-1)^d p(-1) > 0 and
    |c0| < cd (after normalizing the leading coefficient positive), then runs
    the table reduction.  Raises JuryInconclusiveError when a reduced row's
    leading entry is numerically degenerate; callers should fall back to
    ``root_verdict``.
    """
    if p.degree < 1:
        raise InvalidInputError("the Jury test requires degree >= 1")
    c = np.asarray(p.coeffs, dtype=float)
    if c[-1] < 0:
        c = -c
    c = c / np.max(np.abs(c))
    d = len(c) - 1

    at_one = float(np.polyval(c[::-1], 1.0))
    at_minus_one = float(np.polyval(c[::-1], -1.0))
    if not at_one > 0.0:
        return False
    if not ((-1.0) ** d) * at_minus_one > 0.0:
        return False

    while len(c) > 2:
        lead, const = c[-1], c[0]
        if abs(lead) <= tol.jury_degenerate:
            raise JuryInconclusiveError(
                "degenerate Jury table entry; use the root-based verdict instead"
            )
        if abs(const) >= abs(lead):
            return False
        c = lead * c[1:] - const * c[-2::-1]
    if abs(c[1]) <= tol.jury_degenerate:
        raise JuryInconclusiveError(
            "degenerate Jury table entry; use the root-based verdict instead"
        )
    return bool(abs(c[0]) < abs(c[1]))
