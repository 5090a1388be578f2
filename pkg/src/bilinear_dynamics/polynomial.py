"""Real-coefficient univariate polynomials.

Provides the arithmetic, companion-matrix root finding, and approximate
shared-factor extraction that the game analyzers are built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npp

from . import tolerances
from .errors import InvalidInputError, NumericalError


@dataclass(frozen=True)
class Polynomial:
    """Polynomial c0 + c1*z + ... + cd*z**d stored as ascending coefficients.

    Exact trailing zeros are trimmed on construction.  The zero polynomial is
    kept as a single zero coefficient and reports ``is_zero``; its degree is
    the sentinel -1.
    """

    coeffs: tuple

    def __init__(self, coeffs: Sequence[float]):
        arr = [float(c) for c in coeffs]
        if not arr:
            arr = [0.0]
        if not all(np.isfinite(arr)):
            raise InvalidInputError("polynomial coefficients must be finite")
        while len(arr) > 1 and arr[-1] == 0.0:
            arr.pop()
        object.__setattr__(self, "coeffs", tuple(arr))

    @property
    def is_zero(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 0.0

    @property
    def degree(self) -> int:
        return -1 if self.is_zero else len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def __call__(self, z):
        return npp.polyval(z, self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npp.polyadd(self.coeffs, other.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial(npp.polysub(self.coeffs, other.coeffs))

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial.zero()
        return Polynomial(npp.polymul(self.coeffs, other.coeffs))

    def scaled(self, c: float) -> "Polynomial":
        return Polynomial([c * a for a in self.coeffs])

    def squared(self) -> "Polynomial":
        return self * self

    def monic(self) -> "Polynomial":
        if self.is_zero:
            raise InvalidInputError("the zero polynomial has no monic form")
        return self.scaled(1.0 / self.leading)

    def divide(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division; returns (quotient, remainder)."""
        if divisor.is_zero:
            raise InvalidInputError("division by the zero polynomial")
        quo, rem = npp.polydiv(self.coeffs, divisor.coeffs)
        return Polynomial(quo), Polynomial(rem)

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls([0.0])

    @classmethod
    def one(cls) -> "Polynomial":
        return cls([1.0])

    @classmethod
    def from_roots(cls, roots: Sequence[complex]) -> "Polynomial":
        """Monic real polynomial with the given (conjugate-closed) roots."""
        roots = np.asarray(roots, dtype=complex)
        if roots.size == 0:
            return cls.one()
        coeffs = np.poly(roots)  # descending, monic, complex
        imag = np.max(np.abs(coeffs.imag))
        if imag > 1e-8 * max(1.0, np.max(np.abs(coeffs))):
            raise InvalidInputError("roots are not conjugate-closed within tolerance")
        return cls(coeffs.real[::-1])

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)})"


def companion_matrix(p: Polynomial) -> np.ndarray:
    """Frobenius companion matrix of p (monic-normalized), shape (d, d)."""
    d = p.degree
    if d < 1:
        raise InvalidInputError("companion matrix requires degree >= 1")
    monic = np.asarray(p.coeffs) / p.leading
    comp = np.zeros((d, d))
    comp[1:, :-1] = np.eye(d - 1)
    comp[:, -1] = -monic[:-1]
    return comp


def _check_residuals(coeffs, rts, tol: tolerances.Tolerances) -> None:
    # backward-error residual: |p(r)| relative to the evaluation magnitude
    # sum_i |c_i| |r|^i, so large roots do not trip the check spuriously
    arr = np.asarray(coeffs, dtype=complex)
    magnitude = npp.polyval(np.abs(rts), np.abs(arr))
    residual = float(np.max(np.abs(npp.polyval(rts, arr)) / (1.0 + magnitude)))
    if residual > tol.root_residual:
        raise NumericalError(
            f"root residual {residual:.3e} exceeds tolerance for degree {arr.size - 1}"
        )


def roots(p: Polynomial, tol: tolerances.Tolerances = tolerances.DEFAULT) -> np.ndarray:
    """All complex roots of p, via companion-matrix eigenvalues.

    Returns the roots sorted by (real, imag).  Raises if the normalized
    residual at any root exceeds the documented bound; repeated roots are
    returned as clusters with the usual m-th root accuracy loss.
    """
    if p.degree < 1:
        raise InvalidInputError("root finding requires degree >= 1")
    rts = np.sort_complex(np.linalg.eigvals(companion_matrix(p)))
    _check_residuals(p.coeffs, rts, tol)
    return rts


def complex_roots(coeffs, tol: tolerances.Tolerances = tolerances.DEFAULT) -> np.ndarray:
    """Roots of a complex-coefficient polynomial given ascending coefficients.

    Companion-matrix route like :func:`roots`, but without the real-input
    restriction; used where a real polynomial is factored into complex
    conjugate parts whose roots are better conditioned than the product's.
    """
    arr = np.asarray(coeffs, dtype=complex)
    while arr.size > 1 and arr[-1] == 0.0:
        arr = arr[:-1]
    d = arr.size - 1
    if d < 1:
        raise InvalidInputError("root finding requires degree >= 1")
    monic = arr / arr[-1]
    comp = np.zeros((d, d), dtype=complex)
    comp[1:, :-1] = np.eye(d - 1)
    comp[:, -1] = -monic[:-1]
    rts = np.sort_complex(np.linalg.eigvals(comp))
    _check_residuals(arr, rts, tol)
    return rts


def set_distance(a, b) -> float:
    """Hausdorff distance between two complex point sets (inf if one is empty)."""
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    if a.size == 0 and b.size == 0:
        return 0.0
    if a.size == 0 or b.size == 0:
        return np.inf
    dist = np.abs(a[:, None] - b[None, :])
    return float(max(dist.min(axis=1).max(), dist.min(axis=0).max()))


def common_roots(
    s: Polynomial,
    g: Polynomial,
    pairing_tol: float | None = None,
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Extract the (approximate) shared factor of two polynomials.

    Roots of ``s`` and ``g`` closer than ``pairing_tol`` are matched greedily,
    nearest pair first; the monic polynomial through the pair midpoints is the
    shared factor.  Returns ``(shared, s_reduced, g_reduced)`` with
    ``s ~ shared * s_reduced`` and ``g ~ shared * g_reduced``; the deflation
    residual is verified against the central tolerance.  With no pairs the
    shared factor is 1 and the inputs are returned unchanged.
    """
    if s.is_zero or g.is_zero:
        raise InvalidInputError("shared-factor extraction requires nonzero polynomials")
    if pairing_tol is None:
        pairing_tol = tol.root_pairing
    if pairing_tol <= 0:
        raise InvalidInputError("pairing tolerance must be positive")
    if s.degree < 1 or g.degree < 1:
        return Polynomial.one(), s, g

    rs = roots(s, tol)
    rg = roots(g, tol)
    dist = np.abs(rs[:, None] - rg[None, :])
    order = np.dstack(np.unravel_index(np.argsort(dist, axis=None), dist.shape))[0]
    used_s = np.zeros(len(rs), dtype=bool)
    used_g = np.zeros(len(rg), dtype=bool)
    shared_roots = []
    for i, j in order:
        if dist[i, j] > pairing_tol:
            break
        if used_s[i] or used_g[j]:
            continue
        used_s[i] = used_g[j] = True
        shared_roots.append(0.5 * (rs[i] + rg[j]))

    if not shared_roots:
        return Polynomial.one(), s, g

    shared = Polynomial.from_roots(shared_roots)
    s_red, _ = s.divide(shared)
    g_red, _ = g.divide(shared)
    for original, reduced in ((s, s_red), (g, g_red)):
        recomposed = shared * reduced
        scale = max(abs(c) for c in original.coeffs)
        err = float(np.max(np.abs(npp.polysub(recomposed.coeffs, original.coeffs))))
        if err > tol.deflation_residual * max(1.0, scale):
            raise NumericalError(
                f"deflation residual {err:.3e} exceeds {tol.deflation_residual:.1e} relative"
            )
    return shared, s_red, g_red


def reduction_polynomial(
    smooth: Polynomial,
    grad: Polynomial,
    alpha_tail: Sequence[float],
    tol: tolerances.Tolerances = tolerances.DEFAULT,
) -> Polynomial:
    """Stability polynomial of the coupled dynamics.

    Given the smoothness transfer polynomial S, the gradient transfer
    polynomial G, and the non-leading coefficients (a1..an) of the monic
    characteristic polynomial of the scaled coupling matrix, expands

        (-S^2)^n + a1 * (-S^2)^(n-1) * G^2 + ... + an * (G^2)^n

    by repeated convolution.  Near-zero leading coefficients (relative to the
    largest coefficient) are trimmed.
    """
    if smooth.is_zero and grad.is_zero:
        raise InvalidInputError("S and G cannot both be zero")
    coeffs = [1.0] + [float(a) for a in alpha_tail]
    if not all(np.isfinite(coeffs)):
        raise InvalidInputError("characteristic coefficients must be finite")
    n = len(coeffs) - 1
    neg_s2 = -smooth.squared()
    g2 = grad.squared()

    s_pow = [Polynomial.one()]
    g_pow = [Polynomial.one()]
    for _ in range(n):
        s_pow.append(s_pow[-1] * neg_s2)
        g_pow.append(g_pow[-1] * g2)

    total = Polynomial.zero()
    for i, a in enumerate(coeffs):
        if a == 0.0:
            continue
        total = total + (s_pow[n - i] * g_pow[i]).scaled(a)

    arr = list(total.coeffs)
    scale = max(abs(c) for c in arr)
    while len(arr) > 1 and abs(arr[-1]) <= tol.coeff_trim * scale:
        arr.pop()
    return Polynomial(arr)
