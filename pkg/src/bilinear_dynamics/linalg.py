"""Dense real linear algebra used by the game analyzers.

Everything here works at desk scale (n up to a few dozen): a cyclic Jacobi
eigensolver for symmetric matrices, spectral norms, characteristic
polynomials via the Faddeev-LeVerrier recurrence, and the first-order
block-companion form of a k-step scheme on a bilinear game.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from . import tolerances
from .errors import InvalidInputError
from .polynomial import Polynomial

if TYPE_CHECKING:  # pragma: no cover
    from .dynamics import HgdaScheme

#: Hard cap on the block-companion dimension k * 2n.
COMPANION_DIM_LIMIT = 4096


@dataclass(frozen=True)
class GameMatrix:
    """Square real payoff matrix of a bilinear game.

    Entries are copied and frozen on construction; every entry must be finite.
    """

    entries: np.ndarray

    def __init__(self, entries):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise InvalidInputError(f"game matrix must be square, got shape {arr.shape}")
        if arr.size == 0:
            raise InvalidInputError("game matrix must be non-empty")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("game matrix entries must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.entries))


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of the scaled coupling matrix eta^2 * A * A^T, ascending."""

    eigenvalues: tuple
    spectral_norm: float


def _jacobi_eigenvalues(sym: np.ndarray, tol: tolerances.Tolerances) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending."""
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a[0, :1].copy()
    scale = float(np.sum(a * a))
    if scale == 0.0:
        return np.zeros(n)
    for _ in range(100):
        off = float(np.sum(a * a) - np.sum(np.diag(a) ** 2))
        if off <= tol.jacobi_off * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                # entries this far below the diagonal scale rotate by ~0 and
                # can overflow the tau quotient; just annihilate them
                if abs(apq) <= 1e-18 * (abs(a[p, p]) + abs(a[q, q])) + 1e-300:
                    a[p, q] = a[q, p] = 0.0
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.hypot(1.0, tau))
                else:
                    t = -1.0 / (-tau + np.hypot(1.0, tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                rot_p = c * a[:, p] - s * a[:, q]
                rot_q = s * a[:, p] + c * a[:, q]
                a[:, p], a[:, q] = rot_p, rot_q
                rot_p = c * a[p, :] - s * a[q, :]
                rot_q = s * a[p, :] + c * a[q, :]
                a[p, :], a[q, :] = rot_p, rot_q
                a[p, q] = a[q, p] = 0.0
    return np.sort(np.diag(a))


def symmetric_eigenvalues(
    matrix, tol: tolerances.Tolerances = tolerances.DEFAULT
) -> np.ndarray:
    """All eigenvalues of a symmetric matrix, ascending.

    The input may deviate from exact symmetry by at most the configured
    tolerance (relative to the largest entry); it is symmetrized by averaging
    before solving.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError("eigensolver requires a square matrix")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix entries must be finite")
    scale = max(1.0, float(np.max(np.abs(m))))
    asym = float(np.max(np.abs(m - m.T)))
    if asym > tol.symmetry * scale:
        raise InvalidInputError(f"matrix is asymmetric beyond tolerance ({asym:.3e})")
    return _jacobi_eigenvalues(0.5 * (m + m.T), tol)


def spectral_norm(a: GameMatrix, tol: tolerances.Tolerances = tolerances.DEFAULT) -> float:
    """Largest singular value of the game matrix."""
    gram = a.entries.T @ a.entries
    top = float(symmetric_eigenvalues(gram, tol)[-1])
    return float(np.sqrt(max(top, 0.0)))


def game_spectrum(
    a: GameMatrix, eta: float, tol: tolerances.Tolerances = tolerances.DEFAULT
) -> Spectrum:
    """Eigenvalues of eta^2 * A * A^T plus the spectral norm of A.

    Only eta^2 enters, so the spectrum is even in the learning rate.
    """
    if not np.isfinite(eta):
        raise InvalidInputError("learning rate must be finite")
    gram = a.entries @ a.entries.T
    eig = np.maximum(symmetric_eigenvalues(gram, tol), 0.0) * (eta * eta)
    return Spectrum(eigenvalues=tuple(float(v) for v in eig), spectral_norm=spectral_norm(a, tol))


def characteristic_polynomial(matrix) -> Polynomial:
    """Monic characteristic polynomial det(xI - M) via Faddeev-LeVerrier.

    Exact in exact arithmetic; O(n^4) work, which is fine at the scale this
    library targets (n <= ~16).
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError("characteristic polynomial requires a square matrix")
    if not np.all(np.isfinite(m)):
        raise InvalidInputError("matrix entries must be finite")
    n = m.shape[0]
    descending = [1.0]  # x^n coefficient
    work = np.zeros_like(m)
    for k in range(1, n + 1):
        work = m @ (work + descending[-1] * np.eye(n)) if k > 1 else m.copy()
        descending.append(float(-np.trace(work) / k))
    return Polynomial(descending[::-1])


def block_companion(scheme: "HgdaScheme", a: GameMatrix) -> np.ndarray:
    """First-order companion matrix of the joint k-step recursion.

    The state stacks the k most recent joint strategy vectors (newest first);
    the eigenvalues of the returned k*2n x k*2n matrix are exactly the
    characteristic roots of the coupled dynamics, which makes it the
    time-domain oracle for the polynomial analyzers.
    """
    n = a.dim
    k = scheme.horizon
    size = 2 * n * k
    if size > COMPANION_DIM_LIMIT:
        raise InvalidInputError(
            f"companion dimension {size} exceeds the limit {COMPANION_DIM_LIMIT}"
        )
    eta = scheme.eta
    comp = np.zeros((size, size))
    for i in range(1, k + 1):
        block = np.zeros((2 * n, 2 * n))
        block[:n, :n] = scheme.p[i - 1] * np.eye(n)
        block[n:, n:] = scheme.p[i - 1] * np.eye(n)
        block[:n, n:] = -eta * scheme.q[i - 1] * a.entries
        block[n:, :n] = eta * scheme.q[i - 1] * a.entries.T
        comp[: 2 * n, (i - 1) * 2 * n : i * 2 * n] = block
    if k > 1:
        comp[2 * n :, : -2 * n] = np.eye(2 * n * (k - 1))
    return comp
