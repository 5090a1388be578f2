"""Shared fixtures and independent oracles for the test suite."""

from __future__ import annotations

import cmath
import math

import numpy as np

from bilinear_dynamics import GameMatrix, HgdaScheme, SplitMix64
from bilinear_dynamics.polynomial import Polynomial, set_distance


def quadratic_roots(a: complex, b: complex, c: complex) -> tuple[complex, complex]:
    """Roots of a*z^2 + b*z + c by the quadratic formula (the test oracle)."""
    disc = cmath.sqrt(b * b - 4 * a * c)
    return (-b + disc) / (2 * a), (-b - disc) / (2 * a)


def random_game(rng: SplitMix64, n: int, det_min: float = 1e-3) -> GameMatrix:
    """Uniform [-1, 1) entries, resampled until |det| clears det_min."""
    while True:
        candidate = GameMatrix(rng.uniform_matrix(n, n))
        if abs(candidate.determinant) >= det_min:
            return candidate


def banded_game(rng: SplitMix64, n: int, lo: float = 0.55, hi: float = 1.45) -> GameMatrix:
    """Random game with singular values in separated slots of [lo, hi].

    Keeps the coupling spectrum away from zero and its eigenvalues apart, so
    convergence is measurable within a few thousand steps and root clusters
    stay resolvable.
    """
    edges = np.linspace(lo, hi, n + 1)
    sv = np.array(
        [a + (b - a) * (0.2 + 0.6 * rng.next_float()) for a, b in zip(edges[:-1], edges[1:])]
    )
    qu, _ = np.linalg.qr(rng.uniform_matrix(n, n))
    qv, _ = np.linalg.qr(rng.uniform_matrix(n, n))
    return GameMatrix(qu @ np.diag(sv) @ qv.T)


def random_inside_roots(rng: SplitMix64, count: int, radius: float = 0.85) -> list:
    """Conjugate-closed random roots with moduli in (0.1, radius]."""
    rts: list = []
    while len(rts) < count:
        if count - len(rts) >= 2 and rng.next_float() < 0.5:
            r, th = rng.uniform(0.1, radius), rng.uniform(0.3, 2.8)
            rts += [r * math.cos(th) + 1j * r * math.sin(th),
                    r * math.cos(th) - 1j * r * math.sin(th)]
        else:
            rts.append(rng.uniform(-radius, radius))
    return rts


def family_scheme(rng: SplitMix64, shared_degree: int, eta: float):
    """Scheme with S = z(z-1)P and G = (2z-1)P for a random stable P.

    Returns (scheme, planted_roots).  Stable whenever |eta| is below the
    optimistic threshold, which makes it the stable-population generator.
    """
    planted = random_inside_roots(rng, shared_degree) if shared_degree else []
    shared = Polynomial.from_roots(planted)
    smooth = Polynomial([0.0, -1.0, 1.0]) * shared
    grad = Polynomial([-1.0, 2.0]) * shared
    return scheme_from_polynomials(smooth, grad, eta), planted


def random_nash_scheme(rng: SplitMix64, k: int, eta: float) -> HgdaScheme:
    """Random weights conditioned on the equilibrium-limit conditions."""
    while True:
        p = [rng.uniform(-1.0, 1.0) for _ in range(k - 1)]
        p.append(1.0 - sum(p))
        q = [rng.uniform(-1.0, 1.0) for _ in range(k)]
        if abs(sum(q)) > 0.1:
            return HgdaScheme(p, q, eta)


def scheme_from_polynomials(smooth: Polynomial, grad: Polynomial, eta: float) -> HgdaScheme:
    """Invert the transfer-function construction: weights from S and G.

    S must be monic of degree k and G of degree <= k - 1.
    """
    k = smooth.degree
    assert abs(smooth.leading - 1.0) < 1e-12
    p = [-smooth.coeffs[k - i] for i in range(1, k + 1)]
    gc = list(grad.coeffs) + [0.0] * (k - 1 - grad.degree)
    q = [gc[k - i] for i in range(1, k + 1)]
    return HgdaScheme(p, q, eta)


def assert_sets_close(a, b, tol: float) -> None:
    dist = set_distance(a, b)
    assert dist <= tol, f"point sets differ by {dist:.3e} (allowed {tol:.1e})"


def geometric_trajectory(rate: float, steps: int):
    """Synthetic one-dimensional trajectory with exact geometric decay."""
    from bilinear_dynamics import Trajectory

    norms = rate ** np.arange(steps, dtype=float)
    states = np.zeros((steps, 2))
    states[:, 0] = norms
    return Trajectory(states=states, dim=1, residuals=norms, diverged_at=None)


def ogda_norm1(lam: float) -> float:
    """Reference |z1|(lam) via direct numeric quadratic solve (independent path)."""
    z1, z2 = quadratic_roots(1.0, -(1.0 + 2.0j * math.sqrt(lam)), 1j * math.sqrt(lam))
    return max(abs(z1), abs(z2))
