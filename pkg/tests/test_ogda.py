import math

import numpy as np
import pytest

from bilinear_dynamics import (
    GameMatrix,
    InvalidInputError,
    SplitMix64,
    UnsupportedInputError,
    Verdict,
    characteristic_poly_ogda,
    game_spectrum,
    ogda_verdict,
    optimal_learning_rate,
    root_pair,
    spectral_norm,
    stability_threshold,
)
from bilinear_dynamics.polynomial import Polynomial, reduction_polynomial, roots
from bilinear_dynamics.stability import root_verdict

from helpers import assert_sets_close, banded_game, ogda_norm1, random_game

UNIT_GAME = GameMatrix([[1.0]])


class TestRootPair:
    def test_branch_point_has_equal_norms(self):
        pair = root_pair(0.25)
        assert pair.norm1 == pytest.approx(math.sqrt(0.5), abs=1e-15)
        assert pair.norm2 == pytest.approx(math.sqrt(0.5), abs=1e-15)
        assert pair.z1 == pytest.approx(0.5 + 0.5j, abs=1e-12)

    def test_unit_norm_exactly_at_one_third(self):
        assert root_pair(1.0 / 3.0).norm1 == pytest.approx(1.0, abs=1e-12)

    def test_small_eigenvalue_against_quadratic_solve(self):
        pair = root_pair(0.01)
        assert pair.norm1 == pytest.approx(ogda_norm1(0.01), abs=1e-12)
        assert pair.norm1 == pytest.approx(0.99494, abs=1e-5)
        assert pair.norm2 == pytest.approx(0.10050, abs=1e-5)

    def test_roots_satisfy_their_quadratic(self):
        rng = SplitMix64(61)
        for _ in range(50):
            lam = rng.uniform(1e-4, 2.0)
            pair = root_pair(lam)
            for z in (pair.z1, pair.z2):
                residual = z * z - z * (1 + 2j * math.sqrt(lam)) + 1j * math.sqrt(lam)
                assert abs(residual) <= 1e-10
            assert pair.norm1 >= pair.norm2
            assert abs(pair.z1) == pytest.approx(pair.norm1, abs=1e-12)
            assert abs(pair.z2) == pytest.approx(pair.norm2, abs=1e-12)

    def test_nonpositive_rejected(self):
        with pytest.raises(InvalidInputError):
            root_pair(0.0)

    def test_norm_monotone_branches(self):
        # below 1, exactly 1, above 1 across the convergence threshold at 1/3
        grid = np.linspace(1e-6, 2.0 / 3.0, 10_000)
        norms = np.array([root_pair(lam).norm1 for lam in grid])
        below = grid < 1.0 / 3.0 - 1e-12
        above = grid > 1.0 / 3.0 + 1e-12
        assert np.all(norms[below] < 1.0)
        assert np.all(norms[above] > 1.0)


class TestCharacteristicPolyOgda:
    def test_scalar_expansion(self):
        chi = characteristic_poly_ogda(UNIT_GAME, 0.5)
        expected = Polynomial([0.0, -1.0, 1.0]).squared() + Polynomial([-1.0, 2.0]).squared().scaled(0.25)
        assert np.allclose(chi.coeffs, expected.coeffs, atol=1e-14)
        assert np.allclose(np.abs(roots(chi)), math.sqrt(0.5), atol=1e-7)

    def test_zero_learning_rate_degenerates(self):
        chi = characteristic_poly_ogda(GameMatrix([[1.0, 0.0], [0.0, 2.0]]), 0.0)
        expected = Polynomial([0.0, -1.0, 1.0]).squared()
        expected = expected * expected
        assert np.allclose(chi.coeffs, expected.coeffs, atol=1e-14)
        # multiplicity-4 roots only resolve to ~eps^(1/4)
        assert_sets_close(roots(chi), [0.0, 1.0], 1e-3)

    def test_matches_reduction_polynomial_route(self):
        from bilinear_dynamics import characteristic_polynomial

        rng = SplitMix64(67)
        for n in (1, 2, 3):
            a = random_game(rng, n)
            eta = rng.uniform(0.05, 0.4)
            chi = characteristic_poly_ogda(a, eta)
            coupling = eta * eta * (a.entries @ a.entries.T)
            tail = characteristic_polynomial(coupling).coeffs[-2::-1]
            red = reduction_polynomial(
                Polynomial([0.0, -1.0, 1.0]), Polynomial([-1.0, 2.0]), list(tail)
            )
            sign = -1.0 if n % 2 else 1.0
            assert np.allclose(chi.coeffs, sign * np.asarray(red.coeffs), atol=1e-10)


class TestOgdaVerdict:
    def test_stable_below_threshold(self):
        rep = ogda_verdict(UNIT_GAME, 0.57)
        assert rep.verdict is Verdict.STABLE
        assert rep.rate is not None

    def test_unstable_above_threshold(self):
        assert ogda_verdict(UNIT_GAME, 0.6).verdict is Verdict.UNSTABLE

    def test_even_in_learning_rate(self):
        plus = ogda_verdict(UNIT_GAME, 0.57)
        minus = ogda_verdict(UNIT_GAME, -0.57)
        assert minus.verdict is plus.verdict
        assert minus.spectral_radius == plus.spectral_radius

    def test_threshold_is_sharp(self):
        eta_star = 1.0 / math.sqrt(3.0)
        assert ogda_verdict(UNIT_GAME, eta_star - 1e-6).verdict is Verdict.STABLE
        assert ogda_verdict(UNIT_GAME, eta_star + 1e-6).verdict is Verdict.UNSTABLE

    def test_zero_learning_rate_is_marginal(self):
        rep = ogda_verdict(UNIT_GAME, 0.0)
        assert rep.verdict is Verdict.MARGINAL
        assert rep.spectral_radius == 1.0

    def test_singular_game_rejected(self):
        with pytest.raises(UnsupportedInputError):
            ogda_verdict(GameMatrix([[1.0, 1.0], [1.0, 1.0]]), 0.3)

    def test_reports_full_root_set(self):
        rep = ogda_verdict(GameMatrix([[1.0, 0.0], [0.0, 2.0]]), 0.2)
        assert len(rep.roots) == 8

    def test_threshold_value(self):
        assert stability_threshold(UNIT_GAME) == pytest.approx(1 / math.sqrt(3), abs=1e-15)
        assert stability_threshold(GameMatrix([[2.0, 0.0], [0.0, 1.0]])) == pytest.approx(
            1 / (2 * math.sqrt(3)), rel=1e-12
        )

    def test_agrees_with_expanded_polynomial_route(self):
        # closed form against root finding on the expanded characteristic
        # polynomial; small games keep the expanded coefficients informative
        rng = SplitMix64(73)
        checked = 0
        for n in (1, 2, 3):
            a = random_game(rng, n)
            for _ in range(7):
                u = rng.uniform(0.15, 0.95)
                eta = u / (math.sqrt(3.0) * spectral_norm(a))
                rep = ogda_verdict(a, eta)
                poly_rep = root_verdict(characteristic_poly_ogda(a, eta))
                assert rep.spectral_radius == pytest.approx(
                    poly_rep.spectral_radius, abs=1e-6
                )
                checked += 1
        assert checked == 21


class TestOptimalLearningRate:
    def test_unit_game(self):
        eta, radius = optimal_learning_rate(UNIT_GAME)
        assert eta == 0.5
        assert abs(radius - math.sqrt(0.5)) <= 1e-12

    def test_scaled_identity(self):
        for c in (0.5, 2.0, 7.0):
            eta, radius = optimal_learning_rate(GameMatrix((c * np.eye(2)).tolist()))
            assert eta == pytest.approx(1.0 / (2.0 * c), rel=1e-12)
            assert radius == pytest.approx(math.sqrt(0.5), abs=1e-12)

    def test_two_eigenvalue_game_against_grid_oracle(self):
        a = GameMatrix([[1.0, 0.0], [0.0, 2.0]])
        eta, radius = optimal_learning_rate(a)
        assert 0.0 < eta < 1.0 / (2.0 * math.sqrt(3.0))
        oracle_eta, oracle_radius = _grid_minimizer(a)
        assert eta == pytest.approx(oracle_eta, abs=1e-6)
        assert radius == pytest.approx(oracle_radius, abs=1e-9)

    def test_random_games_against_grid_oracle(self):
        rng = SplitMix64(79)
        for n in (2, 3, 4):
            a = banded_game(rng, n)
            eta, radius = optimal_learning_rate(a)
            oracle_eta, oracle_radius = _grid_minimizer(a)
            assert eta == pytest.approx(oracle_eta, abs=1e-6)
            assert radius == pytest.approx(oracle_radius, abs=1e-9)

    def test_singular_rejected(self):
        with pytest.raises(UnsupportedInputError):
            optimal_learning_rate(GameMatrix([[0.0]]))


def _grid_minimizer(a: GameMatrix) -> tuple:
    """Dense grid search over eta for the smallest worst-case root norm."""
    mus = game_spectrum(a, 1.0).eigenvalues
    gamma = spectral_norm(a)

    def radius_at(eta: float) -> float:
        return max(ogda_norm1(eta * eta * mu) for mu in mus)

    etas = np.linspace(1e-4, 1.0 / (math.sqrt(3.0) * gamma), 3000)
    radii = [radius_at(e) for e in etas]
    k = int(np.argmin(radii))
    lo = etas[max(k - 1, 0)]
    hi = etas[min(k + 1, len(etas) - 1)]
    # golden-section refinement inside the bracketing cell
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    c = hi - inv_phi * (hi - lo)
    d = lo + inv_phi * (hi - lo)
    while hi - lo > 1e-11:
        if radius_at(c) < radius_at(d):
            hi, d = d, c
            c = hi - inv_phi * (hi - lo)
        else:
            lo, c = c, d
            d = lo + inv_phi * (hi - lo)
    eta = 0.5 * (lo + hi)
    return eta, radius_at(eta)
