import math

import numpy as np
import pytest

from bilinear_dynamics import (
    GameMatrix,
    InvalidInputError,
    SplitMix64,
    block_companion,
    characteristic_polynomial,
    game_spectrum,
    gda_scheme,
    ogda_scheme,
    spectral_norm,
    symmetric_eigenvalues,
)
from bilinear_dynamics.polynomial import roots

from helpers import assert_sets_close, random_game, scheme_from_polynomials
from bilinear_dynamics.polynomial import Polynomial


class TestGameMatrix:
    def test_rejects_non_square(self):
        with pytest.raises(InvalidInputError):
            GameMatrix([[1.0, 2.0]])

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            GameMatrix([[1.0, np.nan], [0.0, 1.0]])

    def test_entries_frozen(self):
        a = GameMatrix([[1.0]])
        with pytest.raises(ValueError):
            a.entries[0, 0] = 2.0

    def test_dim_and_det(self):
        a = GameMatrix([[1.0, 0.0], [0.0, 2.0]])
        assert a.dim == 2
        assert abs(a.determinant - 2.0) < 1e-14


class TestSpectralNorm:
    def test_diagonal(self):
        assert spectral_norm(GameMatrix([[3.0, 0.0], [0.0, 4.0]])) == pytest.approx(4.0, abs=1e-12)

    def test_scalar(self):
        assert spectral_norm(GameMatrix([[1.0]])) == 1.0

    def test_golden_ratio(self):
        # eigenvalues of [[1,1],[1,2]] solve x^2 - 3x + 1 = 0
        top = (3.0 + math.sqrt(5.0)) / 2.0
        gamma = spectral_norm(GameMatrix([[0.0, 1.0], [1.0, 1.0]]))
        assert gamma == pytest.approx(math.sqrt(top), rel=1e-10)


class TestSymmetricEigenvalues:
    def test_identity(self):
        assert np.allclose(symmetric_eigenvalues(np.eye(2)), [1.0, 1.0])

    def test_diagonal_sorted(self):
        assert np.allclose(symmetric_eigenvalues([[3.0, 0.0], [0.0, 2.0]]), [2.0, 3.0])

    def test_two_by_two_against_quadratic(self):
        assert np.allclose(symmetric_eigenvalues([[2.0, 1.0], [1.0, 2.0]]), [1.0, 3.0], atol=1e-12)

    def test_asymmetry_rejected(self):
        with pytest.raises(InvalidInputError):
            symmetric_eigenvalues([[1.0, 1e-6], [0.0, 1.0]])

    def test_tiny_asymmetry_averaged(self):
        eig = symmetric_eigenvalues([[1.0, 1e-14], [0.0, 1.0]])
        assert np.allclose(eig, [1.0, 1.0], atol=1e-13)

    def test_random_against_characteristic_residual(self):
        rng = SplitMix64(5)
        for n in (2, 3, 5, 8):
            base = rng.uniform_matrix(n, n)
            sym = 0.5 * (base + base.T)
            eig = symmetric_eigenvalues(sym)
            poly = characteristic_polynomial(sym)
            bound = 1e-7 * (1.0 + sum(abs(c) for c in poly.coeffs))
            assert np.max(np.abs(poly(eig))) <= bound


class TestGameSpectrum:
    def test_diagonal(self):
        spec = game_spectrum(GameMatrix([[1.0, 0.0], [0.0, 2.0]]), 1.0)
        assert np.allclose(spec.eigenvalues, [1.0, 4.0])

    def test_scalar_with_eta(self):
        spec = game_spectrum(GameMatrix([[1.0]]), 0.5)
        assert spec.eigenvalues == (0.25,)

    def test_even_in_eta(self):
        a = GameMatrix([[1.0, 0.0], [0.0, 2.0]])
        assert game_spectrum(a, -1.0).eigenvalues == game_spectrum(a, 1.0).eigenvalues

    def test_nonnegative_and_consistent_with_norm(self):
        rng = SplitMix64(17)
        for n in (1, 2, 4, 6):
            a = random_game(rng, n)
            eta = rng.uniform(-2.0, 2.0)
            spec = game_spectrum(a, eta)
            assert all(lam >= -1e-12 for lam in spec.eigenvalues)
            expected = (eta * spec.spectral_norm) ** 2
            assert spec.eigenvalues[-1] == pytest.approx(expected, rel=1e-9)


class TestCharacteristicPolynomial:
    def test_diagonal(self):
        poly = characteristic_polynomial([[2.0, 0.0], [0.0, 3.0]])
        assert np.allclose(poly.coeffs, [6.0, -5.0, 1.0], atol=1e-12)

    def test_identity_cubed(self):
        poly = characteristic_polynomial(np.eye(3))
        assert np.allclose(poly.coeffs, [-1.0, 3.0, -3.0, 1.0], atol=1e-12)

    def test_swap_matrix_against_trace_det(self):
        m = np.array([[0.0, 1.0], [1.0, 0.0]])
        poly = characteristic_polynomial(m)
        # monic quadratic: x^2 - tr(M) x + det(M)
        assert np.allclose(poly.coeffs, [np.linalg.det(m), -np.trace(m), 1.0], atol=1e-12)

    def test_random_roots_are_eigenvalues(self):
        rng = SplitMix64(23)
        for n in (2, 4, 8):
            m = rng.uniform_matrix(n, n)
            poly = characteristic_polynomial(m)
            eig = np.linalg.eigvals(m)
            bound = 1e-7 * (1.0 + sum(abs(c) for c in poly.coeffs))
            assert np.max(np.abs(poly(eig))) <= bound


class TestBlockCompanion:
    def test_one_step_scheme_is_its_own_companion(self):
        comp = block_companion(gda_scheme(0.1), GameMatrix([[1.0]]))
        assert np.allclose(comp, [[1.0, -0.1], [0.1, 1.0]])

    def test_ogda_top_blocks(self):
        comp = block_companion(ogda_scheme(0.5), GameMatrix([[1.0]]))
        assert comp.shape == (4, 4)
        assert np.allclose(comp[:2, :2], [[1.0, -1.0], [1.0, 1.0]])   # current-step block
        assert np.allclose(comp[:2, 2:], [[0.0, 0.5], [-0.5, 0.0]])   # previous-step block
        assert np.allclose(comp[2:, :2], np.eye(2))
        assert np.allclose(comp[2:, 2:], np.zeros((2, 2)))

    def test_zero_eta_decouples_to_smoothness_roots(self):
        rng = SplitMix64(31)
        smooth = Polynomial([rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), 1.0])
        scheme = scheme_from_polynomials(smooth, Polynomial([1.0, 1.0]), 0.0)
        a = random_game(rng, 2)
        eig = np.linalg.eigvals(block_companion(scheme, a))
        assert_sets_close(np.unique(np.round(eig, 8)), roots(smooth), 1e-7)
        assert np.max(np.abs(eig)) == pytest.approx(np.max(np.abs(roots(smooth))), abs=1e-9)

    def test_dimension_guard(self):
        scheme_p = [1.0] + [0.0] * 2048
        scheme_q = [1.0] + [0.0] * 2048
        from bilinear_dynamics import HgdaScheme

        big = HgdaScheme(scheme_p, scheme_q, 0.1)
        with pytest.raises(InvalidInputError):
            block_companion(big, GameMatrix([[1.0]]))

    def test_ogda_companion_matches_analyzer_roots(self):
        # time-domain vs frequency-domain route
        from bilinear_dynamics import ogda_verdict

        rng = SplitMix64(47)
        for n in (1, 2, 4, 6):
            a = random_game(rng, n)
            eta = rng.uniform(0.05, 0.3)
            eig = np.linalg.eigvals(block_companion(ogda_scheme(eta), a))
            assert_sets_close(eig, ogda_verdict(a, eta).roots, 1e-7)
