import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.polynomial import hermite as H

from photonsub import make_grid
from photonsub.errors import DomainError, PrecisionError
from photonsub.scenario import default_grid
from photonsub.supermodes import (
    DoubleGaussianJsa,
    SqueezingSpectrum,
    build_basis,
    hermite_functions,
    hermite_gauss,
    jsa_schmidt_oracle,
    schmidt_number,
    squeezing_from_schmidt,
    truncation_order,
    zeta_from_db,
)

TAU = 3.6e-13
W0 = 1.2e15


def explicit_hermite_function(k, x):
    """h_k via the textbook formula; only safe for modest k."""
    coef = np.zeros(k + 1)
    coef[k] = 1.0
    norm = 1.0 / math.sqrt(math.sqrt(math.pi) * 2.0**k * math.factorial(k))
    return norm * H.hermval(x, coef) * np.exp(-x * x / 2)


class TestHermiteGauss:
    def test_ground_state_peak(self):
        assert hermite_gauss(0, TAU, W0, W0) == pytest.approx((TAU**2 / np.pi) ** 0.25, rel=1e-14)

    def test_odd_vanishes_at_center(self):
        assert hermite_gauss(1, TAU, W0, W0) == 0.0

    @pytest.mark.parametrize("k", [0, 1, 2, 7, 15, 30])
    def test_recurrence_matches_explicit_formula(self, k):
        x = np.linspace(-9, 9, 181)
        np.testing.assert_allclose(hermite_functions(k + 1, x)[k], explicit_hermite_function(k, x),
                                   rtol=1e-10, atol=1e-13)

    def test_no_overflow_high_order(self):
        x = np.linspace(-25, 25, 501)
        h = hermite_functions(200, x)
        assert np.all(np.isfinite(h))

    def test_order_40_normalised(self):
        grid = default_grid(W0, TAU, 60)
        psi = hermite_gauss(40, TAU, grid.samples, W0)
        assert np.sum(psi**2) * grid.step == pytest.approx(1.0, abs=1e-8)

    def test_parity(self):
        grid = default_grid(W0, TAU, 20, n_points=1001)
        b = build_basis(TAU, W0, 20, grid)
        for k in range(20):
            np.testing.assert_allclose(b.samples[k], (-1) ** k * b.samples[k][::-1], rtol=0, atol=1e-12 * np.sqrt(TAU))

    def test_negative_order(self):
        with pytest.raises(DomainError):
            hermite_gauss(-1, TAU, W0, W0)


class TestBasis:
    def test_single_mode(self):
        b = build_basis(TAU, W0, 1, default_grid(W0, TAU, 1))
        assert b.gram()[0, 0] == pytest.approx(1.0, abs=1e-12)

    def test_sixty_modes_orthonormal(self):
        b = build_basis(TAU, W0, 60, default_grid(W0, TAU, 60))
        gram = b.gram()
        assert np.abs(gram - np.eye(60)).max() < 1e-8
        assert np.abs(gram - np.diag(np.diag(gram))).max() < 1e-8

    def test_too_narrow_grid(self):
        grid = make_grid(W0, 2.0 / TAU, 401)
        with pytest.raises(PrecisionError, match="truncated mass"):
            build_basis(TAU, W0, 10, grid)

    def test_too_coarse_grid(self):
        grid = default_grid(W0, TAU, 150, n_points=101)
        with pytest.raises(PrecisionError, match="too coarse"):
            build_basis(TAU, W0, 150, grid)

    def test_samples_read_only(self):
        b = build_basis(TAU, W0, 3, default_grid(W0, TAU, 3))
        with pytest.raises(ValueError):
            b.samples[0, 0] = 1.0


class TestSqueezing:
    def test_single_mode(self):
        sq = squeezing_from_schmidt(1.0, 0.3, 5)
        np.testing.assert_array_equal(sq.zeta, [0.3, 0, 0, 0, 0])
        assert schmidt_number(sq.zeta) == 1.0

    def test_k9_series(self):
        sq = squeezing_from_schmidt(9.0, 0.7, 200)
        assert (sq.zeta[1] / sq.zeta[0]) ** 2 == pytest.approx(0.8, rel=1e-14)
        assert schmidt_number(sq.zeta) == pytest.approx(9.0, abs=1e-6)

    def test_minus_3db(self):
        # exp(-2 zeta) = 10**-0.3
        assert zeta_from_db(3.0) == pytest.approx(0.15 * math.log(10), rel=1e-15)
        assert zeta_from_db(3.0) == pytest.approx(0.34539, abs=1e-5)

    def test_two_equal_modes(self):
        assert schmidt_number([0.2, 0.2]) == pytest.approx(2.0)

    def test_zero_vector(self):
        with pytest.raises(DomainError):
            schmidt_number([0.0, 0.0])

    def test_k_below_one(self):
        with pytest.raises(DomainError):
            squeezing_from_schmidt(0.5, 0.3, 10)

    def test_derived_quantities(self):
        sq = squeezing_from_schmidt(4.0, 0.4, 30)
        np.testing.assert_allclose(sq.mu, np.tanh(sq.zeta))
        np.testing.assert_allclose(sq.n_mean, np.sinh(sq.zeta) ** 2)
        assert np.all(np.diff(sq.zeta) <= 0)
        assert np.all((sq.mu >= 0) & (sq.mu < 1))

    def test_increasing_rejected(self):
        with pytest.raises(DomainError):
            SqueezingSpectrum(np.array([0.1, 0.2]), 2.0)

    def test_truncation_order(self):
        assert truncation_order(1.0, 0.35) == 1
        n = truncation_order(9.0, zeta_from_db(3.0))
        # photon-number tail decays like q**(2N) = 0.8**N
        assert 55 <= n <= 65
        sq = squeezing_from_schmidt(9.0, zeta_from_db(3.0), 1000)
        assert sq.n_mean[:n].sum() / sq.n_mean.sum() >= 1 - 1e-6
        assert sq.n_mean[: n - 1].sum() / sq.n_mean.sum() < 1 - 1e-6

    @settings(max_examples=40, deadline=None)
    @given(k=st.floats(1.0, 30.0), zeta0=st.floats(0.01, 1.5))
    def test_round_trip(self, k, zeta0):
        sq = squeezing_from_schmidt(k, zeta0, 1200)
        assert schmidt_number(sq.zeta) == pytest.approx(k, rel=1e-9)


class TestJsaOracle:
    SIGMA = 6.6e11

    def _grid(self, jsa, n=801):
        return make_grid(jsa.center / 2, 7 * max(jsa.sigma_plus, jsa.sigma_minus), n)

    def test_separable(self):
        jsa = DoubleGaussianJsa(self.SIGMA, self.SIGMA, 2 * W0)
        sv, _ = jsa_schmidt_oracle(jsa, self._grid(jsa))
        assert 1 / np.sum(sv**4) == pytest.approx(1.0, abs=1e-6)

    def test_k9_against_hermite_model(self):
        jsa = DoubleGaussianJsa.for_schmidt_number(self.SIGMA, 9.0, 2 * W0)
        assert jsa.schmidt_number == pytest.approx(9.0)
        grid = self._grid(jsa)
        sv, modes = jsa_schmidt_oracle(jsa, grid)
        assert 1 / np.sum(sv**4) == pytest.approx(9.0, abs=0.05)
        psi0 = hermite_gauss(0, jsa.tau_s, grid.samples, W0)
        assert abs(np.sum(modes[0] * psi0) * grid.step) >= 0.999
        q = abs(jsa.q)
        law = q ** np.arange(10)
        assert np.max(np.abs(sv[:10] / sv[0] - law) / law) < 1e-3

    def test_higher_modes_are_hermite(self):
        jsa = DoubleGaussianJsa.for_schmidt_number(self.SIGMA, 4.0, 2 * W0)
        grid = self._grid(jsa)
        _, modes = jsa_schmidt_oracle(jsa, grid)
        for k in range(5):
            psi = hermite_gauss(k, jsa.tau_s, grid.samples, W0)
            assert abs(np.sum(modes[k] * psi) * grid.step) == pytest.approx(1.0, abs=1e-6)

    def test_widths_positive(self):
        with pytest.raises(DomainError):
            DoubleGaussianJsa(0.0, 1.0, 1.0)
