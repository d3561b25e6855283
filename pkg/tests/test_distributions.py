"""Inputs, growth classes and moment sequences."""

import math

import numpy as np
import pytest

from cwtmoments import _kernels
from cwtmoments.distributions import (
    BumpProfile,
    CallableProfile,
    DistributionInput,
    GaussianProfile,
    Growth,
    MexicanHatDensityProfile,
    PointMass,
    TabulatedProfile,
    moment,
    moment_sequence,
    truncation_limit,
)
from cwtmoments.errors import MomentDivergenceError

from oracles import mexican_hat_moment, mp_quad


class TestPointMassMoments:
    def test_delta_sifting(self):
        assert moment(DistributionInput.delta(0.0), 0) == 1.0

    def test_delta_derivative_diagonal(self):
        assert moment(DistributionInput.delta_derivative(1, 0.0), 1) == -1.0
        # <delta^(k), x^k> = (-1)^k k!
        assert moment(DistributionInput.delta_derivative(3, 0.0), 3) == -6.0

    def test_low_orders_vanish(self):
        d = DistributionInput.delta_derivative(2, 0.5)
        assert moment(d, 0) == 0.0
        assert moment(d, 1) == 0.0

    def test_shifted_delta_powers(self):
        d = DistributionInput.delta(1.5)
        for alpha in range(5):
            assert moment(d, alpha) == pytest.approx(1.5**alpha, rel=1e-15)

    def test_sequence_for_origin_delta(self):
        seq = moment_sequence(DistributionInput.delta(0.0), 3)
        assert seq.values == {0: 1.0, 1: 0.0, 2: 0.0, 3: 0.0}
        assert all(p == "closed_form" for p in seq.provenance.values())

    def test_mollified_quadrature_converges_to_closed_form(self):
        # delta'' at c approximated by the 2nd derivative of a narrow Gaussian;
        # alpha is high enough that the O(sigma^2) mollification error is nonzero
        c, k, alpha = 0.7, 2, 4
        closed = moment(DistributionInput.delta_derivative(k, c), alpha)
        errors = []
        for sigma in (0.2, 0.1, 0.05):
            def mollified(x):
                u = (x - c) / sigma
                return (
                    (-1.0) ** k
                    * _kernels.hermite_gaussian(k, u)
                    / (sigma ** (k + 1) * math.sqrt(2 * math.pi))
                )

            profile = CallableProfile(
                mollified, support=(c - 12 * sigma, c + 12 * sigma), label="mollified"
            )
            d = DistributionInput.from_density(profile, Growth.compact())
            errors.append(abs(moment(d, alpha) - closed))
        assert errors[2] < errors[1] < errors[0]
        assert errors[2] < 1e-2 * max(abs(closed), 1.0)


class TestDensityMoments:
    def test_mexican_hat_zero_mean(self):
        d = DistributionInput.from_density(MexicanHatDensityProfile(), Growth.sub_exponential())
        assert abs(moment(d, 0)) < 1e-10

    def test_mexican_hat_even_moments_match_oracle(self):
        d = DistributionInput.from_density(MexicanHatDensityProfile(), Growth.sub_exponential())
        assert moment(d, 2) == pytest.approx(mexican_hat_moment(2), rel=1e-12)
        assert moment(d, 4) == pytest.approx(mexican_hat_moment(4), rel=1e-12)
        assert mexican_hat_moment(2) == pytest.approx(-2.0 * math.sqrt(2 * math.pi), rel=1e-15)
        assert mexican_hat_moment(4) == pytest.approx(-12.0 * math.sqrt(2 * math.pi), rel=1e-15)

    def test_mexican_hat_against_mpmath_quadrature(self):
        import mpmath as mp

        d = DistributionInput.from_density(MexicanHatDensityProfile(), Growth.sub_exponential())
        expected = mp_quad(lambda x: x**4 * (1 - x * x) * mp.exp(-x * x / 2))
        assert moment(d, 4) == pytest.approx(expected, rel=1e-12)

    def test_even_density_odd_moments_vanish(self):
        seq = moment_sequence(
            DistributionInput.from_density(GaussianProfile(), Growth.sub_exponential()), 3
        )
        assert abs(seq.values[1]) < 1e-10
        assert abs(seq.values[3]) < 1e-10

    def test_translation_binomial_identity(self):
        base = DistributionInput.from_density(BumpProfile(0.0, 1.0), Growth.compact())
        c = 0.75
        shifted = base.shifted(c)
        mus = [moment(base, j) for j in range(5)]
        for alpha in range(5):
            expected = sum(
                math.comb(alpha, j) * c ** (alpha - j) * mus[j] for j in range(alpha + 1)
            )
            assert moment(shifted, alpha) == pytest.approx(expected, rel=1e-10, abs=1e-12)


class TestGrowthClassCaps:
    def test_truncation_limit_values(self):
        assert truncation_limit(3.5) == 2
        assert truncation_limit(1.0) == 0
        assert truncation_limit(0.5) == -1

    def test_power_cap_enforced(self):
        d = DistributionInput.from_density(GaussianProfile(), Growth.power(3.5))
        assert moment(d, 2) == pytest.approx(1.0 * math.sqrt(2 * math.pi), rel=1e-10)
        with pytest.raises(MomentDivergenceError) as info:
            moment(d, 3)
        assert "power (gamma=3.5)" in str(info.value)
        assert info.value.growth_class.kind == "power"

    def test_sequence_stops_at_cap_with_reason(self):
        d = DistributionInput.from_density(GaussianProfile(), Growth.power(2.2))
        seq = moment_sequence(d, 6)
        assert sorted(seq.values) == [0, 1]
        assert seq.max_valid_order == 1
        assert "floor(gamma) - 1" in seq.missing_reason

    def test_fat_tail_flagged_at_runtime(self):
        # declared sub-exponential, but the tails do not decay: the doubling
        # check must flag the divergent quadrature
        profile = CallableProfile(lambda x: 1.0 / (1.0 + x * x), support=None, label="cauchy")
        d = DistributionInput.from_density(profile, Growth.sub_exponential())
        with pytest.raises(MomentDivergenceError):
            moment(d, 2)

    def test_growth_validation(self):
        with pytest.raises(ValueError):
            Growth("power")  # missing gamma
        with pytest.raises(ValueError):
            Growth("compact", gamma=1.0)
        with pytest.raises(ValueError):
            Growth("huge")
        with pytest.raises(ValueError):
            Growth.power(math.inf)


class TestInputValidation:
    def test_compact_density_needs_finite_support(self):
        with pytest.raises(ValueError):
            DistributionInput.from_density(GaussianProfile(), Growth.compact())

    def test_point_masses_require_masses(self):
        with pytest.raises(ValueError):
            DistributionInput(kind="point_masses", growth=Growth.compact())

    def test_negative_mass_order_rejected(self):
        with pytest.raises(ValueError):
            PointMass(0.0, -1)

    def test_labels(self):
        d = DistributionInput.delta_derivative(2, -1.0, weight=3.0)
        assert "delta''" in d.label
        g = DistributionInput.from_density(GaussianProfile(0.5, 2.0), Growth.sub_exponential())
        assert "gaussian" in g.label

    def test_point_mass_shift(self):
        d = DistributionInput.delta(1.0).shifted(0.5)
        assert d.point_masses[0].location == 1.5


class TestTabulatedProfile:
    def make_file(self, tmp_path, x, y):
        path = tmp_path / "density.txt"
        np.savetxt(path, np.column_stack([x, y]))
        return path

    def test_round_trip_moments(self, tmp_path):
        bump = BumpProfile(0.0, 1.0)
        x = np.linspace(-1.0, 1.0, 801)
        path = self.make_file(tmp_path, x, bump(x))
        loaded = DistributionInput.from_file(path)
        assert loaded.density.support == (-1.0, 1.0)
        assert loaded.growth.kind == "compact"
        direct = DistributionInput.from_density(bump, Growth.compact())
        for alpha in range(3):
            assert moment(loaded, alpha) == pytest.approx(
                moment(direct, alpha), rel=1e-7, abs=1e-9
            )

    def test_monotonicity_enforced(self, tmp_path):
        x = np.array([0.0, 1.0, 1.0, 2.0])
        path = self.make_file(tmp_path, x, np.ones_like(x))
        with pytest.raises(ValueError):
            TabulatedProfile.from_file(path)

    def test_column_count_enforced(self, tmp_path):
        path = tmp_path / "bad.txt"
        np.savetxt(path, np.ones((5, 3)))
        with pytest.raises(ValueError):
            TabulatedProfile.from_file(path)

    def test_zero_outside_support(self, tmp_path):
        x = np.linspace(0.0, 1.0, 11)
        path = self.make_file(tmp_path, x, x)
        profile = TabulatedProfile.from_file(path)
        assert profile(np.array([-0.5, 2.0])).tolist() == [0.0, 0.0]

    def test_spline_derivative(self, tmp_path):
        x = np.linspace(-1.0, 1.0, 201)
        path = self.make_file(tmp_path, x, x**3)
        profile = TabulatedProfile.from_file(path)
        assert profile.derivative(1, 0.5) == pytest.approx(0.75, rel=1e-6)


class TestProfiles:
    def test_gaussian_derivative_closed_form(self):
        g = GaussianProfile(0.5, 2.0, amplitude=1.5)

        def fn(t):
            import mpmath as mp

            return 1.5 * mp.exp(-((t - 0.5) ** 2) / (2 * 2.0**2))

        from oracles import mp_derivative

        for order in (1, 2, 3, 4):
            assert g.derivative(order, 1.3) == pytest.approx(
                mp_derivative(fn, 1.3, order), rel=1e-12, abs=1e-14
            )

    def test_bump_smooth_and_compact(self):
        bump = BumpProfile(0.3, 1.0)
        assert bump(0.3) == 1.0
        assert bump(1.3) == 0.0
        assert bump(np.array([-0.75, 1.35])).tolist()[1] == 0.0

    def test_default_derivative_fallback(self):
        profile = CallableProfile(lambda x: np.sin(x), support=(-4, 4), label="sin")
        assert profile.derivative(1, 0.3) == pytest.approx(math.cos(0.3), rel=1e-9)
        assert profile.derivative(2, 0.3) == pytest.approx(-math.sin(0.3), rel=1e-8)

    def test_shifted_profile_tracks_base(self):
        g = GaussianProfile(0.0, 1.0).shifted(2.0)
        assert g(2.0) == pytest.approx(1.0, rel=1e-15)
        assert g.derivative(1, 2.0) == pytest.approx(0.0, abs=1e-15)
        lo, hi = g.truncation_interval(0)
        assert lo == pytest.approx(2.0 - 9.0) and hi == pytest.approx(2.0 + 9.0)
