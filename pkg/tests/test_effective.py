from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dotspin import (
    DegenerateBasisError,
    coefficients_four,
    coefficients_three,
    couplings_four,
    couplings_three,
    delta_j_three,
    energies_four,
    energies_three,
    four_electron_elements,
    three_electron_elements,
)
from dotspin.oracle import brute_force_energy
from dotspin.permelems import PermElements3, PermElements4
from dotspin.spinverify import build_hspin

finite = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


class TestEnergiesThree:
    def test_decoupled_limit(self):
        e = PermElements3(p3=1.0, p1=0.0, p0=0.0, eps3=0.7, eps1=0.0, eps0=0.0)
        e32, e12 = energies_three(e)
        assert e32 == e12 == 0.7

    def test_matches_brute_force(self, params115, table115):
        e = three_electron_elements(params115, table115)
        e32, e12 = energies_three(e)
        assert e32 == pytest.approx(brute_force_energy(3, 1.5, params115, table115), rel=1e-10)
        assert e12 == pytest.approx(brute_force_energy(3, 0.5, params115, table115), rel=1e-10)

    def test_degenerate_basis_detected(self):
        e = PermElements3(p3=1.0, p1=0.1, p0=1.0, eps3=1.0, eps1=0.1, eps0=0.9)
        with pytest.raises(DegenerateBasisError):
            energies_three(e)


class TestCoefficientsThree:
    def test_no_splitting_means_no_exchange(self):
        c = coefficients_three(2.5, 2.5)
        assert c.J == 0.0 and c.K == 2.5

    def test_unit_splitting(self):
        c = coefficients_three(3.0, 0.0)
        assert c.L1 == pytest.approx(1.0) and c.J == pytest.approx(2.0)

    def test_energy_difference_is_three_l1(self, params115, table115):
        c = couplings_three(params115, table115)
        (_, e12), (_, e32) = c.energies
        assert e32 - e12 == pytest.approx(3.0 * c.L1, rel=1e-12)
        assert c.K == pytest.approx(c.L0 + 2.25 * c.L1, rel=1e-12)

    def test_positive_exchange_at_reference_point(self, params115, table115):
        assert couplings_three(params115, table115).J > 0.0

    def test_reference_point_regression(self, params115, table115):
        # frozen from the quadrature- and brute-force-verified pipeline
        c = couplings_three(params115, table115)
        assert c.J == pytest.approx(1.481168634221639, abs=1e-12)
        assert c.deltaJ == pytest.approx(-2.002138463471366, abs=1e-12)

    def test_truncation_order(self, params115, table115):
        c = couplings_three(params115, table115)
        assert c.n == 3 and c.L2 is None and c.Jprime is None

    def test_matches_two_level_spectrum_fit(self, params115, table115):
        c = couplings_three(params115, table115)
        evals = np.linalg.eigvalsh(build_hspin(c))
        fitted_j = (evals[-1] - evals[0]) * 2.0 / 3.0
        assert fitted_j == pytest.approx(abs(c.J), rel=1e-10)


class TestDeltaJ:
    def test_zeroed_input_gives_zero(self):
        e = PermElements3(p3=1.0, p1=0.05, p0=0.0, eps3=1.2, eps1=0.1, eps0=0.0)
        assert delta_j_three(e) == 0.0

    def test_consistent_decomposition(self, params115, table115):
        e = three_electron_elements(params115, table115)
        full = coefficients_three(*energies_three(e)).J
        zeroed = coefficients_three(
            *energies_three(replace(e, p0=0.0, eps0=0.0))
        ).J
        assert zeroed + delta_j_three(e) == pytest.approx(full, rel=1e-13)

    def test_significant_at_reference_point(self, params115, table115):
        c = couplings_three(params115, table115)
        assert abs(c.deltaJ) >= 0.1 * abs(c.J)

    def test_pole_in_zeroed_system_raises(self):
        # 1 - 3 p1 = 0 at p1 = 1/3 while the full denominators stay healthy
        e = PermElements3(p3=1.0, p1=1.0 / 3.0, p0=0.05, eps3=1.0, eps1=0.2, eps0=0.01)
        with pytest.raises(DegenerateBasisError):
            delta_j_three(e)


class TestEnergiesFour:
    def test_decoupled_limit(self):
        e = PermElements4(
            p4=1.0, p2=0.0, p1=0.0, p0=0.0, p0prime=0.0,
            eps4=2.4, eps2=0.0, eps1=0.0, eps0=0.0, eps0prime=0.0,
        )
        assert energies_four(e) == (2.4, 2.4, 2.4)

    def test_matches_brute_force(self, params115, table115):
        e = four_electron_elements(params115, table115)
        for energy, spin in zip(energies_four(e), (0.0, 1.0, 2.0)):
            assert energy == pytest.approx(
                brute_force_energy(4, spin, params115, table115), rel=1e-10
            )

    def test_spread_shrinks_for_separated_dots(self):
        def spread(x_b):
            from dotspin import build_table, make_params

            params = make_params(x_b, 0.0)
            e0, e1, e2 = energies_four(four_electron_elements(params, build_table(params)))
            return max(e0, e1, e2) - min(e0, e1, e2)

        assert spread(3.0) < 0.05 * spread(1.0)


class TestCoefficientsFour:
    def test_degenerate_spectrum_gives_identity_only(self):
        c = coefficients_four(1.1, 1.1, 1.1)
        assert c.L1 == 0.0 and c.L2 == 0.0
        assert c.J == 0.0 and c.Jprime == 0.0 and c.K == 1.1

    def test_pure_heisenberg_spectrum(self):
        c = coefficients_four(0.0, 2.0, 6.0)
        assert c.L0 == 0.0 and c.L1 == pytest.approx(1.0) and c.L2 == 0.0
        assert c.J == pytest.approx(2.0) and c.Jprime == 0.0

    def test_reference_point_regression(self, params115, table115):
        # frozen from the quadrature- and brute-force-verified pipeline; the
        # four-body coupling at the reference point is positive, ~28% of J
        c = couplings_four(params115, table115)
        assert c.J == pytest.approx(1.036104937012496, abs=1e-12)
        assert c.Jprime == pytest.approx(0.2873260504656088, abs=1e-12)
        assert c.Jprime / c.J == pytest.approx(0.27731365829998306, abs=1e-10)

    def test_truncation_order(self, params115, table115):
        c = couplings_four(params115, table115)
        assert c.n == 4 and c.L2 is not None and c.Jprime is not None
        assert c.deltaJ is None


class TestRoundTripAndGauge:
    @given(finite, finite, finite)
    def test_four_electron_round_trip(self, e0, e1, e2):
        c = coefficients_four(e0, e1, e2)
        scale = max(1.0, abs(e0), abs(e1), abs(e2))
        assert c.L0 == pytest.approx(e0, abs=1e-12 * scale)
        assert c.L0 + 2 * c.L1 + 4 * c.L2 == pytest.approx(e1, abs=1e-12 * scale)
        assert c.L0 + 6 * c.L1 + 36 * c.L2 == pytest.approx(e2, abs=1e-12 * scale)

    @given(finite, finite)
    def test_three_electron_round_trip(self, e32, e12):
        c = coefficients_three(e32, e12)
        scale = max(1.0, abs(e32), abs(e12))
        assert c.L0 + 3.75 * c.L1 == pytest.approx(e32, abs=1e-12 * scale)
        assert c.L0 + 0.75 * c.L1 == pytest.approx(e12, abs=1e-12 * scale)

    @given(st.floats(min_value=-10.0, max_value=10.0))
    def test_gauge_shift_moves_only_k(self, params115, table115, shift):
        e = three_electron_elements(params115, table115)
        shifted = PermElements3(
            p3=e.p3, p1=e.p1, p0=e.p0,
            eps3=e.eps3 + shift * e.p3,
            eps1=e.eps1 + shift * e.p1,
            eps0=e.eps0 + shift * e.p0,
        )
        base = coefficients_three(*energies_three(e))
        moved = coefficients_three(*energies_three(shifted))
        assert moved.K == pytest.approx(base.K + shift, rel=1e-9, abs=1e-9)
        assert moved.J == pytest.approx(base.J, rel=1e-9, abs=1e-12)
        assert delta_j_three(shifted) == pytest.approx(
            delta_j_three(e), rel=1e-9, abs=1e-12
        )

    @given(st.floats(min_value=-10.0, max_value=10.0))
    def test_gauge_shift_four_electrons(self, params115, table115, shift):
        e = four_electron_elements(params115, table115)
        shifted = PermElements4(
            p4=e.p4, p2=e.p2, p1=e.p1, p0=e.p0, p0prime=e.p0prime,
            eps4=e.eps4 + shift * e.p4,
            eps2=e.eps2 + shift * e.p2,
            eps1=e.eps1 + shift * e.p1,
            eps0=e.eps0 + shift * e.p0,
            eps0prime=e.eps0prime + shift * e.p0prime,
        )
        base = coefficients_four(*energies_four(e))
        moved = coefficients_four(*energies_four(shifted))
        assert moved.K == pytest.approx(base.K + shift, rel=1e-9, abs=1e-9)
        assert moved.J == pytest.approx(base.J, rel=1e-9, abs=1e-12)
        assert moved.Jprime == pytest.approx(base.Jprime, rel=1e-9, abs=1e-12)
