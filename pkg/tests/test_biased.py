import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from urntest import DomainError, UrnSpec, fnch_pmf, fnch_tail, hyper_pmf, p_upper
from urntest.biased import EXACT_TOTAL_LIMIT

from conftest import urn_specs

OMEGA_GRID = (0.01, 0.1, 0.5, 1, 2, 10, 100)


def rational_tail(urn, omega):
    """Exact rational tail, computed independently term by term."""
    om = Fraction(omega)
    lo, hi = urn.support()
    terms = {
        j: math.comb(urn.t_count, j) * math.comb(urn.r_count, urn.sample_size - j) * om**j
        for j in range(lo, hi + 1)
    }
    total = sum(terms.values())
    return sum(v for j, v in terms.items() if j >= urn.support_count) / total


class TestFnchPmf:
    def test_parity_values(self):
        urn = UrnSpec(7, 8, 10, 7)
        assert fnch_pmf(urn, 7, 1) == pytest.approx(0.0186, abs=5e-5)
        assert fnch_pmf(urn, 7, 0.5) == pytest.approx(0.0030, abs=2e-4)
        assert fnch_pmf(urn, 7, 2) == pytest.approx(0.0761, abs=2e-4)

    def test_quadratic_configuration_root(self):
        assert fnch_pmf(UrnSpec(2, 3, 3, 2), 2, 0.195159) == pytest.approx(0.0500, abs=1e-4)

    def test_outside_support_is_zero(self):
        urn = UrnSpec(7, 8, 10, 7)
        assert fnch_pmf(urn, 1, 2.0) == 0.0
        assert fnch_pmf(urn, 8, 2.0) == 0.0

    def test_bad_odds_rejected(self):
        urn = UrnSpec(2, 3, 2, 2)
        for bad in (0, -1, float("inf"), float("nan")):
            with pytest.raises(DomainError):
                fnch_pmf(urn, 2, bad)

    @settings(max_examples=40)
    @given(urn_specs(max_total=EXACT_TOTAL_LIMIT), st.sampled_from(OMEGA_GRID))
    def test_normalization(self, urn, omega):
        total = math.fsum(fnch_pmf(urn, k, omega) for k in range(urn.sample_size + 1))
        assert total == pytest.approx(1.0, abs=1e-12)

    @given(urn_specs(max_total=80))
    def test_central_reduction(self, urn):
        lo, hi = urn.support()
        for k in range(lo, hi + 1):
            exact = float(hyper_pmf(urn, k))
            assert fnch_pmf(urn, k, 1) == pytest.approx(exact, rel=1e-14)


class TestFnchTail:
    def test_solved_odds_reproduce_thresholds(self):
        urn = UrnSpec(7, 8, 10, 7)
        assert fnch_tail(urn, 1.59) == pytest.approx(0.050, abs=5e-4)
        assert fnch_tail(urn, 2.36) == pytest.approx(0.100, abs=5e-4)

    def test_central_reduction_matches_p_upper(self):
        for urn in (UrnSpec(7, 8, 10, 7), UrnSpec(2, 3, 2, 2), UrnSpec(4, 5, 4, 4)):
            assert fnch_tail(urn, 1) == pytest.approx(float(p_upper(urn)), abs=1e-12)

    def test_weighted_smoking_gun_with_bias(self):
        assert fnch_tail(UrnSpec(3, 8, 4, 3), 2.5) == pytest.approx(0.1096, abs=1e-4)

    def test_quintic_identity(self):
        # for the 7-of-10 urn the tail reduces to a ratio of quintics in omega
        urn = UrnSpec(7, 8, 10, 7)
        for i in range(100):
            omega = 0.1 * (10.0 / 0.1) ** (i / 99)
            quintic = (8 * omega**5) / (
                3 + 40 * omega + 140 * omega**2 + 168 * omega**3 + 70 * omega**4 + 8 * omega**5
            )
            assert abs(fnch_tail(urn, omega) - quintic) <= 1e-12

    @settings(max_examples=40)
    @given(urn_specs(max_total=60))
    def test_strictly_increasing_in_omega(self, urn):
        lo, _ = urn.support()
        if urn.support_count <= lo:
            return  # tail is constant 1; nothing to check
        grid = [0.05, 0.3, 1.0, 3.0, 20.0]
        values = [fnch_tail(urn, om) for om in grid]
        assert all(a < b for a, b in zip(values, values[1:]))

    @settings(max_examples=25)
    @given(urn_specs(max_total=60), st.sampled_from(OMEGA_GRID))
    def test_matches_independent_rational_evaluation(self, urn, omega):
        expected = float(rational_tail(urn, omega))
        assert fnch_tail(urn, omega) == pytest.approx(expected, rel=1e-12, abs=1e-300)


class TestLogSpacePath:
    # urns above EXACT_TOTAL_LIMIT switch to log-space summation

    def test_large_urn_tail_matches_rational(self):
        urn = UrnSpec(t_count=180, r_count=220, sample_size=150, support_count=80)
        assert urn.total > EXACT_TOTAL_LIMIT
        for omega in (0.5, 1, 1.7):
            expected = float(rational_tail(urn, omega))
            assert fnch_tail(urn, omega) == pytest.approx(expected, rel=1e-10)

    def test_large_urn_pmf_matches_rational(self):
        urn = UrnSpec(t_count=180, r_count=220, sample_size=150, support_count=80)
        om = Fraction(3, 2)
        lo, hi = urn.support()
        terms = {
            j: math.comb(180, j) * math.comb(220, 150 - j) * om**j for j in range(lo, hi + 1)
        }
        total = sum(terms.values())
        for k in (lo, 70, 80, hi):
            expected = float(Fraction(terms[k], total))
            assert fnch_pmf(urn, k, 1.5) == pytest.approx(expected, rel=1e-10)
