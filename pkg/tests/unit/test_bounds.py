"""
Unit tests for closed-form bounds on f(n,q) and m(n,q).
"""
from fractions import Fraction

import pytest

from avoidance.bounds import (
    Tetration, bounds_report, chain_inputs, doubling_upper, first_moment_lower, instance_count_bounds,
    m2_closed_form, rs_chain_upper, tao_upper, tetration_upper,
)
from avoidance.search import compute_f, enumerate_minimal_instances


@pytest.mark.unit
class TestTetration:
    """Test exact and symbolic towers."""

    def test_small_towers_are_exact(self):
        assert Tetration(2, 0).value == 1
        assert Tetration(2, 3).value == 16
        assert Tetration(3, 2).value == 27

    def test_tower_past_digit_cap_is_symbolic(self):
        tower = Tetration(5, 4)
        assert not tower.is_exact
        assert str(tower) == '^4(5)'
        assert tower.last_exact_height == 3
        assert tower.to_dict()['value'] is None

    def test_digit_cap_override(self):
        assert not Tetration(5, 3, digit_cap=100).is_exact
        assert Tetration(5, 3).is_exact

    def test_upper_bounds_hold_for_known_values(self):
        assert 5 <= tetration_upper(2, 2).value
        assert 7 <= tetration_upper(2, 3).value
        assert 29 <= tetration_upper(3, 2).value
        assert 5 < tao_upper(2, 2).value
        assert 7 < tao_upper(2, 3).value


@pytest.mark.unit
class TestChainBounds:
    """Test m(2,q) and the f/m chain."""

    @pytest.mark.parametrize('q,expected', [(1, 1), (2, 6), (3, 39), (4, 316)])
    def test_m2_closed_form(self, q, expected):
        assert m2_closed_form(q) == expected

    @pytest.mark.parametrize('q', [2, 3, 4])
    def test_m2_matches_enumeration(self, q):
        result = enumerate_minimal_instances(2, q)
        assert result.complete
        assert result.count == m2_closed_form(q)

    def test_rs_chain(self):
        assert rs_chain_upper(5, 6) == 41
        assert rs_chain_upper(29, 7882) == 236489

    def test_chain_inputs_defaults(self):
        assert chain_inputs(2, 3) == (7, 39)
        assert chain_inputs(1, 4) == (1, 4)
        assert chain_inputs(3, 2) == (29, 7882)
        assert chain_inputs(3, 3) == (None, None)

    def test_doubling_upper(self):
        assert doubling_upper(2, 2) == 5
        assert doubling_upper(3, 2) == 197
        assert doubling_upper(6, 2) is None


@pytest.mark.unit
class TestLowerBounds:
    """Test the first-moment bound."""

    def test_first_moment_for_z3(self):
        assert first_moment_lower(3, 2) == pytest.approx(1.0807, abs=1e-3)

    def test_first_moment_is_below_f(self):
        for (n, q) in [(2, 2), (2, 3), (2, 4)]:
            assert first_moment_lower(n, q) < compute_f(n, q).f_value

    def test_instance_count_bounds(self):
        counts = instance_count_bounds(2, 2, 3)
        assert counts['lower'] == 4
        assert counts['upper'] == 8
        assert counts['probability_upper'] == Fraction(1)


@pytest.mark.unit
class TestBoundsReport:
    """Test the combined report."""

    def test_report_for_z3(self):
        report = bounds_report(3, 2)
        assert report.rs_chain_upper == 41
        assert report.previous_f == 5
        assert report.previous_m == 6
        assert report.rs_asymptotic_f3 is not None
        assert report.first_moment_lower < 29 <= report.rs_chain_upper

    def test_report_for_z4(self):
        report = bounds_report(4, 2)
        assert report.rs_chain_upper == 236489
        assert report.rs_asymptotic_f3 is None
        assert not report.tao_upper.is_exact

    def test_explicit_inputs_win(self):
        assert bounds_report(4, 2, f_value=30, m_value=10).rs_chain_upper == 340

    def test_needs_two_letters(self):
        with pytest.raises(ValueError):
            bounds_report(3, 1)
