"""
Unit tests for the instance-probability series and their enclosures.
"""
from fractions import Fraction

import pytest

from asymptotics.series import (
    RationalEnclosure, doubled_scaling_table, hom_expectation, hom_expectation_bruteforce, i_z2, i_z3,
    i_zn_upper, iv_product_upper, izn_truncations, nondoubled_lower, render_decimal,
    z2_instance_count_exact, zimin_multiplicities,
)
from patterns.engine import is_zimin_instance
from words.core import enumerate_words
from zimin_lab.exceptions import DoubledInputError, HypothesisViolation, MonotonicityViolation

IZ2 = {2: 0.7322132, 3: 0.4430202, 4: 0.3122520, 5: 0.2399355, 6: 0.1944229}
IZ3 = {2: 0.11944370, 3: 0.01835140, 4: 0.00519251, 5: 0.00199739, 6: 0.00092532}
IV_UPPER = {
    3: (0.143, 1.92e-2, 5.29e-3, 2.02e-3),
    4: (1.12e-3, 8.80e-6, 3.23e-7, 2.58e-8),
    5: (3.43e-8, 6.13e-13, 3.01e-16, 8.46e-19),
}


@pytest.mark.unit
class TestRendering:
    """Test decimal rendering and enclosures."""

    def test_render_decimal(self):
        assert render_decimal(Fraction(1, 3), 4) == '0.3333'
        assert render_decimal(Fraction(2, 3), 3, 'floor') == '0.666'
        assert render_decimal(Fraction(2, 3), 3, 'ceil') == '0.667'

    def test_half_even_rounding(self):
        assert render_decimal(Fraction(1, 8), 2) == '0.12'
        assert render_decimal(Fraction(3, 8), 2) == '0.38'

    def test_enclosure(self):
        enclosure = RationalEnclosure(Fraction(1, 4), Fraction(1, 2))
        assert enclosure.width == Fraction(1, 4)
        assert enclosure.midpoint == Fraction(3, 8)
        assert enclosure.contains('1/3')
        assert not enclosure.contains(1)

    def test_empty_enclosure_is_rejected(self):
        with pytest.raises(AssertionError):
            RationalEnclosure(Fraction(1), Fraction(0))


@pytest.mark.unit
class TestIZ2:
    """Test I(Z_2,q)."""

    @pytest.mark.parametrize('q', sorted(IZ2))
    def test_table_values(self, q):
        enclosure = i_z2(q)
        assert abs(float(enclosure.midpoint) - IZ2[q]) < 1e-7
        assert enclosure.width <= Fraction(1, 10 ** 12)

    def test_q_8(self):
        assert abs(float(i_z2(8).midpoint) - 0.14062) < 1e-5

    def test_lies_between_reciprocals(self):
        for q in range(2, 9):
            enclosure = i_z2(q)
            assert Fraction(1, q) < enclosure.lower < enclosure.upper < Fraction(1, q - 1)

    def test_exact_counts_match_enumeration(self):
        for M in range(1, 11):
            direct = sum(1 for w in enumerate_words(2, M) if is_zimin_instance(w, 2))
            assert z2_instance_count_exact(M, 2) == direct

    def test_nonmonotone_terms_raise(self, mocker):
        mocker.patch('asymptotics.series._z2_term', side_effect=lambda q, j: Fraction(j + 1))
        with pytest.raises(MonotonicityViolation):
            i_z2(2)

    @pytest.mark.parametrize('tolerance', [0, Fraction(-1, 10)])
    def test_tolerance_must_be_positive(self, tolerance):
        with pytest.raises(ValueError):
            i_z2(2, tolerance=tolerance)


@pytest.mark.unit
class TestIZ3:
    """Test the I(Z_3,q) enclosure."""

    def test_binary_value(self):
        enclosure = i_z3(2)
        assert abs(float(enclosure.midpoint) - IZ3[2]) < 1e-7
        assert enclosure.params == {'q': 2, 'N': 30, 'M': 5}

    def test_cross_check_against_recursion(self):
        enclosure = i_z3(2, cross_check=True)
        assert enclosure.lower <= enclosure.upper

    def test_below_iz2(self):
        assert i_z3(3).upper < i_z2(3).lower

    @pytest.mark.slow
    @pytest.mark.parametrize('q', sorted(IZ3))
    def test_table_values(self, q):
        assert abs(float(i_z3(q).midpoint) - IZ3[q]) < 1e-7


@pytest.mark.unit
class TestUpperBounds:
    """Test the chain and product upper bounds."""

    def test_truncations(self):
        assert izn_truncations(3, base=20) == [20, 41]
        assert izn_truncations(4) == [20, 41, 83]

    def test_izn_upper_for_z2_is_tight(self):
        enclosure = i_z2(2)
        upper = i_zn_upper(2, 2)
        assert enclosure.lower <= upper <= enclosure.upper + Fraction(2, 10 ** 6)

    def test_izn_upper_for_z3_bounds_enclosure(self):
        upper = i_zn_upper(3, 2, truncations=[8, 17])
        assert upper >= i_z3(2).lower

    def test_truncation_count_must_match(self):
        with pytest.raises(ValueError):
            i_zn_upper(3, 2, truncations=[8])

    @pytest.mark.parametrize('n', sorted(IV_UPPER))
    def test_iv_upper_grid(self, n):
        for q, expected in zip(range(2, 6), IV_UPPER[n]):
            value = float(iv_product_upper(zimin_multiplicities(n), q))
            assert value == pytest.approx(expected, rel=5e-3)

    def test_iv_upper_needs_single_free_letter(self):
        with pytest.raises(HypothesisViolation):
            iv_product_upper([2, 2], 2)
        with pytest.raises(HypothesisViolation):
            iv_product_upper([1, 1, 2], 2)


@pytest.mark.unit
class TestHomExpectation:
    """Test E(hom(V, W_n)) and the nondoubled lower bound."""

    @pytest.mark.parametrize('pattern,n', [('aba', 5), ('aab', 4), ('abcab', 6)])
    def test_matches_bruteforce(self, pattern, n):
        assert hom_expectation(pattern, 2, n) == hom_expectation_bruteforce(pattern, 2, n)

    def test_depends_on_multiplicities_only(self):
        assert hom_expectation('aab', 3, 6) == hom_expectation('aba', 3, 6)

    def test_nondoubled_lower(self):
        assert nondoubled_lower('aba', 2) == Fraction(1, 2)
        assert nondoubled_lower('abacaba', 3) == Fraction(1, 81)

    def test_doubled_pattern_is_rejected(self):
        with pytest.raises(DoubledInputError):
            nondoubled_lower('abab', 2)

    def test_doubled_scaling_table(self):
        rows = doubled_scaling_table('aa', 2, [2, 4])
        assert rows[0]['probability'] == Fraction(1, 2)
        assert rows[0]['scaled'] == pytest.approx(1.0)
        assert rows[1]['probability'] == Fraction(1, 4)

    def test_scaling_table_needs_doubled_pattern(self):
        with pytest.raises(HypothesisViolation):
            doubled_scaling_table('aba', 2, [3])
