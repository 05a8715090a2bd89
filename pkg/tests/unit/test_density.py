"""
Unit tests for exact, expected and sampled instance densities,
and for the word families with prescribed densities.
"""
import io
from fractions import Fraction

import pytest

from density.exact import (
    expected_density_bruteforce, expected_density_exact, factor_density, instance_count,
    instance_density, instance_probability_exact, monte_carlo_density, scatter_z2_z3,
    surjective_density, write_scatter_csv,
)
from density.families import (
    akal_density_family, cauchy_schwarz_z2_lower, extremal_z2_family, triangle_membership,
    zero_density_family,
)
from patterns.engine import is_zimin_instance
from words.core import EMPTY, Word, enumerate_words
from zimin_lab.exceptions import EmptyWordError, LengthError, RegionViolation

Z2 = 'aba'
Z3 = 'abacaba'


@pytest.mark.unit
class TestInstanceDensity:
    """Test δ(V, W) and its variants."""

    def test_squares_in_banana(self):
        value = instance_density('aa', 'banana')
        assert value.as_rational == Fraction(2, 21)

    def test_kernel_count_matches_factor_scan(self):
        for text in ['0010110', '0001110010011100', '1' * 9]:
            letters = Word.from_string(text).letters
            direct = sum(
                1 for i in range(len(letters)) for j in range(i + 1, len(letters) + 1)
                if is_zimin_instance(letters[i:j], 2)
            )
            assert instance_count(Z2, text) == direct

    def test_avoider_has_zero_density(self):
        assert instance_density(Z2, '0011').numerator == 0

    def test_empty_inputs_raise(self):
        with pytest.raises(EmptyWordError):
            instance_density(Z2, EMPTY)

    def test_surjective_density(self):
        assert surjective_density(Z2, '010').as_rational == 1
        assert surjective_density(Z2, '011').as_rational == 0
        assert surjective_density(Z3, '010').as_rational == 0

    def test_factor_density(self):
        assert factor_density('00', '0001') == Fraction(2, 3)
        with pytest.raises(LengthError):
            factor_density('00000', '0001')


@pytest.mark.unit
class TestExpectedDensity:
    """Test instance probabilities and the expected-density identity."""

    def test_z3_probability_at_shortest_length(self):
        assert instance_probability_exact(Z3, 2, 7) == Fraction(1, 16)
        assert instance_probability_exact(Z3, 2, 6) == 0

    def test_z1_is_always_hit(self):
        assert instance_probability_exact('a', 3, 4) == 1

    @pytest.mark.parametrize('pattern,q,n', [(Z2, 2, 7), (Z3, 2, 9), ('aab', 2, 6), ('aba', 3, 5)])
    def test_identity_matches_direct_average(self, pattern, q, n):
        assert expected_density_exact(pattern, q, n) == expected_density_bruteforce(pattern, q, n)

    def test_monte_carlo_agrees_with_exact(self):
        exact = expected_density_exact(Z2, 2, 10)
        estimate = monte_carlo_density(Z2, 2, 10, 200, seed=3)
        assert estimate.samples == 200
        assert estimate.within(float(exact), sigmas=4)

    def test_monte_carlo_is_reproducible(self):
        first = monte_carlo_density(Z2, 2, 8, 40, seed=9)
        second = monte_carlo_density(Z2, 2, 8, 40, seed=9)
        assert first.mean == second.mean


@pytest.mark.unit
class TestScatter:
    """Test the (δ(Z_2,W), δ(Z_3,W)) scatter."""

    def test_points_lie_below_diagonal(self):
        dataset = scatter_z2_z3(2, 8)
        assert all(y <= x for x, y in dataset.points)
        assert dataset.expectation[0] == expected_density_exact(Z2, 2, 8)
        assert dataset.expectation[1] == expected_density_exact(Z3, 2, 8)

    def test_min_x_respects_floor(self):
        dataset = scatter_z2_z3(2, 8)
        assert dataset.min_x >= cauchy_schwarz_z2_lower(8, 2)

    def test_csv_output(self):
        stream = io.StringIO()
        write_scatter_csv(scatter_z2_z3(2, 4), stream)
        lines = stream.getvalue().splitlines()
        assert lines[0] == 'x_num,x_den,y_num,y_den'
        assert '0,1,0,1' in lines


@pytest.mark.unit
class TestFamilies:
    """Test density families and extremal words."""

    def test_extremal_family_formula(self):
        word, density = extremal_z2_family(3, 5)
        assert instance_density(Z2, word).as_rational == density

    def test_extremal_family_approaches_half(self):
        word, density = extremal_z2_family(2, 200)
        assert abs(float(density) - 0.5) < 0.01
        assert instance_density(Z2, word).as_rational == density

    def test_cauchy_schwarz_floor_holds_for_every_word(self):
        floor = cauchy_schwarz_z2_lower(10, 2)
        assert all(instance_density(Z2, w).as_rational >= floor for w in enumerate_words(2, 10))

    @pytest.mark.parametrize('x,y,expected', [
        ('1/2', '1/4', True),
        ('1/2', '0', True),
        ('1/4', '0', True),
        ('1/2', '3/4', False),
        ('1/4', '1/2', False),
    ])
    def test_triangle_membership(self, x, y, expected):
        assert triangle_membership(1, 2, x, y) is expected

    def test_akal_family(self):
        word, d_k, d_ell = akal_density_family(1, 2, '1/2', '1/4', 100)
        assert len(word) == 400
        assert d_k == Fraction(1, 2)
        assert abs(d_ell - Fraction(1, 4)) < Fraction(1, 100)

    def test_akal_family_outside_triangle(self):
        with pytest.raises(RegionViolation):
            akal_density_family(1, 2, '1/4', '1/2', 10)

    def test_zero_density_family(self):
        word = zero_density_family(1, 2, '1/4', 20)
        assert factor_density((0,), word) == Fraction(1, 4)
        assert factor_density((0, 0), word) == 0

    def test_zero_density_family_bound(self):
        with pytest.raises(RegionViolation):
            zero_density_family(1, 2, '3/4', 5)

    def test_families_are_binary(self):
        word = zero_density_family(2, 3, '1/6', 4)
        assert word.alphabet <= {0, 1}
        assert isinstance(word, Word)
