"""
Unit tests for the bifix counting sequences a, b = c + d and bhat.
Every recursion is checked against brute-force enumeration.
"""
import pytest

from asymptotics.sequences import (
    b_oracle, bhat_closed_form, bhat_oracle, bhat_recursion, bifix_free_counts, cd_recursion, reconcile,
)
from words.core import enumerate_words, is_bifix_free
from zimin_lab.exceptions import OracleMismatch

TREES = {
    1: dict(zip(range(3, 10), (2, 3, 6, 14, 25, 52, 100))),
    2: dict(zip(range(5, 11), (2, 4, 8, 13, 32, 58))),
    3: dict(zip(range(7, 13), (2, 4, 8, 16, 30, 63))),
}


@pytest.mark.unit
class TestBifixFreeCounts:
    """Test the a sequence."""

    def test_binary_prefix(self):
        assert bifix_free_counts(2, 9).values == (0, 2, 2, 4, 6, 12, 20, 40, 74, 148)

    @pytest.mark.parametrize('q,top', [(2, 12), (3, 7)])
    def test_matches_enumeration(self, q, top):
        table = bifix_free_counts(q, top)
        for length in range(1, top + 1):
            assert table[length] == sum(1 for w in enumerate_words(q, length) if is_bifix_free(w))

    def test_rejects_negative_length(self):
        with pytest.raises(ValueError):
            bifix_free_counts(2, -1)


@pytest.mark.unit
class TestBRecursion:
    """Test b = c + d against the TREES values and the oracle."""

    @pytest.mark.parametrize('ell', [1, 2, 3])
    def test_trees_values(self, ell):
        b = cd_recursion(2, ell, max(TREES[ell]))[2]
        for m, expected in TREES[ell].items():
            assert b[m] == expected

    def test_b_vanishes_up_to_twice_ell(self):
        c, d, b = cd_recursion(2, 3, 12)
        assert all(b[m] == 0 for m in range(7))
        assert all(d[m] == 0 for m in range(13))

    def test_reconcile_checks_every_index(self):
        assert reconcile(2, 1, 10) == list(range(3, 11))

    def test_oracle_with_other_bifix(self):
        assert b_oracle(2, 2, 8, bifix=(1, 0)) == b_oracle(2, 2, 8)

    def test_oracle_rejects_bordered_bifix(self):
        with pytest.raises(ValueError):
            b_oracle(2, 2, 8, bifix=(0, 0))

    def test_check_raises_on_first_divergence(self, mocker):
        mocker.patch('asymptotics.sequences.b_oracle', return_value=-1)
        with pytest.raises(OracleMismatch) as exc_info:
            cd_recursion(2, 1, 6, check=True)
        assert exc_info.value.details['m'] == 3


@pytest.mark.unit
class TestBhat:
    """Test both bhat variants."""

    @pytest.mark.parametrize('ell', [1, 2, 3])
    def test_overcount_equals_closed_form(self, ell):
        table = bhat_recursion(2, ell, 16)
        assert list(table.values) == [bhat_closed_form(2, ell, m) for m in range(17)]

    def test_overcount_matches_oracle(self):
        for ell in (1, 2):
            for m in range(2 * ell + 1, 12):
                assert bhat_closed_form(2, ell, m) == bhat_oracle(2, ell, m)

    def test_oracle_matches_closed_form_for_longer_bifix(self):
        assert [bhat_oracle(2, 3, m) for m in range(7, 12)] == [bhat_closed_form(2, 3, m) for m in range(7, 12)]

    def test_oracle_with_other_bifix(self):
        assert bhat_oracle(2, 3, 11, bifix=(1, 1, 0)) == bhat_oracle(2, 3, 11)

    def test_oracle_rejects_bordered_bifix(self):
        with pytest.raises(ValueError):
            bhat_oracle(2, 2, 8, bifix=(0, 0))

    @pytest.mark.parametrize('ell', [1, 2, 3])
    def test_overcount_bounds_b(self, ell):
        b = cd_recursion(2, ell, 16)[2]
        bhat = bhat_recursion(2, ell, 16)
        assert all(bhat[m] >= b[m] for m in range(17))

    def test_printed_variant_undercounts(self):
        printed = bhat_recursion(2, 1, 9, variant='printed')
        assert printed.values[3:] == (2, 4, 6, 14, 24, 52, 98)
        assert printed[7] < TREES[1][7]

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            bhat_recursion(2, 1, 9, variant='exact')
