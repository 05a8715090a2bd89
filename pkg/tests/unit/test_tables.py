"""
Unit tests for reference table regeneration.
"""
import pytest

from cli.tables import LIMINF_FORMS, build_table


@pytest.mark.unit
class TestTables:
    """Test the table builders."""

    def test_trees(self):
        header, rows = build_table('TREES')
        assert header == ['ell', 'm', 'b']
        assert [1, 7, 25] in rows
        assert [2, 10, 58] in rows
        assert len(rows) == 7 + 6 + 6

    def test_fn2_up_to_two(self):
        _, rows = build_table('fn2', max_n=2)
        assert rows == [[1, 2, 1], [2, 2, 5], [2, 3, 7], [2, 4, 9]]

    def test_appendmd_z3_row(self):
        header, rows = build_table('appendMD')
        assert header[:2] == ['n', 'q']
        row = dict(zip(header, rows[0]))
        assert (row['n'], row['q']) == (3, 2)
        assert row['window'] == '6.25e-4'
        assert row['minimal'] == '1.85e-2'
        assert row['upper'] == '0.143'

    def test_appendmd_uses_tower_when_f_is_unknown(self):
        header, rows = build_table('appendMD')
        row = next(dict(zip(header, r)) for r in rows if r[:2] == [4, 3])
        assert all(row[name] == '-' for name in LIMINF_FORMS)
        assert row['window (tower)'] == '6.64e-392943'

    def test_unknown_table(self):
        with pytest.raises(KeyError):
            build_table('nope')


@pytest.mark.slow
class TestSeriesTables:
    """Test the series tables."""

    def test_iz2(self):
        _, rows = build_table('IZ2')
        assert rows[0] == [2, '0.7322132']
        assert rows[-1][0] == 8
