"""
Pytest configuration and shared fixtures.
This file is automatically loaded by pytest.
"""
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent / 'fixtures'

# Edge probabilities on the 4-dimensional binary de Bruijn graph, each
# known to give d = 1/28.
CANDIDATE_P1 = '-,4/5,0,3/5,2/5,-,1/5,0,1,4/5,-,3/5,2/5,1,1/5,-'
CANDIDATE_P2 = '-,1,0,3/4,1,-,1/2,0,1,1/2,-,0,1/4,1,0,-'
CANDIDATE_P3 = '-,1,-,3/5,2/5,-,1/5,0,1,1,0,-,2/5,0,1/5,-'

PERIOD_W2 = '0001110010011100011011000111'
PERIOD_W3 = '11010001' * 3 + '101001' * 2 + '110001' * 12 + '1001' * 8


@pytest.fixture
def fixtures_dir():
    """Directory holding the reference word lists."""
    return FIXTURES


@pytest.fixture
def z3_avoiders_28():
    """The 48 binary words of length 28 that avoid Z_3, sorted."""
    return (FIXTURES / 'z3_avoiders_28.txt').read_text().split()


@pytest.fixture
def small_budgets(settings):
    """Shrinks every budget so runaway searches fail fast."""
    settings.ZIMIN = {
        **settings.ZIMIN,
        'SEARCH_NODE_BUDGET': 10 ** 6,
        'ENUMERATION_BUDGET': 2 ** 16,
    }
    return settings.ZIMIN


@pytest.fixture
def debruijn_model():
    """The 4-dimensional binary de Bruijn model with minimal Z_2-instances."""
    from debruijn.graph import DeBruijnModel

    return DeBruijnModel(k=4, q=2)


@pytest.fixture
def candidates():
    """The three known 1/28 edge assignments as text."""
    return {'p1': CANDIDATE_P1, 'p2': CANDIDATE_P2, 'p3': CANDIDATE_P3}


@pytest.fixture
def word_file(tmp_path):
    """Writes lines to a temporary word file and returns its path."""
    def write(lines):
        path = tmp_path / 'words.txt'
        path.write_text(''.join(f'{line}\n' for line in lines))
        return path
    return write
