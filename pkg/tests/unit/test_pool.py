"""
Unit tests for the task fan-out and its thread pool.
"""
from concurrent.futures import ThreadPoolExecutor

import pytest

from avoidance.search import compute_f
from avoidance.tasks import search_subtree
from zimin_lab.pool import run_group


@pytest.fixture
def executor(mocker):
    return mocker.patch('zimin_lab.pool.ThreadPoolExecutor', wraps=ThreadPoolExecutor)


def subtree_signatures():
    return [search_subtree.s([0, c], 2, 3, 'all', 10 ** 4) for c in range(3)]


@pytest.mark.unit
class TestRunGroup:
    """Test pool sizing and result order."""

    def test_threads_setting_sizes_the_pool(self, settings, executor):
        settings.ZIMIN = {**settings.ZIMIN, 'THREADS': 3, 'SPLIT_DEPTH': 2}
        assert compute_f(2, 3).f_value == 7
        executor.assert_called_once_with(max_workers=3)

    def test_pool_is_not_larger_than_the_group(self, executor):
        run_group(subtree_signatures(), threads=8)
        executor.assert_called_once_with(max_workers=3)

    def test_single_thread_runs_without_a_pool(self, settings, executor):
        settings.ZIMIN = {**settings.ZIMIN, 'THREADS': 1}
        run_group(subtree_signatures())
        executor.assert_not_called()

    def test_results_keep_signature_order(self):
        threaded = run_group(subtree_signatures(), threads=3)
        serial = run_group(subtree_signatures(), threads=1)
        assert threaded == serial
        assert [report['avoiders'][0] for report in threaded] == [[0, 0, 1], [0, 1, 1], [0, 2, 1]]

    def test_rejects_empty_pool(self):
        with pytest.raises(ValueError):
            run_group(subtree_signatures(), threads=0)
