"""
Unit tests for the multi-start minimization of d(p).
Full optimizer runs are slow and marked accordingly.
"""
from fractions import Fraction

import numpy as np
import pytest

from debruijn.optimize import (
    KNOWN_CANDIDATES, LABEL, minimize_objective, objective, rationalize, run_single_restart, snap,
)
from debruijn.stationary import parse_probabilities

ONE_28 = 1 / 28


def warm_vector(text):
    return [0.5 if x is None else float(x) for x in parse_probabilities(text)]


@pytest.mark.unit
class TestObjective:
    """Test the float objective and its helpers."""

    def test_uniform_point(self, debruijn_model):
        assert objective(debruijn_model, np.full(16, 0.5)) == pytest.approx(9 / 128)

    @pytest.mark.parametrize('text', KNOWN_CANDIDATES)
    def test_known_candidates(self, debruijn_model, text):
        assert objective(debruijn_model, warm_vector(text)) == pytest.approx(ONE_28, abs=1e-12)

    def test_snap(self):
        assert list(snap([1e-12, 0.5, 1 - 1e-12])) == [0.0, 0.5, 1.0]

    def test_rationalize(self, debruijn_model):
        p = rationalize(debruijn_model, (0.2, 0.75, 1 / 3) + (0.5,) * 13)
        assert p[:3] == (Fraction(1, 5), Fraction(3, 4), Fraction(1, 3))

    def test_rationalize_ternary_rows_sum_to_one(self):
        from debruijn.graph import DeBruijnModel

        model = DeBruijnModel(k=2, q=3)
        p = rationalize(model, [(0.3333333, 0.3333333, 0.3333334)] * 9)
        assert all(sum(row) == 1 for row in p)

    def test_restarts_must_be_positive(self, debruijn_model):
        with pytest.raises(ValueError):
            minimize_objective(debruijn_model, restarts=0)


@pytest.mark.slow
class TestRestarts:
    """Test single restarts and the full multi-start search."""

    def test_warm_start_does_not_get_worse(self):
        outcome = run_single_restart(4, 2, 4, True, 7, [0], 1e-6, start=warm_vector(KNOWN_CANDIDATES[1]))
        assert outcome['d'] <= ONE_28 + 1e-6
        assert len(outcome['p']) == 16

    def test_random_restart_is_reproducible(self):
        first = run_single_restart(4, 2, 4, True, 7, [3], 1e-4)
        second = run_single_restart(4, 2, 4, True, 7, [3], 1e-4)
        assert first == second

    def test_small_search_reports_candidate(self, debruijn_model):
        report = minimize_objective(debruijn_model, restarts=2, seed=1, tolerance=1e-5)
        assert len(report.restarts) == 2 + len(KNOWN_CANDIDATES)
        assert report.d_upper_float <= ONE_28 + 1e-6
        assert report.label == LABEL
        assert float(report.verified.objective) == pytest.approx(report.best.d, abs=1e-6)

    def test_full_search_reaches_one_28(self, debruijn_model):
        report = minimize_objective(debruijn_model)
        assert len(report.restarts) == 64 + len(KNOWN_CANDIDATES)
        assert report.best.d <= ONE_28 + 1e-6
