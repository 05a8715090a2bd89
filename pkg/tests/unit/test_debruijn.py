"""
Unit tests for de Bruijn walks: the graph model, the exact stationary
solver, word-family frequencies and the sampled walk.
"""
from collections import Counter
from fractions import Fraction

import pytest

from debruijn.graph import DeBruijnModel, z2_bifixfree_instances
from debruijn.stationary import (
    FLOAT, finite_family_estimate, node_counts, parse_probabilities, simulate_walk, stationary,
    verify_candidate, word_family_frequencies,
)
from density.exact import instance_density
from tests.conftest import CANDIDATE_P2, CANDIDATE_P3, PERIOD_W2, PERIOD_W3
from zimin_lab.exceptions import BadProbabilities, LengthError

ONE_28 = Fraction(1, 28)


@pytest.mark.unit
class TestModel:
    """Test node arithmetic and the tracked instances."""

    def test_minimal_instances(self, debruijn_model):
        assert [str(v) for v in debruijn_model.instances] == ['000', '010', '101', '111', '0110', '1001']

    def test_literal_instances_include_bordered_words(self):
        literal = [str(v) for v in z2_bifixfree_instances(2, 4, minimal=False)]
        assert '0100' in literal
        assert '0010' in literal
        assert '0000' not in literal

    def test_node_arithmetic(self, debruijn_model):
        assert debruijn_model.size == 16
        assert debruijn_model.successor(0b0111, 1) == 0b1111
        assert debruijn_model.successor(0b1000, 0) == 0
        assert debruijn_model.node_word(6) == (0, 1, 1, 0)
        assert debruijn_model.label(9) == '1001'
        assert debruijn_model.node_from_letters((1, 0, 0, 1)) == 9

    def test_node_to_instances(self, debruijn_model):
        names = [str(v) for v in debruijn_model.instances]
        tracked = {names[i] for i in debruijn_model.node_to_instances[0b0110]}
        assert tracked == {'0110'}
        assert {names[i] for i in debruijn_model.node_to_instances[0b0000]} == {'000'}

    def test_graph_is_two_regular(self, debruijn_model):
        graph = debruijn_model.graph()
        assert graph.number_of_nodes() == 16
        assert all(graph.out_degree(node) in (1, 2) for node in graph)

    def test_instances_cannot_outgrow_nodes(self):
        with pytest.raises(ValueError):
            DeBruijnModel(k=4, max_len=5)


@pytest.mark.unit
class TestParsing:
    """Test probability text parsing."""

    def test_blank_markers_mean_unconstrained(self):
        assert parse_probabilities('-,4/5,0,1') == (None, Fraction(4, 5), Fraction(0), Fraction(1))
        assert parse_probabilities('–, 1/2') == (None, Fraction(1, 2))

    def test_ternary_rows(self):
        assert parse_probabilities('1/2;1/4;1/4,-', q=3) == ((Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)), None)

    @pytest.mark.parametrize('text', ['x,1', '2', '1/2;1/2'])
    def test_bad_entries(self, text):
        with pytest.raises(BadProbabilities):
            parse_probabilities(text)

    def test_ternary_rows_must_sum_to_one(self):
        with pytest.raises(BadProbabilities):
            parse_probabilities('1/2;1/2;1/2', q=3)


@pytest.mark.unit
class TestStationary:
    """Test the exact and float stationary solvers."""

    def test_uniform_walk(self, debruijn_model):
        solution = stationary(debruijn_model, [Fraction(1, 2)] * 16)
        assert solution.objective == Fraction(9, 128)
        assert all(share == Fraction(1, 16) for share in solution.q_dist)
        assert not solution.reducible

    def test_all_zeros_walk(self, debruijn_model):
        solution = stationary(debruijn_model, [Fraction(0)] * 16)
        assert solution.objective == 1
        assert solution.reducible
        assert solution.classes == [[0]]

    @pytest.mark.parametrize('name', ['p1', 'p2', 'p3'])
    def test_known_candidates(self, debruijn_model, candidates, name):
        solution = verify_candidate(debruijn_model, candidates[name])
        assert solution.objective == ONE_28
        assert solution.residual == 0

    def test_float_mode_agrees(self, debruijn_model):
        solution = stationary(debruijn_model, parse_probabilities(CANDIDATE_P2), mode=FLOAT)
        assert solution.d_float == pytest.approx(1 / 28, abs=1e-12)

    def test_two_closed_classes_are_weighted(self, debruijn_model):
        p = [Fraction(1, 2)] * 16
        p[0] = Fraction(0)
        p[15] = Fraction(1)
        solution = stationary(debruijn_model, p)
        assert solution.classes == [[0], [15]]
        assert solution.q_dist[0] == solution.q_dist[15] == Fraction(1, 2)
        assert solution.objective == Fraction(1, 2)

    def test_ternary_uniform_walk(self):
        model = DeBruijnModel(k=3, q=3)
        assert len(model.instances) == 9
        assert stationary(model, [None] * 27).objective == Fraction(1, 81)

    def test_wrong_length_is_rejected(self, debruijn_model):
        with pytest.raises(BadProbabilities):
            stationary(debruijn_model, [Fraction(1, 2)] * 15)

    def test_unknown_mode(self, debruijn_model):
        with pytest.raises(ValueError):
            stationary(debruijn_model, [Fraction(1, 2)] * 16, mode='symbolic')


@pytest.mark.unit
class TestWordFamilies:
    """Test cyclic-word frequencies and finite-length estimates."""

    def test_w2_reproduces_p2(self, debruijn_model):
        frequencies = word_family_frequencies(PERIOD_W2, debruijn_model)
        assert frequencies.implied_p == parse_probabilities(CANDIDATE_P2)
        assert frequencies.estimate == ONE_28

    def test_w3_reproduces_p3(self, debruijn_model):
        frequencies = word_family_frequencies(PERIOD_W3, debruijn_model)
        assert len(frequencies.period) == 140
        assert frequencies.implied_p == parse_probabilities(CANDIDATE_P3)
        assert frequencies.estimate == ONE_28

    def test_w2_frequencies_are_stationary(self, debruijn_model):
        frequencies = word_family_frequencies(PERIOD_W2, debruijn_model)
        solution = verify_candidate(debruijn_model, CANDIDATE_P2)
        assert solution.q_dist == frequencies.q_dist

    def test_node_counts_grow_by_whole_periods(self, debruijn_model):
        frequencies = word_family_frequencies(PERIOD_W2, debruijn_model)
        expected = Counter({node: int(share * 28 * 4) for node, share in enumerate(frequencies.q_dist) if share})
        difference = node_counts(PERIOD_W2 * 7, debruijn_model) - node_counts(PERIOD_W2 * 3, debruijn_model)
        assert difference == expected

    def test_period_shorter_than_node_is_rejected(self, debruijn_model):
        with pytest.raises(LengthError):
            word_family_frequencies('010', debruijn_model)

    def test_corrected_estimate_bounds_z3_density(self, debruijn_model):
        estimate = finite_family_estimate(PERIOD_W2, 10, debruijn_model)
        assert estimate.length == 280
        assert estimate.counts['000'] == 30
        assert estimate.corrected <= instance_density('abacaba', PERIOD_W2 * 10).as_rational

    def test_raw_estimate_tends_to_quadratic(self, debruijn_model):
        estimate = finite_family_estimate(PERIOD_W2, 50, debruijn_model)
        assert abs(estimate.raw - ONE_28) < Fraction(1, 1000)


@pytest.mark.unit
class TestSimulation:
    """Test the sampled walk."""

    def test_frequencies_sum_to_one(self, debruijn_model):
        shares = simulate_walk(debruijn_model, parse_probabilities(CANDIDATE_P2), 2000, seed=4)
        assert shares.sum() == pytest.approx(1.0)

    def test_same_seed_same_walk(self, debruijn_model):
        p = [Fraction(1, 2)] * 16
        first = simulate_walk(debruijn_model, p, 500, seed=2)
        second = simulate_walk(debruijn_model, p, 500, seed=2)
        assert (first == second).all()

    @pytest.mark.slow
    def test_long_walk_matches_stationary(self, debruijn_model):
        p = parse_probabilities(CANDIDATE_P2)
        shares = simulate_walk(debruijn_model, p, 10 ** 6, seed=1)
        exact = stationary(debruijn_model, p).q_dist
        assert max(abs(float(a) - b) for a, b in zip(exact, shares)) < 5e-3
