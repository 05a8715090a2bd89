"""
Stationary distributions of probabilistic walks on de Bruijn graphs and the
quadratic density objective d = sum_V r_V^2.

p holds one entry per node. For q = 2 an entry is the probability of
appending 1; for q > 2 it is a distribution over the q letters. None marks
an unconstrained node and is read as the uniform choice.

When the walk has several closed classes the solution is the Cesàro limit
from the uniform start: each class's stationary law weighted by its
absorption probability.
"""
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
import logging

import networkx as nx
import numpy as np

from density.exact import substring_count
from words.core import as_word
from zimin_lab.conf import get_setting
from zimin_lab.exceptions import BadProbabilities, LengthError, NoConvergence, SingularSystem

logger = logging.getLogger(__name__)

RATIONAL = 'rational'
FLOAT = 'float'
MODES = (RATIONAL, FLOAT)

# Float edges at or below this weight are treated as absent.
EDGE_EPSILON = 1e-12
RESIDUAL_TOLERANCE = 1e-12
BLANK_MARKERS = {'-', '--', '–', '—', '−'}


@dataclass
class StationarySolution:
    p: tuple
    q_dist: list
    r: dict
    objective: object
    mode: str = RATIONAL
    reducible: bool = False
    classes: list = field(default_factory=list)
    residual: float = 0.0

    @property
    def d_float(self):
        return float(self.objective)


@dataclass
class FamilyFrequencies:
    """Per-period node frequencies of a cyclic word and what they imply."""
    period: object
    q_dist: list
    implied_p: tuple
    r: dict
    estimate: Fraction


@dataclass
class FamilyEstimate:
    length: int
    counts: dict
    raw: Fraction
    corrected: Fraction


def parse_probabilities(text, q=2):
    """
    '-,4/5,0,3/5' -> (None, Fraction(4, 5), Fraction(0), Fraction(3, 5)).

    For q > 2 entries are ';'-separated distributions: '1/2;1/4;1/4,-,...'.
    """
    entries = []
    for index, token in enumerate(str(text).split(',')):
        token = token.strip()
        if token in BLANK_MARKERS:
            entries.append(None)
            continue
        parts = token.split(';')
        try:
            values = tuple(Fraction(part.strip()) for part in parts)
        except (ValueError, ZeroDivisionError):
            raise BadProbabilities(
                f"entry {index} ({token!r}) is not a rational number",
                details={'index': index, 'entry': token},
            ) from None
        if any(not 0 <= v <= 1 for v in values):
            raise BadProbabilities(details={'index': index, 'entry': token})
        if q == 2:
            if len(values) != 1:
                raise BadProbabilities(details={'index': index, 'entry': token})
            entries.append(values[0])
        else:
            if len(values) != q or sum(values) != 1:
                raise BadProbabilities(details={'index': index, 'entry': token})
            entries.append(values)
    return tuple(entries)


def _edge_weights(model, p, mode):
    """Per-node tuples of q transition probabilities."""
    q = model.q
    if len(p) != model.size:
        raise BadProbabilities(
            f"expected {model.size} entries, got {len(p)}",
            details={'expected': model.size, 'given': len(p)},
        )
    one = Fraction(1) if mode == RATIONAL else 1.0
    cast = Fraction if mode == RATIONAL else float
    weights = []
    for index, entry in enumerate(p):
        if entry is None:
            weights.append(tuple(one / q for _ in range(q)))
            continue
        if q == 2 and not isinstance(entry, (tuple, list)):
            x = cast(entry)
            row = (one - x, x)
        else:
            row = tuple(cast(v) for v in entry)
            if len(row) != q:
                raise BadProbabilities(details={'index': index})
        total = sum(row)
        if any(v < 0 or v > 1 for v in row) or (
            total != 1 if mode == RATIONAL else abs(total - 1) > 1e-9
        ):
            raise BadProbabilities(details={'index': index, 'entry': [str(v) for v in row]})
        weights.append(row)
    return weights


def _solve_exact(matrix, rhs):
    """Gauss-Jordan elimination over Fractions."""
    n = len(matrix)
    rows = [list(matrix[i]) + [rhs[i]] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            raise SingularSystem(details={'column': col, 'size': n})
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            factor = rows[r][col]
            if r != col and factor != 0:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def _solve(matrix, rhs, mode):
    if mode == RATIONAL:
        return _solve_exact(matrix, rhs)
    try:
        return list(np.linalg.solve(np.array(matrix, dtype=float), np.array(rhs, dtype=float)))
    except np.linalg.LinAlgError:
        raise NoConvergence(details={'size': len(matrix)}) from None


def _class_distribution(model, weights, members, mode):
    """Stationary law of the walk restricted to a closed class."""
    index = {node: i for i, node in enumerate(members)}
    size = len(members)
    zero = Fraction(0) if mode == RATIONAL else 0.0
    matrix = [[zero] * size for _ in range(size)]
    for node in members:
        for c in range(model.q):
            target = model.successor(node, c)
            if target in index:
                matrix[index[target]][index[node]] += weights[node][c]
    for i in range(size):
        matrix[i][i] -= 1
    matrix[-1] = [zero + 1] * size
    rhs = [zero] * (size - 1) + [zero + 1]
    return dict(zip(members, _solve(matrix, rhs, mode)))


def _absorption_weights(model, weights, classes, mode):
    """Probability that the walk from a uniform start ends in each class."""
    closed = {node: k for k, members in enumerate(classes) for node in members}
    transient = [node for node in model.nodes if node not in closed]
    zero = Fraction(0) if mode == RATIONAL else 0.0
    totals = [zero + len(members) for members in classes]
    if transient:
        index = {node: i for i, node in enumerate(transient)}
        size = len(transient)
        matrix = [[zero] * size for _ in range(size)]
        for node in transient:
            matrix[index[node]][index[node]] += 1
            for c in range(model.q):
                target = model.successor(node, c)
                if target in index:
                    matrix[index[node]][index[target]] -= weights[node][c]
        for k in range(len(classes)):
            rhs = [zero] * size
            for node in transient:
                for c in range(model.q):
                    if closed.get(model.successor(node, c)) == k:
                        rhs[index[node]] += weights[node][c]
            totals[k] += sum(_solve(matrix, rhs, mode))
    return [total / model.size for total in totals]


def instance_rates(model, q_dist):
    """r_V = total stationary weight of the nodes whose word ends with V."""
    rates = [0] * len(model.instances)
    for node, indices in model.node_to_instances.items():
        for i in indices:
            rates[i] += q_dist[node]
    return {str(model.instances[i]): rates[i] for i in range(len(rates))}


def _residual(model, weights, q_dist):
    moved = [q_dist[0] * 0] * model.size
    for node in model.nodes:
        for c in range(model.q):
            moved[model.successor(node, c)] += weights[node][c] * q_dist[node]
    return max(abs(moved[node] - q_dist[node]) for node in model.nodes)


def stationary(model, p, mode=RATIONAL):
    """
    Solve the balance equations for the walk given by p and evaluate d.

    Example:
        stationary(DeBruijnModel(4), [Fraction(1, 2)] * 16).objective  # 9/128
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    weights = _edge_weights(model, p, mode)
    threshold = 0 if mode == RATIONAL else EDGE_EPSILON
    graph = model.graph(weights, threshold=threshold)
    classes = sorted((sorted(c) for c in nx.attracting_components(graph)), key=lambda c: c[0])
    reducible = not nx.is_strongly_connected(graph)
    zero = Fraction(0) if mode == RATIONAL else 0.0
    q_dist = [zero] * model.size
    shares = [zero + 1] if len(classes) == 1 else _absorption_weights(model, weights, classes, mode)
    for share, members in zip(shares, classes):
        for node, mass in _class_distribution(model, weights, members, mode).items():
            q_dist[node] += share * mass
    if mode == FLOAT:
        q_dist = [max(float(v), 0.0) for v in q_dist]
    residual = _residual(model, weights, q_dist)
    if mode == FLOAT and residual > RESIDUAL_TOLERANCE * max(1, model.size):
        raise NoConvergence(details={'residual': residual})
    if mode == RATIONAL and residual != 0:
        raise SingularSystem(details={'residual': residual})
    rates = instance_rates(model, q_dist)
    objective = sum((r * r for r in rates.values()), zero)
    if reducible:
        logger.debug(f"Walk is reducible: {len(classes)} closed class(es) of sizes {[len(c) for c in classes]}")
    return StationarySolution(
        p=tuple(p), q_dist=q_dist, r=rates, objective=objective, mode=mode,
        reducible=reducible, classes=classes, residual=residual,
    )


def verify_candidate(model, p):
    """Exact objective for a rational p (or its text form)."""
    if isinstance(p, str):
        p = parse_probabilities(p, model.q)
    solution = stationary(model, p, mode=RATIONAL)
    logger.info(f"Candidate objective d = {solution.objective} ({float(solution.objective):.10f})")
    return solution


def _cyclic_visits(letters, model):
    size = len(letters)
    visits = []
    for i in range(size):
        window = tuple(letters[(i - model.k + 1 + j) % size] for j in range(model.k))
        visits.append(model.node_from_letters(window))
    return visits


def node_counts(word, model):
    """Node visit counts along a finite word: one per window of length k."""
    letters = as_word(word).letters
    return Counter(
        model.node_from_letters(letters[i - model.k + 1:i + 1]) for i in range(model.k - 1, len(letters))
    )


def word_family_frequencies(period, model):
    """
    Node frequencies of the cyclic word `period`, the edge probabilities it
    implies and the quadratic density estimate sum_V (R_V / |period|)^2.
    """
    letters = as_word(period).letters
    if len(letters) < model.k:
        raise LengthError(details={'period': len(letters), 'k': model.k})
    size = len(letters)
    visits = _cyclic_visits(letters, model)
    counts = Counter(visits)
    followers = {}
    for i, node in enumerate(visits):
        followers.setdefault(node, Counter())[letters[(i + 1) % size]] += 1
    q_dist = [Fraction(counts[node], size) for node in model.nodes]
    implied = []
    for node in model.nodes:
        if node not in followers:
            implied.append(None)
        elif model.q == 2:
            implied.append(Fraction(followers[node][1], counts[node]))
        else:
            implied.append(tuple(Fraction(followers[node][c], counts[node]) for c in range(model.q)))
    rates = instance_rates(model, q_dist)
    estimate = sum((r * r for r in rates.values()), Fraction(0))
    return FamilyFrequencies(as_word(period), q_dist, tuple(implied), rates, estimate)


def _occurrences(factor, letters):
    m = len(factor)
    return sum(1 for i in range(len(letters) - m + 1) if letters[i:i + m] == factor)


def finite_family_estimate(period, repeats, model):
    """
    On W = period^repeats: raw sum_V (c_V/|W|)^2 and the finite-length floor
    sum_V (C(c_V, 2) - |V| c_V) / C(|W|+1, 2) on the Z_3-density.
    """
    if repeats < 1:
        raise ValueError('repeats must be positive')
    letters = as_word(period).letters * repeats
    length = len(letters)
    counts = {str(v): _occurrences(v.letters, letters) for v in model.instances}
    raw = sum((Fraction(c, length) ** 2 for c in counts.values()), Fraction(0))
    corrected = sum(
        (Fraction(comb(counts[str(v)], 2) - len(v) * counts[str(v)]) for v in model.instances),
        Fraction(0),
    ) / substring_count(length)
    return FamilyEstimate(length, counts, raw, corrected)


def simulate_walk(model, p, steps, seed=None):
    """Empirical node frequencies of a walk of `steps` moves from a random start."""
    if steps < 1:
        raise ValueError('steps must be positive')
    weights = np.array(_edge_weights(model, p, FLOAT), dtype=float)
    cumulative = np.cumsum(weights, axis=1)
    rng = np.random.default_rng(get_setting('DEFAULT_SEED', seed))
    node = int(rng.integers(model.size))
    draws = rng.random(steps)
    counts = np.zeros(model.size, dtype=np.int64)
    last = model.q - 1
    for u in draws:
        letter = min(int(np.searchsorted(cumulative[node], u, side='right')), last)
        node = model.successor(node, letter)
        counts[node] += 1
    return counts / steps
