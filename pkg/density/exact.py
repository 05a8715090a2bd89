"""
Instance densities of patterns in words, exact and sampled.
"""
import csv
from dataclasses import dataclass, field
from fractions import Fraction
import logging

import numpy as np

from patterns.borders import zimin_prefix_levels
from patterns.engine import instance_images, zimin_order
from words.core import as_pattern, as_word, enumerate_words
from zimin_lab.conf import get_setting
from zimin_lab.exceptions import EmptyWordError, LengthError
from zimin_lab.pool import run_group

logger = logging.getLogger(__name__)

MONTE_CARLO_CHUNK = 16


@dataclass(frozen=True)
class DensityValue:
    """numerator qualifying substrings out of denominator C(|W|+1, 2)."""
    numerator: int
    denominator: int

    @property
    def as_rational(self):
        return Fraction(self.numerator, self.denominator)

    @property
    def as_float(self):
        return self.numerator / self.denominator


def substring_count(length):
    return length * (length + 1) // 2


def zimin_substring_counts(letters, n):
    """
    counts[k] = number of (i, j) with W[i:j] a Z_(k+1)-instance, for k < n.
    One border-table pass per start position.
    """
    counts = [0] * n
    for start in range(len(letters)):
        levels = zimin_prefix_levels(letters[start:], n)
        for k in range(n):
            counts[k] += sum(levels[k])
    return counts


def instance_count(pattern, word):
    """Number of substrings of W that are V-instances."""
    pattern = as_pattern(pattern)
    letters = as_word(word).letters
    order = zimin_order(pattern)
    if order is not None:
        return zimin_substring_counts(letters, order)[order - 1]
    m = len(pattern)
    total = 0
    for i in range(len(letters)):
        for j in range(i + m, len(letters) + 1):
            if instance_images(letters[i:j], pattern.word.letters) is not None:
                total += 1
    return total


def instance_density(pattern, word):
    """
    δ(V, W).

    Example:
        instance_density('aa', 'banana')  # 2/21 once mapped to codes
    """
    pattern = as_pattern(pattern)
    word = as_word(word)
    if not len(pattern) or not len(word):
        raise EmptyWordError()
    return DensityValue(instance_count(pattern, word), substring_count(len(word)))


def surjective_density(pattern, word):
    """1 when W itself is a V-instance, else 0."""
    pattern = as_pattern(pattern)
    word = as_word(word)
    if not len(pattern) or not len(word):
        raise EmptyWordError()
    hit = instance_images(word.letters, pattern.word.letters) is not None if len(word) >= len(pattern) else False
    return DensityValue(int(hit), 1)


def factor_density(factor, word):
    """Occurrences of V as a factor of W over the |W| + 1 - |V| windows."""
    factor = as_word(factor).letters
    letters = as_word(word).letters
    if not factor:
        raise EmptyWordError()
    if len(factor) > len(letters):
        raise LengthError(details={'factor': len(factor), 'word': len(letters)})
    windows = len(letters) + 1 - len(factor)
    hits = sum(1 for i in range(windows) if letters[i:i + len(factor)] == factor)
    return Fraction(hits, windows)


def is_instance_of(pattern, letters):
    order = zimin_order(pattern)
    if order is not None:
        return zimin_prefix_levels(letters, order)[order - 1][len(letters)]
    return instance_images(letters, pattern.word.letters) is not None


def instance_probability_exact(pattern, q, n, budget=None):
    """I_n(V,q) = |Inst_n(V,[q])| / q^n."""
    from asymptotics.series import z2_instance_count_exact

    pattern = as_pattern(pattern)
    if not len(pattern):
        raise EmptyWordError()
    if n < len(pattern):
        return Fraction(0)
    order = zimin_order(pattern)
    if order == 1:
        return Fraction(1)
    if order == 2:
        return Fraction(z2_instance_count_exact(n, q), q ** n)
    hits = sum(1 for word in enumerate_words(q, n, budget=budget) if is_instance_of(pattern, word.letters))
    return Fraction(hits, q ** n)


def expected_density_exact(pattern, q, n, budget=None):
    """E δ(V, W_n) = sum_{m<=n} (n+1-m) I_m(V,q) / C(n+1,2)."""
    total = sum(
        (n + 1 - m) * instance_probability_exact(pattern, q, m, budget=budget)
        for m in range(1, n + 1)
    )
    return total / substring_count(n)


def expected_density_bruteforce(pattern, q, n, budget=None):
    words = list(enumerate_words(q, n, budget=budget))
    total = sum(instance_count(pattern, word) for word in words)
    return Fraction(total, len(words) * substring_count(n))


@dataclass
class MonteCarloEstimate:
    mean: float
    standard_error: float
    samples: int
    seed: int

    def within(self, value, sigmas=3):
        return abs(self.mean - value) <= sigmas * self.standard_error


def sample_chunk(pattern_text, q, n, count, entropy, spawn_key):
    """Densities of `count` uniform words drawn from one spawned RNG stream."""
    pattern = as_pattern(pattern_text)
    rng = np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=tuple(spawn_key)))
    values = []
    for _ in range(count):
        letters = tuple(int(c) for c in rng.integers(0, q, size=n))
        values.append(instance_count(pattern, letters) / substring_count(n))
    return values


def monte_carlo_density(pattern, q, n, samples, seed=None):
    """
    Mean of δ(V, W_n) over uniform samples with its standard error.

    Samples are drawn in fixed-size chunks, one spawned stream per chunk, so
    the estimate depends on the seed only.
    """
    from .tasks import sample_density_chunk

    if samples < 1:
        raise ValueError('samples must be positive')
    seed = get_setting('DEFAULT_SEED', seed)
    pattern_text = str(as_pattern(pattern))
    chunks = []
    for index, start in enumerate(range(0, samples, MONTE_CARLO_CHUNK)):
        count = min(MONTE_CARLO_CHUNK, samples - start)
        chunks.append(sample_density_chunk.s(pattern_text, q, n, count, seed, [index]))
    values = np.array([v for chunk in run_group(chunks) for v in chunk])
    error = float(values.std(ddof=1) / np.sqrt(len(values))) if len(values) > 1 else 0.0
    estimate = MonteCarloEstimate(float(values.mean()), error, len(values), seed)
    logger.info(f"δ({pattern_text}, W_{n}) over [{q}]: {estimate.mean:.6f} ± {estimate.standard_error:.6f}")
    return estimate


@dataclass
class ScatterDataset:
    q: int
    n: int
    points: set = field(default_factory=set)
    expectation: tuple = None

    @property
    def min_x(self):
        return min(x for x, _ in self.points)

    @property
    def max_x(self):
        return max(x for x, _ in self.points)

    def sorted_points(self):
        return sorted(self.points)


def scatter_z2_z3(q, n, budget=None):
    """Every attained pair (δ(Z_2,W), δ(Z_3,W)) over W in [q]^n."""
    denominator = substring_count(n)
    dataset = ScatterDataset(q=q, n=n)
    total_x = 0
    total_y = 0
    words = 0
    for word in enumerate_words(q, n, budget=budget):
        _, z2, z3 = zimin_substring_counts(word.letters, 3)
        dataset.points.add((Fraction(z2, denominator), Fraction(z3, denominator)))
        total_x += z2
        total_y += z3
        words += 1
    dataset.expectation = (
        Fraction(total_x, words * denominator),
        Fraction(total_y, words * denominator),
    )
    logger.info(f"Scatter [{q}]^{n}: {len(dataset.points)} distinct points, min x = {float(dataset.min_x):.4f}")
    return dataset


SCATTER_HEADER = ['x_num', 'x_den', 'y_num', 'y_den']


def scatter_rows(dataset):
    return [[x.numerator, x.denominator, y.numerator, y.denominator] for x, y in dataset.sorted_points()]


def write_scatter_csv(dataset, stream):
    writer = csv.writer(stream)
    writer.writerow(SCATTER_HEADER)
    writer.writerows(scatter_rows(dataset))
