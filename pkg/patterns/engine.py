"""
Pattern encounters: instance testing, the Zimin recursion, homomorphism
counts, free letters and the two unavoidability deciders.
"""
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
import logging

import networkx as nx

from words.core import Word, as_pattern, as_word, canonical_pattern
from zimin_lab.exceptions import DisagreementError, EmptyWordError
from .borders import zimin_prefix_flags

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class EncounterWitness:
    """(a, b, φ): W[a:b] = φ(V), with images listed per pattern letter."""
    start: int
    end: int
    images: tuple

    def to_dict(self, alphabet=None):
        images = [img.to_string(alphabet) if alphabet else img.to_string() for img in self.images]
        return {'start': self.start, 'end': self.end, 'images': images}


@dataclass(frozen=True)
class ReductionTrace:
    """Steps ('delete', x, word) / ('identify', (y, x), word) ending at the final word."""
    steps: tuple = field(default=())

    @property
    def final(self):
        return self.steps[-1][2] if self.steps else None

    @property
    def certifies_unavoidable(self):
        return self.final is not None and len(self.final) == 1

    def to_list(self):
        rows = []
        for op, letters, word in self.steps:
            rows.append({'op': op, 'letters': letters, 'word': str(word)})
        return rows


def _assignments(letters, pattern, count_only=False):
    """
    Backtrack over image lengths for `pattern` so that its image is exactly
    `letters`. Yields image tuples, or counts them when count_only is set.
    """
    n, m = len(letters), len(pattern)
    k = max(pattern) + 1 if m else 0
    images = [None] * k
    found = []
    total = 0

    def extend(pos, j):
        nonlocal total
        if j == m:
            if pos == n:
                if count_only:
                    total += 1
                else:
                    found.append(tuple(images))
                    return True
            return False
        x = pattern[j]
        image = images[x]
        if image is not None:
            end = pos + len(image)
            if end <= n and letters[pos:end] == image:
                return extend(end, j + 1)
            return False
        longest = n - pos - (m - j - 1)
        for length in range(1, longest + 1):
            images[x] = letters[pos:pos + length]
            if extend(pos + length, j + 1) and not count_only:
                images[x] = None
                return True
        images[x] = None
        return False

    extend(0, 0)
    return total if count_only else (found[0] if found else None)


def instance_images(letters, pattern_letters):
    """Images (one per pattern letter) with letters = φ(pattern), or None."""
    return _assignments(tuple(letters), tuple(pattern_letters))


def is_instance(word, pattern):
    """
    Return a witness (0, |W|, φ) when W = φ(V) for a nonerasing φ, else None.

    Example:
        is_instance('1111', 'aba')  # a -> '1', b -> '11'
    """
    word = as_word(word)
    pattern = as_pattern(pattern)
    if not len(pattern):
        raise EmptyWordError()
    if len(word) < len(pattern):
        return None
    images = _assignments(word.letters, pattern.word.letters)
    if images is None:
        return None
    return EncounterWitness(0, len(word), tuple(Word(img) for img in images))


def zimin_word(n):
    """Z_n: the letter at 1-based position i is the 2-adic valuation of i."""
    letters = []
    for i in range(1, 2 ** n):
        letters.append((i & -i).bit_length() - 1)
    return canonical_pattern(Word(tuple(letters)))


def zimin_order(pattern):
    """n when the pattern is Z_n, else None."""
    pattern = as_pattern(pattern)
    n = pattern.distinct_letters
    if len(pattern) == 2 ** n - 1 and pattern == zimin_word(n):
        return n
    return None


@lru_cache(maxsize=1 << 18)
def _recursive_check(letters, n):
    if n == 1:
        return len(letters) >= 1
    length = len(letters)
    for i in range(2 ** (n - 1) - 1, (length + 1) // 2):
        if letters[:i] == letters[length - i:] and _recursive_check(letters[:i], n - 1):
            return True
    return False


def is_zimin_instance(word, n):
    """
    True iff W is a Z_n-instance: for n > 1, some prefix of length
    i in [2^(n-1) - 1, ceil(|W|/2)) equals the suffix of that length and is a
    Z_(n-1)-instance.
    """
    if n < 1:
        raise ValueError('n must be at least 1')
    return _recursive_check(as_word(word).letters, n)


def encounters(pattern, word):
    """True iff some factor of W is a V-instance."""
    pattern = as_pattern(pattern)
    word = as_word(word)
    if not len(pattern):
        raise EmptyWordError()
    order = zimin_order(pattern)
    letters = word.letters
    if order is not None:
        return any(any(zimin_prefix_flags(letters[a:], order)) for a in range(len(letters)))
    return find_encounter(pattern, word) is not None


def find_encounter(pattern, word):
    """First encounter by (end, start), or None."""
    pattern = as_pattern(pattern)
    word = as_word(word)
    m = len(pattern)
    for b in range(m, len(word) + 1):
        for a in range(b - m, -1, -1):
            images = _assignments(word.letters[a:b], pattern.word.letters)
            if images is not None:
                return EncounterWitness(a, b, tuple(Word(img) for img in images))
    return None


def hom_count(pattern, word):
    """hom(V, W): the number of triples (a, b, φ) with W[a:b] = φ(V)."""
    pattern = as_pattern(pattern)
    letters = as_word(word).letters
    m = len(pattern)
    total = 0
    for a in range(len(letters)):
        for b in range(a + m, len(letters) + 1):
            total += _assignments(letters[a:b], pattern.word.letters, count_only=True)
    return total


def adjacency_graph(word):
    """Bipartite graph with an edge L(f) - R(e) for every length-2 factor fe."""
    letters = as_word(word).letters
    graph = nx.Graph()
    for x in set(letters):
        graph.add_node(('L', x))
        graph.add_node(('R', x))
    for f, e in zip(letters, letters[1:]):
        graph.add_edge(('L', f), ('R', e))
    return graph


def free_letters(word):
    """
    Letters x with no chain x e0, f0 e0, f0 e1, ..., fn en, fn x of factors,
    i.e. L(x) and R(x) lie in different components of the adjacency graph.
    """
    word = as_word(word)
    if not len(word):
        raise EmptyWordError()
    graph = adjacency_graph(word)
    return frozenset(x for x in word.alphabet if not nx.has_path(graph, ('L', x), ('R', x)))


def _delete_letter(word, x):
    return Word(tuple(c for c in word if c != x))


def _identify(word, y, x):
    return Word(tuple(x if c == y else c for c in word))


def bem_reduction(pattern):
    """
    Breadth-first search over canonical words reachable by deleting a free
    letter or identifying two letters. Returns a ReductionTrace ending in a
    word of length 1, or None when none is reachable.
    """
    start = as_pattern(pattern).word
    if len(start) == 1:
        return ReductionTrace((('start', (), start),))
    parents = {start: None}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        moves = []
        for x in sorted(free_letters(current)):
            reduced = _delete_letter(current, x)
            if len(reduced):
                moves.append((('delete', x), reduced))
        for x, y in combinations(sorted(current.alphabet), 2):
            moves.append((('identify', (y, x)), _identify(current, y, x)))
        for (op, letters), reduced in moves:
            reduced = canonical_pattern(reduced).word
            if reduced in parents:
                continue
            parents[reduced] = (current, op, letters)
            if len(reduced) == 1:
                steps = []
                node = reduced
                while parents[node] is not None:
                    previous, op_, letters_ = parents[node]
                    steps.append((op_, letters_, node))
                    node = previous
                return ReductionTrace(tuple(reversed(steps)))
            queue.append(reduced)
    return None


def is_unavoidable(pattern, method='both', certificate=False):
    """
    zimin: Z_k encounters V, k = number of distinct letters of V.
    bem: V reduces to a word of length one.
    both: run both; disagreement raises DisagreementError.
    """
    if method not in ('zimin', 'bem', 'both'):
        raise ValueError(f"unknown method {method!r}")
    pattern = as_pattern(pattern)
    if not len(pattern):
        raise EmptyWordError()
    results = {}
    certificates = {}
    if method in ('zimin', 'both'):
        zimin = zimin_word(pattern.distinct_letters)
        witness = find_encounter(pattern, zimin.word)
        results['zimin'] = witness is not None
        certificates['zimin'] = witness
    if method in ('bem', 'both'):
        trace = bem_reduction(pattern)
        results['bem'] = trace is not None
        certificates['bem'] = trace
    if len(set(results.values())) > 1:
        logger.error(f"Unavoidability deciders disagree on {pattern}: {results}")
        raise DisagreementError(details={'pattern': str(pattern), **results})
    verdict = next(iter(results.values()))
    if certificate:
        return verdict, certificates
    return verdict

