"""
Exhaustive and randomized searches over the q-ary prefix tree of Z_n-avoiders.

Every node of the tree is a word avoiding Z_n. A child w+c is pruned as soon as
some suffix of w+c is a Z_n-instance; since w already avoids Z_n, those are
the only new factors that can be instances. When the only instance suffix of
w+c is w+c itself, w+c is a minimal Z_n-instance, and every minimal instance
arises this way.
"""
from dataclasses import dataclass, field
import logging

import numpy as np

from patterns.borders import suffix_instance_lengths, zimin_prefix_flags
from patterns.engine import is_zimin_instance
from words.core import Word, as_word
from zimin_lab.conf import get_setting
from zimin_lab.exceptions import BudgetExhausted
from zimin_lab.pool import run_group

logger = logging.getLogger(__name__)

PROGRESS_EVERY = 1 << 20

COLLECT_NONE = 'none'
COLLECT_MAX = 'max'
COLLECT_ALL = 'all'
COLLECT_MINIMAL = 'minimal'


@dataclass
class AvoidanceResult:
    """Outcome of a prefix-tree search for Z_n over [q]."""
    n: int
    q: int
    f_value: int = None
    max_avoiders: list = None
    nodes_explored: int = 0
    budget_exhausted: bool = False
    deepest: int = 0
    symmetry_reduced: bool = False

    @property
    def f_lower_bound(self):
        """f(n,q) >= deepest avoider length + 1, sound even for partial searches."""
        return self.deepest + 1


@dataclass
class MinimalInstances:
    n: int
    q: int
    words: list
    max_len: int = None
    complete: bool = True

    @property
    def count(self):
        return len(self.words)


@dataclass
class SubtreeReport:
    """What one subtree search found. Plain data so it can cross a task boundary."""
    nodes: int = 0
    deepest: int = 0
    deepest_words: list = field(default_factory=list)
    avoiders: list = field(default_factory=list)
    minimal: list = field(default_factory=list)
    frontier: list = field(default_factory=list)
    truncated: bool = False
    exhausted: bool = False

    def to_dict(self):
        return {
            'nodes': self.nodes,
            'deepest': self.deepest,
            'deepest_words': [list(w) for w in self.deepest_words],
            'avoiders': [list(w) for w in self.avoiders],
            'minimal': [list(w) for w in self.minimal],
            'frontier': [list(w) for w in self.frontier],
            'truncated': self.truncated,
            'exhausted': self.exhausted,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            nodes=data['nodes'],
            deepest=data['deepest'],
            deepest_words=[tuple(w) for w in data['deepest_words']],
            avoiders=[tuple(w) for w in data['avoiders']],
            minimal=[tuple(w) for w in data['minimal']],
            frontier=[tuple(w) for w in data['frontier']],
            truncated=data['truncated'],
            exhausted=data['exhausted'],
        )

    def merge(self, other):
        self.nodes += other.nodes
        if other.deepest > self.deepest:
            self.deepest = other.deepest
            self.deepest_words = list(other.deepest_words)
        elif other.deepest == self.deepest:
            self.deepest_words.extend(other.deepest_words)
        self.avoiders.extend(other.avoiders)
        self.minimal.extend(other.minimal)
        self.truncated = self.truncated or other.truncated
        self.exhausted = self.exhausted or other.exhausted
        return self


class AvoiderTreeSearch:
    """
    Depth-first walk of the Z_n-avoider tree below a prefix.

    collect selects what is kept besides the node count and the deepest
    length: COLLECT_MAX keeps the deepest words, COLLECT_ALL every avoider,
    COLLECT_MINIMAL the minimal instances met at pruned children.

    max_depth caps the avoiders that get expanded. Children one letter past
    the cap are still tested, so minimal instances up to max_depth + 1 are
    found; an avoider among them marks the report as truncated.
    """

    def __init__(self, n, q, collect=COLLECT_MAX, budget=None, symmetric=False, max_depth=None):
        self.n = n
        self.q = q
        self.collect = collect
        self.budget = get_setting('SEARCH_NODE_BUDGET', budget)
        self.symmetric = symmetric
        self.max_depth = max_depth

    def _record(self, report, word):
        depth = len(word)
        if depth > report.deepest:
            report.deepest = depth
            report.deepest_words = [tuple(word)] if self.collect == COLLECT_MAX else []
        elif depth == report.deepest and self.collect == COLLECT_MAX:
            report.deepest_words.append(tuple(word))
        if self.collect == COLLECT_ALL:
            report.avoiders.append(tuple(word))

    def _test_child(self, report, word):
        """True when word (just extended) still avoids Z_n."""
        lengths = suffix_instance_lengths(word, self.n)
        if not lengths:
            return True
        if self.collect == COLLECT_MINIMAL and lengths == [len(word)]:
            report.minimal.append(tuple(word))
        return False

    def _probe_children(self, report, word):
        for c in range(self.q):
            if report.nodes >= self.budget:
                report.exhausted = True
                return
            word.append(c)
            report.nodes += 1
            if self._test_child(report, word):
                report.truncated = True
            word.pop()

    def explore(self, prefix=(), record_root=True, split_depth=None):
        """
        Search the subtree rooted at `prefix` (assumed to avoid Z_n).

        With split_depth set, avoiders of exactly that length are not
        expanded; they are returned in report.frontier instead.
        """
        n, q = self.n, self.q
        word = list(prefix)
        base = len(word)
        report = SubtreeReport()
        if record_root:
            self._record(report, word)

        def halt(current):
            if split_depth is not None and len(current) >= split_depth:
                report.frontier.append(tuple(current))
                return True
            if self.max_depth is not None and len(current) >= self.max_depth:
                self._probe_children(report, current)
                return True
            return False

        if halt(word):
            return report
        stack = [0]
        while stack:
            c = stack[-1]
            limit = 1 if self.symmetric and not word else q
            if c >= limit:
                stack.pop()
                if len(word) > base:
                    word.pop()
                continue
            stack[-1] = c + 1
            if report.nodes >= self.budget:
                report.exhausted = True
                logger.warning(
                    f"Node budget {self.budget} exhausted for Z_{n} over [{q}] "
                    f"below prefix {tuple(prefix)}; deepest avoider so far {report.deepest}"
                )
                return report
            word.append(c)
            report.nodes += 1
            if report.nodes % PROGRESS_EVERY == 0:
                logger.debug(f"Z_{n}/[{q}]: {report.nodes} nodes, depth {len(word)}, deepest {report.deepest}")
            if not self._test_child(report, word):
                word.pop()
                continue
            self._record(report, word)
            if halt(word):
                word.pop()
                continue
            stack.append(0)
        return report


def budget_shares(total, parts):
    """Split a node budget into `parts` near-equal shares summing to `total`."""
    base, extra = divmod(max(total, 0), parts)
    return [base + 1 if index < extra else base for index in range(parts)]


def _run_split_search(n, q, collect, budget, symmetric, max_depth=None):
    """
    Search the tree in two stages: a local walk down to the split depth, then
    one subtree task per frontier prefix. Reports are merged in frontier
    order, which is lexicographic.
    """
    from .tasks import search_subtree

    budget = get_setting('SEARCH_NODE_BUDGET', budget)
    split_depth = get_setting('SPLIT_DEPTH')
    if max_depth is not None and split_depth >= max_depth:
        split_depth = None
    searcher = AvoiderTreeSearch(n, q, collect=collect, budget=budget, symmetric=symmetric, max_depth=max_depth)
    report = searcher.explore((), split_depth=split_depth)
    if report.exhausted or not report.frontier:
        return report
    shares = budget_shares(budget - report.nodes, len(report.frontier))
    logger.info(
        f"Z_{n}/[{q}]: {len(report.frontier)} subtrees below depth {split_depth}, "
        f"{budget - report.nodes} nodes left to share"
    )
    signatures = [
        search_subtree.s(list(prefix), n, q, collect, share, max_depth)
        for prefix, share in zip(report.frontier, shares)
    ]
    report.frontier = []
    for data in run_group(signatures):
        report.merge(SubtreeReport.from_dict(data))
    return report


def _sorted_words(words, q):
    return [Word(w, q) for w in sorted(set(words), key=lambda w: (len(w), w))]


def compute_f(n, q, budget=None):
    """
    f(n,q) by exhausting the avoider tree (first letter fixed to 0).

    Raises BudgetExhausted carrying a partial AvoidanceResult whose
    f_lower_bound is still sound.
    """
    if n < 1 or q < 1:
        raise ValueError('n and q must be positive')
    report = _run_split_search(n, q, COLLECT_NONE, budget, symmetric=True)
    result = AvoidanceResult(
        n=n, q=q, nodes_explored=report.nodes, deepest=report.deepest, symmetry_reduced=True,
    )
    if report.exhausted:
        result.budget_exhausted = True
        raise BudgetExhausted(
            f"f({n},{q}) search stopped after {report.nodes} nodes; f >= {result.f_lower_bound}",
            partial=result,
            details={'f_lower_bound': result.f_lower_bound, 'nodes': report.nodes},
        )
    result.f_value = report.deepest + 1
    logger.info(f"f({n},{q}) = {result.f_value} after {report.nodes} nodes")
    return result


def search_max_avoiders(n, q, budget=None):
    """AvoidanceResult listing every avoider of length f(n,q) - 1."""
    report = _run_split_search(n, q, COLLECT_MAX, budget, symmetric=False)
    result = AvoidanceResult(
        n=n, q=q, nodes_explored=report.nodes, deepest=report.deepest,
        max_avoiders=[Word(w, q) for w in sorted(set(report.deepest_words))],
    )
    if report.exhausted:
        result.budget_exhausted = True
        raise BudgetExhausted(partial=result, details={'nodes': report.nodes})
    result.f_value = report.deepest + 1
    return result


def enumerate_max_avoiders(n, q, budget=None):
    """All avoiders of length f(n,q) - 1, lexicographically sorted."""
    return search_max_avoiders(n, q, budget).max_avoiders


def enumerate_avoiders(n, q, budget=None):
    """Every Z_n-avoider over [q], ε included, sorted by length then lexicographically."""
    report = _run_split_search(n, q, COLLECT_ALL, budget, symmetric=False)
    if report.exhausted:
        raise BudgetExhausted(partial=_sorted_words(report.avoiders, q), details={'nodes': report.nodes})
    return _sorted_words(report.avoiders, q)


def enumerate_minimal_instances(n, q, max_len=None, budget=None):
    """
    All minimal Z_n-instances over [q] of length <= max_len.

    The list is complete when no avoider of length max_len exists, i.e.
    max_len >= f(n,q); otherwise it is flagged incomplete and a warning is logged.
    """
    max_depth = None if max_len is None else max_len - 1
    report = _run_split_search(n, q, COLLECT_MINIMAL, budget, symmetric=False, max_depth=max_depth)
    result = MinimalInstances(
        n=n, q=q, words=_sorted_words(report.minimal, q), max_len=max_len, complete=not report.truncated,
    )
    if report.truncated:
        logger.warning(f"Length cap {max_len} is below f({n},{q}); minimal-instance list is incomplete")
    if report.exhausted:
        raise BudgetExhausted(partial=result, details={'nodes': report.nodes})
    return result


def verify_word(word, n, method='auto'):
    """
    Find the first Z_n-encounter in W, by smallest end then smallest start,
    among factors of length >= 2^n - 1. Returns (i, j, factor) or None.

    method='window' tests each factor with the recursive instance check;
    method='kernel' scans each start with the border-table kernel; 'auto'
    picks the window check for words of length <= 64.
    """
    word = as_word(word)
    letters = word.letters
    shortest = 2 ** n - 1
    if method == 'auto':
        method = 'window' if len(letters) <= 64 else 'kernel'
    if method == 'window':
        for j in range(shortest, len(letters) + 1):
            for i in range(0, j - shortest + 1):
                if is_zimin_instance(letters[i:j], n):
                    return i, j, word[i:j]
        return None
    best = None
    for i in range(len(letters) - shortest + 1):
        if best is not None and i + shortest >= best[1]:
            break
        flags = zimin_prefix_flags(letters[i:], n)
        for m in range(shortest, len(flags)):
            if flags[m]:
                if best is None or i + m < best[1]:
                    best = (i, i + m)
                break
    if best is None:
        return None
    return best[0], best[1], word[best[0]:best[1]]


def find_long_avoider(n, q, target, strategy='restart-backtrack', seed=None, budget=None, backtrack=None):
    """
    Randomized depth-first construction of a Z_n-avoider of length >= target.

    greedy: a single depth-first walk with letters tried in random order.
    restart-backtrack: the same walk, restarted with fresh randomness whenever
    it falls more than `backtrack` levels below the deepest point of the
    current attempt.

    Returns a verified Word, or None when the tree is exhausted below the
    target or the budget runs out.
    """
    if n < 2:
        raise ValueError('n must be at least 2')
    if strategy not in ('greedy', 'restart-backtrack'):
        raise ValueError(f"unknown strategy {strategy!r}")
    seed = get_setting('DEFAULT_SEED', seed)
    budget = get_setting('SEARCH_NODE_BUDGET', budget)
    backtrack = get_setting('LONG_AVOIDER_BACKTRACK', backtrack)
    rng = np.random.default_rng(seed)
    nodes = 0
    restarts = 0
    while nodes < budget:
        word = []
        orders = [list(rng.permutation(q))]
        deepest = 0
        restart = False
        while orders and nodes < budget:
            if len(word) >= target:
                candidate = Word(tuple(word), q)
                if verify_word(candidate, n, method='kernel') is not None:
                    raise AssertionError('search produced a word that encounters Z_n')
                logger.info(f"Z_{n}-avoider of length {len(word)} after {nodes} nodes, {restarts} restarts")
                return candidate
            if not orders[-1]:
                orders.pop()
                if word:
                    word.pop()
                if strategy == 'restart-backtrack' and deepest - len(word) > backtrack:
                    restart = True
                    break
                continue
            word.append(int(orders[-1].pop()))
            nodes += 1
            if suffix_instance_lengths(word, n):
                word.pop()
                continue
            deepest = max(deepest, len(word))
            orders.append(list(rng.permutation(q)))
        if not orders and not restart:
            logger.info(f"Z_{n} avoider tree over [{q}] has no word of length {target}")
            return None
        restarts += 1
    logger.warning(f"No Z_{n}-avoider of length {target} within {budget} nodes")
    return None
