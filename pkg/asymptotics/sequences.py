"""
Integer sequences behind the instance probabilities of Z_2 and Z_3.

a_l   bifix-free words of length l.
b_m^l words of length m with bifix L (|L| = l, L bifix-free) that are Z_2-bifix-free,
      split as b = c + d where d counts those of the form LLALL.
bhat  words LAL of length m with A nonempty, not of the form LBLBL.

a, c and d all satisfy a recursion of the same shape, read off their generating
functions F(x) = qxF(x) + sum coef * x^(-shift) F(x^2) + impulses:

    s_n = q s_{n-1} + sum over (coef, shift) with n + shift even of coef * s_{(n+shift)/2} + impulse_n
"""
from collections import defaultdict
from dataclasses import dataclass, field
import logging

from patterns.borders import zimin_prefix_flags
from words.core import border_lengths, enumerate_words, is_bifix_free
from zimin_lab.exceptions import OracleMismatch

logger = logging.getLogger(__name__)

BHAT_VARIANTS = ('overcount', 'printed')


@dataclass(frozen=True)
class SequenceTable:
    kind: str
    q: int
    values: tuple
    ell: int = None

    def __getitem__(self, index):
        return self.values[index]

    def __len__(self):
        return len(self.values)

    def rows(self):
        return list(enumerate(self.values))


@dataclass(frozen=True)
class HalvingRecursion:
    """One sequence of the shape above; zero for every n <= zero_until."""
    zero_until: int
    terms: tuple
    impulses: dict = field(default_factory=dict, hash=False)

    def evaluate(self, q, max_n):
        values = [0] * (max_n + 1)
        for n in range(self.zero_until + 1, max_n + 1):
            value = q * values[n - 1] + self.impulses.get(n, 0)
            for coef, shift in self.terms:
                if (n + shift) % 2 == 0:
                    value += coef * values[(n + shift) // 2]
            values[n] = value
        return values


def _impulses(q, pairs):
    table = defaultdict(int)
    for index, value in pairs:
        table[index] += value
    return dict(table)


def bifix_free_recursion(q):
    return HalvingRecursion(zero_until=0, terms=((-1, 0),), impulses={1: q})


def c_recursion(q, ell):
    return HalvingRecursion(
        zero_until=2 * ell,
        terms=((q, ell - 1), (-1, 0), (-1, ell)),
        impulses=_impulses(q, [
            (2 * ell + 1, q), (5 * ell + 1, -q), (4 * ell, -1), (5 * ell, 1), (6 * ell, 1),
        ]),
    )


def d_recursion(q, ell):
    return HalvingRecursion(
        zero_until=4 * ell,
        terms=((q, 2 * ell - 1), (q, ell - 1), (-1, 0), (-1, 2 * ell), (-1, ell)),
        impulses=_impulses(q, [
            (4 * ell + 1, q), (5 * ell + 1, q), (5 * ell, -1), (6 * ell, -1),
        ]),
    )


def printed_bhat_recursion(q, ell):
    return HalvingRecursion(
        zero_until=2 * ell,
        terms=((q, ell - 1), (-1, 0), (-1, ell)),
        impulses={2 * ell + 1: q},
    )


def bifix_free_counts(q, N):
    """
    a_0..a_N: a_0 = 0, a_1 = q, a_2k = q a_{2k-1} - a_k, a_{2k+1} = q a_2k.

    >>> bifix_free_counts(2, 9).values
    (0, 2, 2, 4, 6, 12, 20, 40, 74, 148)
    """
    if q < 1 or N < 0:
        raise ValueError('need q >= 1 and N >= 0')
    return SequenceTable('a', q, tuple(bifix_free_recursion(q).evaluate(q, N)))


def cd_recursion(q, ell, max_m, check=False):
    """
    (c, d, b) tables up to max_m. With check=True the b-values are compared
    against the brute-force oracle wherever q^m stays within the enumeration budget.
    """
    if ell < 1 or max_m < 0:
        raise ValueError('need ell >= 1 and max_m >= 0')
    c = c_recursion(q, ell).evaluate(q, max_m)
    d = d_recursion(q, ell).evaluate(q, max_m)
    b = tuple(x + y for x, y in zip(c, d))
    if check:
        reconcile(q, ell, max_m, b)
    return (
        SequenceTable('c', q, tuple(c), ell),
        SequenceTable('d', q, tuple(d), ell),
        SequenceTable('b', q, b, ell),
    )


def least_bifix_free(ell):
    """Lexicographically least bifix-free word of length ell: 0^(ell-1) 1, or 0."""
    return (0,) if ell == 1 else (0,) * (ell - 1) + (1,)


def is_z2_bifix_free(letters):
    """No bifix of the word is a Z_2-instance."""
    flags = zimin_prefix_flags(letters, 2)
    return not any(flags[k] for k in border_lengths(letters))


def b_oracle(q, ell, m, bifix=None, budget=None):
    """
    Brute-force b_m^l: words L A L of length m > 2l (A nonempty) with no
    Z_2-instance bifix. Such a word is a Z_2-instance because L is a bifix.
    """
    bifix = tuple(bifix) if bifix is not None else least_bifix_free(ell)
    if len(bifix) != ell or not is_bifix_free(bifix):
        raise ValueError(f"{bifix} is not a bifix-free word of length {ell}")
    if m <= 2 * ell:
        return 0
    count = 0
    for middle in enumerate_words(q, m - 2 * ell, budget=budget):
        if is_z2_bifix_free(bifix + middle.letters + bifix):
            count += 1
    return count


def reconcile(q, ell, max_m, b_values=None, budget=None):
    """
    Compare recursion and oracle index by index; raise OracleMismatch at
    the first divergence. Returns the indices checked.
    """
    if b_values is None:
        b_values = cd_recursion(q, ell, max_m)[2].values
    checked = []
    for m in range(2 * ell + 1, max_m + 1):
        expected = b_oracle(q, ell, m, budget=budget)
        if b_values[m] != expected:
            logger.error(f"b recursion diverges at q={q}, l={ell}, m={m}: {b_values[m]} != {expected}")
            raise OracleMismatch(
                f"b_{m}^{ell} recursion gives {b_values[m]}, brute force gives {expected}",
                details={'q': q, 'ell': ell, 'm': m, 'recursion': b_values[m], 'oracle': expected},
            )
        checked.append(m)
    logger.info(f"b recursion matches brute force for q={q}, l={ell}, m <= {max_m}")
    return checked


def bhat_excluded(q, ell, m):
    """Words of length m of the form LBLBL with B nonempty: q^|B| when m = 3l + 2|B|."""
    rest = m - 3 * ell
    return q ** (rest // 2) if rest >= 2 and rest % 2 == 0 else 0


def bhat_closed_form(q, ell, m):
    if m <= 2 * ell:
        return 0
    return q ** (m - 2 * ell) - bhat_excluded(q, ell, m)


def bhat_recursion(q, ell, max_m, variant='overcount'):
    """
    bhat^l up to max_m.

    overcount: bhat_m = q bhat_{m-1} + q E_{m-1} - E_m with E the LBLBL count,
    equal to the closed form and an upper bound for b.
    printed: the halving recursion q(x^(2l+1) + x f + x^(1-l) f(x^2)) - f(x^2) - x^(-l) f(x^2),
    kept for comparison only; it drops below b (ell = 1, m = 7: 24 < 25).
    """
    if variant not in BHAT_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if variant == 'printed':
        return SequenceTable('bhat-printed', q, tuple(printed_bhat_recursion(q, ell).evaluate(q, max_m)), ell)
    values = [0] * (max_m + 1)
    for m in range(2 * ell + 1, max_m + 1):
        if m == 2 * ell + 1:
            values[m] = q
            continue
        values[m] = q * values[m - 1] + q * bhat_excluded(q, ell, m - 1) - bhat_excluded(q, ell, m)
    return SequenceTable('bhat', q, tuple(values), ell)


def bhat_oracle(q, ell, m, bifix=None, budget=None):
    """Brute-force count of words L A L of length m, A nonempty, not of the form L B L B L."""
    bifix = tuple(bifix) if bifix is not None else least_bifix_free(ell)
    if len(bifix) != ell or not is_bifix_free(bifix):
        raise ValueError(f"{bifix} is not a bifix-free word of length {ell}")
    if m <= 2 * ell:
        return 0
    count = 0
    for middle in enumerate_words(q, m - 2 * ell, budget=budget):
        word = bifix + middle.letters + bifix
        rest = m - 3 * ell
        if rest >= 2 and rest % 2 == 0:
            half = rest // 2
            inner = word[ell:ell + half]
            if word == bifix + inner + bifix + inner + bifix:
                continue
        count += 1
    return count
