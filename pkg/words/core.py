"""
Word and pattern values.

Letters are small nonnegative integers. Text only appears at the edges
(`Word.from_string` / `Word.to_string`), where each symbol's code is its
position in the alphabet string.
"""
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
import logging

from tqdm import tqdm

from zimin_lab.conf import get_setting
from zimin_lab.exceptions import (
    BudgetExhausted, EmptyWordError, IndexOutOfRange, LetterOutOfRange, ParseError,
)

logger = logging.getLogger(__name__)

DEFAULT_ALPHABET = '0123456789abcdefghijklmnopqrstuvwxyz'

# Packed form: 2 bits per letter, so q <= 4 and |W| <= 64.
PACK_MAX_LENGTH = 64
PACK_MAX_Q = 4


@dataclass(frozen=True)
class Word:
    """
    An immutable finite word over [q] = {0, ..., q-1}.

    Equality and hashing depend on the letters only. Short words over
    q <= 4 also carry `packed`, a single integer (length-tagged) used as a
    cheap dictionary key in the search code.
    """
    letters: tuple
    alphabet_size_hint: int = field(default=None, compare=False)
    packed: int = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = tuple(int(c) for c in self.letters)
        for c in letters:
            if c < 0 or (self.alphabet_size_hint is not None and c >= self.alphabet_size_hint):
                raise LetterOutOfRange(details={'letter': c, 'q': self.alphabet_size_hint})
        object.__setattr__(self, 'letters', letters)
        if len(letters) <= PACK_MAX_LENGTH and all(c < PACK_MAX_Q for c in letters):
            value = 0
            for c in letters:
                value = (value << 2) | c
            object.__setattr__(self, 'packed', (value << 7) | len(letters))

    def __hash__(self):
        return hash(self.letters) if self.packed is None else hash(self.packed)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index], self.alphabet_size_hint)
        return self.letters[index]

    def __add__(self, other):
        hint = self.alphabet_size_hint
        if hint is not None and other.alphabet_size_hint is not None:
            hint = max(hint, other.alphabet_size_hint)
        else:
            hint = None
        return Word(self.letters + tuple(other), hint)

    def __lt__(self, other):
        return self.letters < other.letters

    def __str__(self):
        return self.to_string()

    @property
    def alphabet(self):
        """𝓛(W), the set of letters occurring in W."""
        return frozenset(self.letters)

    def reversed(self):
        return Word(self.letters[::-1], self.alphabet_size_hint)

    @classmethod
    def from_string(cls, text, alphabet=DEFAULT_ALPHABET, q=None):
        codes = {symbol: i for i, symbol in enumerate(alphabet)}
        letters = []
        for position, symbol in enumerate(text):
            if symbol not in codes:
                raise ParseError(details={'symbol': symbol, 'position': position})
            letters.append(codes[symbol])
        return cls(tuple(letters), q)

    def to_string(self, alphabet=DEFAULT_ALPHABET):
        return ''.join(alphabet[c] for c in self.letters)


EMPTY = Word(())


@dataclass(frozen=True)
class Pattern:
    """
    A word in canonical form (letters renamed 0, 1, 2, ... by first occurrence)
    together with its letter multiplicities.
    """
    word: Word
    multiplicities: tuple
    distinct_letters: int

    def __len__(self):
        return len(self.word)

    def __iter__(self):
        return iter(self.word)

    def __str__(self):
        return self.word.to_string('abcdefghijklmnopqrstuvwxyz')

    @property
    def recurrence_count(self):
        return len(self.word) - self.distinct_letters

    @property
    def is_doubled(self):
        return all(r >= 2 for r in self.multiplicities)


def as_word(value, q=None):
    """Accept a Word, a Pattern, a string or a sequence of codes."""
    if isinstance(value, Word):
        return value
    if isinstance(value, Pattern):
        return value.word
    if isinstance(value, str):
        return Word.from_string(value, q=q)
    return Word(tuple(value), q)


def substring(word, i, j):
    """
    W[i,j]: letters i+1 through j of W (0 <= i < j <= |W|).

    Example:
        substring(Word.from_string('bananas'), 2, 6)  # 'nana'
    """
    word = as_word(word)
    if not 0 <= i < j <= len(word):
        raise IndexOutOfRange(details={'i': i, 'j': j, 'length': len(word)})
    return word[i:j]


def recurrence_count(word):
    """‖W‖ = |W| - |𝓛(W)|."""
    word = as_word(word)
    return len(word) - len(word.alphabet)


def canonical_pattern(word):
    word = as_word(word)
    renaming = {}
    letters = []
    for c in word:
        if c not in renaming:
            renaming[c] = len(renaming)
        letters.append(renaming[c])
    counts = Counter(letters)
    multiplicities = tuple(counts[k] for k in range(len(renaming)))
    return Pattern(Word(tuple(letters)), multiplicities, len(renaming))


def as_pattern(value):
    if isinstance(value, Pattern):
        return value
    return canonical_pattern(as_word(value))


def is_doubled(pattern):
    """Every letter occurs at least twice; ε is vacuously doubled."""
    return as_pattern(pattern).is_doubled


def border_lengths(word):
    """All proper nonempty border lengths of W, shortest first."""
    letters = as_word(word).letters
    n = len(letters)
    return [k for k in range(1, n) if letters[:k] == letters[n - k:]]


def shortest_bifix(word):
    """Shortest proper nonempty prefix that is also a suffix, or None."""
    word = as_word(word)
    if not len(word):
        raise EmptyWordError()
    borders = border_lengths(word)
    if not borders:
        return None
    return word[:borders[0]]


def is_bifix_free(word):
    word = as_word(word)
    return bool(len(word)) and shortest_bifix(word) is None


def enumerate_words(q, n, budget=None, progress=None):
    """
    Yield all q^n words of length n in lexicographic order.

    Raises BudgetExhausted before yielding anything when q^n exceeds the
    enumeration budget.
    """
    budget = get_setting('ENUMERATION_BUDGET', budget)
    total = q ** n
    if total > budget:
        raise BudgetExhausted(
            f"q^n = {q}^{n} exceeds the enumeration budget {budget}",
            details={'q': q, 'n': n, 'budget': budget},
        )
    letters = product(range(q), repeat=n)
    if get_setting('PROGRESS', progress) and total > 4096:
        letters = tqdm(letters, total=total, desc=f'[{q}]^{n}', leave=False)
    for combo in letters:
        yield Word(combo, q)
