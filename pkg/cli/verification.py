"""
Checking a file of words for Zimin encounters.

One word per line; blank lines and lines starting with '#' are skipped.
"""
from dataclasses import dataclass
import logging

from avoidance.search import verify_word
from words.core import DEFAULT_ALPHABET, Word
from zimin_lab.exceptions import ParseError, UnreadableFile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class VerificationLine:
    line: int
    word: Word
    encounter: tuple = None

    @property
    def avoids(self):
        return self.encounter is None

    def describe(self, alphabet=DEFAULT_ALPHABET):
        text = self.word.to_string(alphabet)
        if self.avoids:
            return f"{self.line}: {text}: AVOIDS"
        i, j, factor = self.encounter
        return f"{self.line}: {text}: ENCOUNTERS ({i}, {j}) {factor.to_string(alphabet)}"

    def to_dict(self, alphabet=DEFAULT_ALPHABET):
        entry = {'line': self.line, 'word': self.word.to_string(alphabet), 'avoids': self.avoids}
        if not self.avoids:
            i, j, factor = self.encounter
            entry['encounter'] = {'start': i, 'end': j, 'factor': factor.to_string(alphabet)}
        return entry


def read_word_file(path, alphabet=DEFAULT_ALPHABET):
    """[(line number, Word)]; a bad symbol raises ParseError naming its line."""
    try:
        with open(path, encoding='utf-8') as handle:
            raw = handle.read().splitlines()
    except OSError as exc:
        raise UnreadableFile(f"cannot read {path}: {exc.strerror}", details={'path': str(path)}) from None
    words = []
    for number, text in enumerate(raw, start=1):
        text = text.strip()
        if not text or text.startswith('#'):
            continue
        try:
            words.append((number, Word.from_string(text, alphabet)))
        except ParseError as exc:
            raise ParseError(
                f"line {number}: symbol {exc.details['symbol']!r} is not in the alphabet",
                details={'line': number, **exc.details},
            ) from None
    return words


def verify_word_file(path, n, alphabet=DEFAULT_ALPHABET, method='auto'):
    """The first Z_n-encounter of every word in the file, or AVOIDS."""
    report = [
        VerificationLine(number, word, verify_word(word, n, method=method))
        for number, word in read_word_file(path, alphabet)
    ]
    failures = sum(1 for entry in report if not entry.avoids)
    logger.info(f"Verified {len(report)} words from {path} against Z_{n}: {failures} encounter(s)")
    return report
