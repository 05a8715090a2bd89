"""
Lower bounds on the liminf density of Z_n over q letters.

Forms (F = f(n-1,q), M = m(n-1,q)):
    trimmed     1 / ((F - 2^(n-1) + 2)^2 q^(F+1))
    window      1 / (F^2 q^(F+1))
    minimal     1 / ((F - 2^(n-1) + 2)^2 M)
    closed      1 / ((2q-1)^2 q! 2^q)            (n = 3, via m(2,q) < q! 2^q)
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, floor, log10
import logging

from avoidance.bounds import chain_inputs, tetration_upper

logger = logging.getLogger(__name__)

# Above this many digits a form is kept as a base-10 logarithm only.
EXACT_DIGIT_LIMIT = 2000


@dataclass(frozen=True)
class TinyValue:
    """1 / D kept exactly when D is small enough, else through log10(1/D)."""
    exact: Fraction = None
    log10_value: float = None

    @classmethod
    def reciprocal(cls, factors, powers=()):
        """1 / (prod factors * prod base^exponent for (base, exponent) in powers)."""
        digits = sum(log10(f) for f in factors) + sum(e * log10(b) for b, e in powers)
        if digits <= EXACT_DIGIT_LIMIT:
            denominator = 1
            for f in factors:
                denominator *= f
            for b, e in powers:
                denominator *= b ** e
            return cls(exact=Fraction(1, denominator), log10_value=-digits)
        return cls(log10_value=-digits)

    def scientific(self, digits=3):
        """'m.mm e-X' text from the logarithm."""
        exponent = floor(self.log10_value)
        mantissa = 10 ** (self.log10_value - exponent)
        if round(mantissa, digits - 1) >= 10:
            mantissa /= 10
            exponent += 1
        return f"{mantissa:.{digits - 1}f}e{exponent}"

    def __float__(self):
        return float(self.exact) if self.exact is not None else 10 ** self.log10_value


def trimmed_form(n, q, f_value):
    return TinyValue.reciprocal([(f_value - 2 ** (n - 1) + 2) ** 2], [(q, f_value + 1)])


def window_form(q, f_value):
    return TinyValue.reciprocal([f_value ** 2], [(q, f_value + 1)])


def minimal_count_form(n, f_value, m_value):
    return TinyValue.reciprocal([(f_value - 2 ** (n - 1) + 2) ** 2, m_value])


def z3_closed_form(q):
    """1 / ((2q-1)^2 q! 2^q)."""
    return Fraction(1, (2 * q - 1) ** 2 * factorial(q) * 2 ** q)


@dataclass
class LiminfReport:
    n: int
    q: int
    forms: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)

    @property
    def best(self):
        exact = [v for v in self.forms.values() if isinstance(v, TinyValue)]
        return max(exact, key=lambda v: v.log10_value) if exact else None


def liminf_bound_report(n, q, f_value=None, m_value=None):
    """
    Lower bounds on the liminf density of Z_n. f(n-1,q) and m(n-1,q) default
    to the known values; forms needing an unknown input are omitted.
    """
    if n < 2 or q < 2:
        raise ValueError('need n >= 2 and q >= 2')
    report = LiminfReport(n=n, q=q)
    if n == 2:
        report.forms['exact'] = TinyValue(exact=Fraction(1, q), log10_value=-log10(q))
        return report
    f_value, m_value = chain_inputs(n - 1, q, f_value, m_value)
    report.inputs = {'f': f_value, 'm': m_value}
    if f_value is not None:
        report.forms['trimmed'] = trimmed_form(n, q, f_value)
        report.forms['window'] = window_form(q, f_value)
        if m_value is not None:
            report.forms['minimal'] = minimal_count_form(n, f_value, m_value)
    if n == 3:
        closed = z3_closed_form(q)
        report.forms['closed'] = TinyValue(exact=closed, log10_value=log10(closed.numerator) - log10(closed.denominator))
    logger.debug(f"Liminf bounds for Z_{n} over [{q}]: {sorted(report.forms)}")
    return report


def tower_window_form(n, q):
    """The window form with f(n-1,q) replaced by its tower bound ^(n-2)(2q+1)."""
    tower = tetration_upper(n - 1, q)
    if not tower.is_exact:
        return None
    try:
        return window_form(q, tower.value)
    except OverflowError:
        # q^(f+1) has more digits than a float exponent can hold
        return None
