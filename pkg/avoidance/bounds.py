"""
Closed-form bounds on f(n,q) and the counts of minimal Z_n-instances.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import e, factorial, log10, prod, sqrt
import logging

from zimin_lab.conf import get_setting

logger = logging.getLogger(__name__)

# Known values used to seed the minimal-instance chain.
KNOWN_F = {(1, 2): 1, (2, 2): 5, (3, 2): 29}
KNOWN_M = {(2, 2): 6, (3, 2): 7882}


@dataclass(frozen=True)
class Tetration:
    """
    A tower ^height(base) of `height` copies of base, with ^0 a = 1.

    `value` is the exact integer when it has at most digit_cap digits,
    otherwise None and the tower is reported symbolically.
    """
    base: int
    height: int
    digit_cap: int = None
    value: int = field(default=None, init=False, compare=False)
    last_exact_height: int = field(default=0, init=False, compare=False)

    def __post_init__(self):
        cap = get_setting('TETRATION_DIGIT_CAP', self.digit_cap)
        object.__setattr__(self, 'digit_cap', cap)
        value = 1
        for level in range(self.height):
            if value > 10 * cap or value * log10(self.base) + 1 > cap:
                logger.debug(f"^{self.height}({self.base}) exceeds {cap} digits after height {level}")
                return
            value = self.base ** value
            object.__setattr__(self, 'last_exact_height', level + 1)
        object.__setattr__(self, 'value', value)

    @property
    def is_exact(self):
        return self.value is not None

    def __str__(self):
        if self.is_exact and self.value < 10 ** 12:
            return str(self.value)
        return f"^{self.height}({self.base})"

    def to_dict(self):
        return {
            'base': self.base,
            'height': self.height,
            'symbol': f"^{self.height}({self.base})",
            'value': str(self.value) if self.is_exact else None,
        }


def tetration_upper(n, q, digit_cap=None):
    """f(n,q) <= ^(n-1)(2q+1)."""
    return Tetration(2 * q + 1, n - 1, digit_cap)


def tao_upper(n, q, digit_cap=None):
    """f(n,q) < ^(2n-1) q, for n, q >= 2."""
    return Tetration(q, 2 * n - 1, digit_cap)


def doubling_upper(n, q, digit_cap=None):
    """
    The bound from the pigeonhole construction before it is loosened to a
    tower: T_1 = 1, T_{k+1} = (T_k + 1)(q^T_k + 1) - 1. None past the digit cap.
    """
    cap = get_setting('TETRATION_DIGIT_CAP', digit_cap)
    bound = 1
    for _ in range(n - 1):
        if bound > 10 * cap or bound * log10(q) + 1 > cap:
            return None
        bound = (bound + 1) * (q ** bound + 1) - 1
    return bound


def first_moment_lower(n, q):
    """sqrt(2 q^(2^n) / (q^(n+1) e^((n-1)/(q-1)))) - 1, evaluated in log space."""
    exponent = first_moment_lower_log10(n, q)
    if exponent > 300:
        return float('inf')
    return 10 ** exponent - 1


def first_moment_lower_log10(n, q):
    """log10 of the first-moment bound plus one, for towers too tall for a float."""
    return ((2 ** n - n - 1) * log10(q) + log10(2) - (n - 1) / (q - 1) * log10(e)) / 2


def tao_product_lower(n, q):
    """
    sqrt(2 prod_{j<n} (q^(2^j - 1) - 1)) with the (1 + o(1)) factor dropped.
    Nominal: not a rigorous bound for fixed (n, q).
    """
    product = prod(q ** (2 ** j - 1) - 1 for j in range(1, n))
    return sqrt(2 * product) if product < 10 ** 300 else float('inf')


def m2_closed_form(q):
    """
    m(2,q) = q! sum_{i=0}^{q-1} 2^(q-1-i) / i!.

    The i = 0 term is needed for m(2,2) = 6. Checked against q! 2^q.
    """
    if q < 1:
        raise ValueError('q must be positive')
    value = factorial(q) * sum(Fraction(2 ** (q - 1 - i), factorial(i)) for i in range(q))
    if value.denominator != 1:
        raise AssertionError(f"m(2,{q}) is not an integer: {value}")
    value = int(value)
    if value >= factorial(q) * 2 ** q:
        raise AssertionError(f"m(2,{q}) = {value} is not below q! 2^q")
    return value


def rs_chain_upper(f_value, m_value):
    """f(n+1,q) <= (f(n,q) + 1) m(n,q) + f(n,q)."""
    return (f_value + 1) * m_value + f_value


def rs_asymptotic_f3(q):
    """sqrt(e) 2^q (q+1)! + 2q + 1. An asymptotic form, never a bound."""
    return sqrt(e) * 2 ** q * factorial(q + 1) + 2 * q + 1


def instance_count_bounds(n, q, M):
    """
    Exact bounds on |Inst_M(Z_n, [q])| and on the expected number of Z_n-instance
    factors of a uniform length-M word.

    lower: q^(M - 2^n + n + 1) for M >= 2^n - 1, since each extra letter
    multiplies the count by at least q and the shortest instances number q^n.
    upper: (q/(q-1))^(n-1) q^(M - 2^n + n + 1).
    """
    scale = Fraction(q, q - 1) ** (n - 1)
    shift = M - 2 ** n + n + 1
    lower = Fraction(q) ** shift if M >= 2 ** n - 1 else Fraction(0)
    upper = scale * Fraction(q) ** shift
    probability_upper = scale * Fraction(q) ** (n + 1 - 2 ** n)
    pairs = (M + 1) * M // 2
    return {
        'lower': lower,
        'upper': upper,
        'probability_upper': probability_upper,
        'expected_encounters_upper': pairs * probability_upper,
    }


def chain_inputs(n, q, f_value=None, m_value=None):
    """
    f(n,q) and m(n,q) for the chain bound: explicit values win, then the
    known table, then f(1,q) = 1, m(1,q) = q, f(2,q) = 2q+1 and the m(2,q) closed form.
    """
    if f_value is None:
        f_value = KNOWN_F.get((n, q), {1: 1, 2: 2 * q + 1}.get(n))
    if m_value is None:
        if n == 1:
            m_value = q
        elif n == 2:
            m_value = m2_closed_form(q)
        else:
            m_value = KNOWN_M.get((n, q))
    return f_value, m_value


@dataclass
class BoundReport:
    n: int
    q: int
    tetration_upper: Tetration
    tao_upper: Tetration
    doubling_upper: int
    first_moment_lower: float
    tao_product_lower: float
    rs_chain_upper: int = None
    rs_asymptotic_f3: float = None
    previous_f: int = None
    previous_m: int = None
    provenance: dict = field(default_factory=dict)


def bounds_report(n, q, f_value=None, m_value=None, digit_cap=None):
    """
    Every closed-form bound on f(n,q). The chain bound needs f(n-1,q) and
    m(n-1,q), filled in by chain_inputs when not given.
    """
    if n < 1 or q < 2:
        raise ValueError('need n >= 1 and q >= 2')
    if n >= 2:
        f_value, m_value = chain_inputs(n - 1, q, f_value, m_value)
    chain = rs_chain_upper(f_value, m_value) if f_value and m_value else None
    report = BoundReport(
        n=n,
        q=q,
        tetration_upper=tetration_upper(n, q, digit_cap),
        tao_upper=tao_upper(n, q, digit_cap),
        doubling_upper=doubling_upper(n, q, digit_cap),
        first_moment_lower=first_moment_lower(n, q),
        tao_product_lower=tao_product_lower(n, q),
        rs_chain_upper=chain,
        rs_asymptotic_f3=rs_asymptotic_f3(q) if n == 3 else None,
        previous_f=f_value,
        previous_m=m_value,
        provenance={
            'tetration_upper': 'f(n,q) <= ^(n-1)(2q+1)',
            'tao_upper': 'f(n,q) < ^(2n-1)q',
            'doubling_upper': 'f(n+1,q) <= (T+1)(q^T+1)-1',
            'first_moment_lower': 'sqrt(2q^(2^n)/(q^(n+1)e^((n-1)/(q-1)))) - 1',
            'tao_product_lower': 'nominal: (1+o(1)) factor omitted',
            'rs_chain_upper': f'(f({n - 1},{q})+1)m({n - 1},{q})+f({n - 1},{q})',
            'rs_asymptotic_f3': 'asymptotic form, not a bound',
        },
    )
    logger.info(f"Bounds for f({n},{q}): upper {report.tetration_upper}, chain {chain}")
    return report
