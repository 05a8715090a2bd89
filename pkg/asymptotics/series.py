"""
Limits of instance probabilities as exact rational enclosures.

The Z_2 and Z_3 limits are alternating series whose consecutive partial sums
bracket the value; terms are exact rationals, rounded outward to a dyadic grid
so that sums stay cheap.
"""
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, floor, log2
import logging

from words.core import as_pattern, enumerate_words
from zimin_lab.conf import get_setting
from zimin_lab.exceptions import (
    DoubledInputError, HypothesisViolation, MonotonicityViolation, OracleMismatch,
)
from .sequences import bhat_closed_form, bifix_free_counts, cd_recursion

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RationalEnclosure:
    lower: Fraction
    upper: Fraction
    params: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError(f"empty enclosure [{float(self.lower)}, {float(self.upper)}]")

    @property
    def width(self):
        return self.upper - self.lower

    @property
    def midpoint(self):
        return (self.lower + self.upper) / 2

    def contains(self, value):
        value = Fraction(value) if not isinstance(value, Fraction) else value
        return self.lower <= value <= self.upper

    def decimal(self, digits=10):
        """Midpoint rounded half-even to `digits` places."""
        return render_decimal(self.midpoint, digits)

    def endpoints(self, digits=12):
        return render_decimal(self.lower, digits, 'floor'), render_decimal(self.upper, digits, 'ceil')


def render_decimal(value, digits=10, direction=None):
    value = Fraction(value)
    scale = 10 ** digits
    if direction == 'floor':
        scaled = floor(value * scale)
    elif direction == 'ceil':
        scaled = ceil(value * scale)
    else:
        with localcontext() as context:
            context.prec = digits + 50
            exact = Decimal(value.numerator) / Decimal(value.denominator)
            return str(exact.quantize(Decimal(1).scaleb(-digits), rounding=ROUND_HALF_EVEN))
    return str(Decimal(scaled).scaleb(-digits))


def _round_down(value, bits):
    return Fraction(floor(value * (1 << bits)), 1 << bits)


def _round_up(value, bits):
    return Fraction(ceil(value * (1 << bits)), 1 << bits)


def _z2_term(q, j):
    numerator = Fraction(q) / Fraction(q) ** (2 ** (j + 1))
    denominator = Fraction(1)
    for k in range(j + 1):
        denominator *= 1 - Fraction(q) / Fraction(q) ** (2 ** (k + 1))
    return (-1) ** j * numerator / denominator


def i_z2(q, tolerance=Fraction(1, 10 ** 12), max_terms=64):
    """
    Enclosure of I(Z_2,q) = sum_j (-1)^j q^(1-2^(j+1)) / prod_{k<=j} (1 - q^(1-2^(k+1))).
    Stops once consecutive partial sums are within tolerance.
    """
    if q < 2:
        raise ValueError('q must be at least 2')
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError('tolerance must be positive')
    partial = Fraction(0)
    previous_term = None
    for j in range(max_terms):
        term = _z2_term(q, j)
        if previous_term is not None and abs(term) >= abs(previous_term):
            raise MonotonicityViolation(details={'q': q, 'j': j})
        before = partial
        partial += term
        previous_term = term
        if j >= 1 and abs(term) <= tolerance:
            break
    enclosure = RationalEnclosure(min(before, partial), max(before, partial), {'q': q, 'terms': j + 1})
    if not (Fraction(1, q) < enclosure.upper and enclosure.lower < Fraction(1, q - 1)):
        raise AssertionError(f"I(Z_2,{q}) enclosure leaves (1/q, 1/(q-1))")
    return enclosure


def z2_instance_count_exact(M, q):
    """sum_{l=1}^{ceil(M/2)-1} a_l q^(M-2l): Z_2-instances of length M over [q]."""
    top = (M + 1) // 2 - 1
    if top < 1:
        return 0
    a = bifix_free_counts(q, top)
    return sum(a[ell] * q ** (M - 2 * ell) for ell in range(1, top + 1))


def _r(q, ell, x):
    return q * x ** (2 * ell + 1) - x ** (4 * ell) + x ** (5 * ell) - q * x ** (5 * ell + 1) + x ** (6 * ell)


def _s(q, ell, x):
    return 1 - q * x ** (1 - ell) + x ** (-ell)


def _u(q, ell, x):
    return q * x ** (4 * ell + 1) - x ** (5 * ell) + q * x ** (5 * ell + 1) - x ** (6 * ell)


def _v(q, ell, x):
    return 1 - q * x ** (1 - ell) + x ** (-ell) - q * x ** (1 - 2 * ell) + x ** (-2 * ell)


def _gh_log2_bound(q, ell, i):
    """log2 of an upper bound on |G(i)| + |H(i)|."""
    log_q = log2(q)
    exponent = 2 ** (i + 1)
    g = log2(2 * q + 3) + (i + 1) + i * log2(q + 2) + (ell * (exponent - 2) - (2 * ell + 1) * exponent) * log_q
    h = log2(2 * q + 2) + (i + 1) + i * log2(2 * q + 3) + (2 * ell * (exponent - 2) - (4 * ell + 1) * exponent) * log_q
    return max(g, h) + 1


def gh_terms(q, ell, i):
    """(G(i), H(i)) exactly."""
    xs = [Fraction(1, q ** (2 ** (j + 1))) for j in range(i + 1)]
    denominator = Fraction(1)
    for k in range(i + 1):
        denominator *= 1 - Fraction(q, q ** (2 ** (k + 1)))
    s_product = Fraction(1)
    v_product = Fraction(1)
    for j in range(i):
        s_product *= _s(q, ell, xs[j])
        v_product *= _v(q, ell, xs[j])
    sign = (-1) ** i
    g = sign * _r(q, ell, xs[i]) * s_product / denominator
    h = sign * _u(q, ell, xs[i]) * v_product / denominator
    return g, h


def inner_enclosure(q, ell, M, bits=None):
    """
    Bracket of sum_m b_m^l q^(-2m) from the partial sums over i <= 2M+1
    (lower) and i <= 2M (upper), each term rounded outward to 2^-bits.
    """
    bits = get_setting('ENCLOSURE_BITS', bits)
    lower = Fraction(0)
    upper = Fraction(0)
    previous = None
    slack = Fraction(1, 1 << bits)
    for i in range(2 * M + 2):
        if _gh_log2_bound(q, ell, i) < -bits - 4:
            lower -= slack
            if i <= 2 * M:
                upper += slack
            continue
        g, h = gh_terms(q, ell, i)
        magnitudes = (abs(g), abs(h))
        if previous is not None and (magnitudes[0] > previous[0] or magnitudes[1] > previous[1]):
            raise MonotonicityViolation(details={'q': q, 'ell': ell, 'i': i})
        previous = magnitudes
        term = g + h
        lower += _round_down(term, bits)
        if i <= 2 * M:
            upper += _round_up(term, bits)
    return lower, upper


def truncated_b_sum(q, ell, max_m):
    """(sum_{m<=max_m} b_m q^(-2m), tail bound q^(-max_m-2l)/(q-1))."""
    b = cd_recursion(q, ell, max_m)[2]
    partial = sum(Fraction(b[m], q ** (2 * m)) for m in range(1, max_m + 1))
    if any(b[m] for m in range(0, 2 * ell + 1)):
        raise AssertionError(f"b_m^{ell} is nonzero below 2l+1")
    tail = Fraction(1, q ** (max_m + 2 * ell) * (q - 1))
    return partial, tail


def cross_check_inner(q, ell, M, max_m=40, bits=None):
    """The recursion's truncated sum must meet the closed-form bracket."""
    lower, upper = inner_enclosure(q, ell, M, bits)
    partial, tail = truncated_b_sum(q, ell, max_m)
    if partial > upper or partial + tail < lower:
        raise OracleMismatch(
            f"inner sum for l={ell} disagrees: recursion in [{float(partial)}, {float(partial + tail)}], "
            f"closed form in [{float(lower)}, {float(upper)}]",
            details={'q': q, 'ell': ell},
        )
    return lower, upper, partial, tail


def i_z3(q, N=None, M=None, bits=None, cross_check=False):
    """
    Enclosure of I(Z_3,q):
        lower = sum_{l<=N} a_l sum_{i<=2M+1} (G(i) + H(i))
        upper = q^-N + sum_{l<=N} a_l sum_{i<=2M} (G(i) + H(i))
    """
    if q < 2:
        raise ValueError('q must be at least 2')
    N = get_setting('IZ3_N', N)
    M = get_setting('IZ3_M', M)
    a = bifix_free_counts(q, N)
    lower = Fraction(0)
    upper = Fraction(1, q ** N)
    for ell in range(1, N + 1):
        if cross_check and ell <= 3:
            inner_lower, inner_upper, _, _ = cross_check_inner(q, ell, M, bits=bits)
        else:
            inner_lower, inner_upper = inner_enclosure(q, ell, M, bits)
        lower += a[ell] * inner_lower
        upper += a[ell] * inner_upper
    enclosure = RationalEnclosure(max(lower, Fraction(0)), upper, {'q': q, 'N': N, 'M': M})
    logger.info(f"I(Z_3,{q}) in [{float(enclosure.lower):.10g}, {float(enclosure.upper):.10g}]")
    return enclosure


def izn_truncations(n, base=None):
    """N_k = base 2^(k-1) + 2^(k-1) - 1, so N_{k+1} = 2 N_k + 1."""
    base = get_setting('IZN_TRUNCATION_BASE', base)
    return [base * 2 ** k + 2 ** k - 1 for k in range(n - 1)]


def i_zn_upper(n, q, truncations=None):
    """
    Upper bound on I(Z_n,q) from chains a_{l1} bhat^{l1}_{l2} ... bhat^{l_{n-2}}_{l_{n-1}} q^(-2 l_{n-1}).

    Every index is truncated at its level's N; the dropped mass below an index l
    is at most q^(-2l) q^(-N)/(q-1), and at the first level q^(-N1)/(q-1).
    """
    if n < 2:
        raise ValueError('n must be at least 2')
    truncations = list(truncations) if truncations is not None else izn_truncations(n)
    if len(truncations) != n - 1:
        raise ValueError(f"need {n - 1} truncations")
    a = bifix_free_counts(q, truncations[0])
    last = n - 2

    @lru_cache(maxsize=None)
    def continuation(level, ell):
        if level == last:
            return Fraction(1, q ** (2 * ell))
        cap = truncations[level + 1]
        total = Fraction(0)
        for m in range(2 * ell + 1, cap + 1):
            total += bhat_closed_form(q, ell, m) * continuation(level + 1, m)
        return total + Fraction(1, q ** (2 * ell + cap) * (q - 1))

    total = sum(a[ell] * continuation(0, ell) for ell in range(1, truncations[0] + 1))
    return total + Fraction(1, q ** truncations[0] * (q - 1))


def zimin_multiplicities(n):
    return [2 ** j for j in range(n)]


def iv_product_upper(multiplicities, q):
    """
    prod over letters with r >= 2 of 1/(q^(r-1) - 1), valid when exactly one
    letter occurs once.
    """
    multiplicities = list(multiplicities)
    if multiplicities.count(1) != 1 or any(r < 1 for r in multiplicities):
        raise HypothesisViolation(
            'exactly one letter must occur once',
            details={'multiplicities': multiplicities},
        )
    value = Fraction(1)
    for r in multiplicities:
        if r >= 2:
            value /= q ** (r - 1) - 1
    return value


def nondoubled_lower(pattern, q):
    """I(V,q) >= q^(-||V||) for nondoubled V."""
    pattern = as_pattern(pattern)
    if pattern.is_doubled:
        raise DoubledInputError(details={'pattern': str(pattern)})
    return Fraction(1, q ** pattern.recurrence_count)


def hom_expectation(pattern, q, n):
    """
    E(hom(V, W_n)) for uniform W_n in [q]^n: sum over image lengths i_x >= 1 with
    sum i_x r_x <= n of (n + 1 - sum i_x r_x) q^(-sum i_x (r_x - 1)).
    Depends on V only through its multiplicities.
    """
    pattern = as_pattern(pattern)
    multiplicities = pattern.multiplicities
    total = Fraction(0)
    ranges = [range(1, n // r + 1) for r in multiplicities]
    for lengths in product(*ranges):
        used = sum(i * r for i, r in zip(lengths, multiplicities))
        if used > n:
            continue
        fixed = sum(i * (r - 1) for i, r in zip(lengths, multiplicities))
        total += Fraction(n + 1 - used, q ** fixed)
    return total


def hom_expectation_bruteforce(pattern, q, n, budget=None):
    from patterns.engine import hom_count

    total = sum(hom_count(pattern, word) for word in enumerate_words(q, n, budget=budget))
    return Fraction(total, q ** n)


def doubled_scaling_table(pattern, q, n_values, budget=None):
    """
    Rows (n, I_n(V,q), q^(n(1-1/r)) I_n(V,q)) with r the least multiplicity of
    the doubled pattern V. Empirical only.
    """
    from density.exact import instance_probability_exact

    pattern = as_pattern(pattern)
    if not pattern.is_doubled:
        raise HypothesisViolation('pattern must be doubled', details={'pattern': str(pattern)})
    r = min(pattern.multiplicities)
    rows = []
    for n in n_values:
        probability = instance_probability_exact(pattern, q, n, budget=budget)
        scaled = float(probability) * q ** (n * (1 - 1 / r))
        rows.append({'n': n, 'probability': probability, 'scaled': scaled})
    return rows
