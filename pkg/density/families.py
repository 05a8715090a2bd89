"""
Word families with prescribed densities.

Factor-density families live over {a, b} = {0, 1}.
"""
from fractions import Fraction
from math import comb, lcm

from words.core import Word
from zimin_lab.exceptions import LengthError, RegionViolation
from .exact import factor_density, substring_count

A, B = 0, 1


def triangle_membership(k, ell, x, y):
    """
    (x, y) = (d(a^k, W), d(a^l, W)) is a limit point of some word family iff
    0 <= y <= x and k(y - 1) >= l(x - 1).
    """
    if not 0 < k < ell:
        raise ValueError('need 0 < k < l')
    x, y = Fraction(x), Fraction(y)
    return 0 <= y <= x and k * (y - 1) >= ell * (x - 1)


def akal_density_family(k, ell, d_k, d_ell, r):
    """
    W_r = a^(r u_l) (b a^(l-1))^floor(r(u_k - u_l)/(l - k)) b^r' of length v r,
    with d_k = u_k/v and d_l = u_l/v. Returns (word, d(a^k, W_r), d(a^l, W_r)).
    """
    d_k, d_ell = Fraction(d_k), Fraction(d_ell)
    if not triangle_membership(k, ell, d_k, d_ell):
        raise RegionViolation(details={'k': k, 'ell': ell, 'd_k': str(d_k), 'd_ell': str(d_ell)})
    v = lcm(d_k.denominator, d_ell.denominator)
    u_k = int(d_k * v)
    u_ell = int(d_ell * v)
    blocks = (r * u_k - r * u_ell) // (ell - k)
    tail = r * v - r * u_ell - ell * blocks
    if tail < 0 or r * v < ell:
        raise LengthError(f"r = {r} is too small for this family", details={'r': r, 'tail': tail})
    letters = (A,) * (r * u_ell) + ((B,) + (A,) * (ell - 1)) * blocks + (B,) * tail
    word = Word(letters, 2)
    return word, factor_density((A,) * k, word), factor_density((A,) * ell, word)


def zero_density_family(k, ell, d_k, r):
    """
    W_r = (a^(l-1) b)^(r u) b^(r(v(l-k) - u l) + k - 1) with d_k = u/v <= (l-k)/l:
    d(a^k, W_r) = d_k exactly and a^l never occurs.
    """
    d_k = Fraction(d_k)
    if not 0 < k < ell:
        raise ValueError('need 0 < k < l')
    if not 0 <= d_k <= Fraction(ell - k, ell):
        raise RegionViolation(details={'k': k, 'ell': ell, 'd_k': str(d_k)})
    u, v = d_k.numerator, d_k.denominator
    letters = ((A,) * (ell - 1) + (B,)) * (r * u) + (B,) * (r * (v * (ell - k) - u * ell) + k - 1)
    return Word(letters, 2)


def extremal_z2_family(q, k):
    """W_k = 0^k 1^k ... (q-1)^k and δ(Z_2, W_k) = q (C(k,2) - (k-1)) / C(qk+1, 2)."""
    if q < 1 or k < 1:
        raise ValueError('need q, k >= 1')
    word = Word(tuple(c for c in range(q) for _ in range(k)), q)
    density = Fraction(q * (comb(k, 2) - (k - 1)), substring_count(q * k))
    return word, density


def cauchy_schwarz_z2_lower(length, q):
    """(|W|^2/(2q) - 3|W|/2 + q) / C(|W|+1, 2): a floor for δ(Z_2, W) over every W in [q]^length."""
    value = Fraction(length ** 2, 2 * q) - Fraction(3 * length, 2) + q
    return value / substring_count(length)
