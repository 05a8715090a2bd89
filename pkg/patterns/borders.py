"""
Border tables and the Zimin order kernel.

A word is a Z_n-instance (n >= 2) iff it has a border B with 2|B| < |W| that
is itself a Z_{n-1}-instance. If some border qualifies, the shortest border
that is a Z_{n-1}-instance qualifies too, so one pass over the failure
function per level decides every prefix of a sequence at once.
"""


def failure_function(seq):
    """
    fail[m] = length of the longest proper border of seq[:m], for m = 0..len(seq).

    >>> failure_function('abacaba')
    [0, 0, 0, 1, 0, 1, 2, 3]
    """
    n = len(seq)
    fail = [0] * (n + 1)
    k = 0
    for i in range(1, n):
        while k and seq[i] != seq[k]:
            k = fail[k]
        if seq[i] == seq[k]:
            k += 1
        fail[i + 1] = k
    return fail


def zimin_prefix_levels(seq, n, fail=None):
    """
    levels[j][m] is True iff seq[:m] is a Z_{j+1}-instance, for j < n.
    """
    length = len(seq)
    if fail is None:
        fail = failure_function(seq)
    previous = [m >= 1 for m in range(length + 1)]
    levels = [previous]
    for _ in range(2, n + 1):
        shortest = [0] * (length + 1)
        current = [False] * (length + 1)
        for m in range(2, length + 1):
            b = fail[m]
            if not b:
                continue
            s = shortest[b] or (b if previous[b] else 0)
            shortest[m] = s
            current[m] = s > 0 and 2 * s < m
        levels.append(current)
        previous = current
    return levels


def zimin_prefix_flags(seq, n):
    """flags[m] is True iff seq[:m] is a Z_n-instance."""
    return zimin_prefix_levels(seq, n)[n - 1]


def suffix_instance_lengths(seq, n):
    """
    Lengths m such that the suffix of seq of length m is a Z_n-instance.

    Z_n is a palindrome, so a word is a Z_n-instance iff its reversal is;
    suffixes of seq are the reversed prefixes of seq[::-1].
    """
    flags = zimin_prefix_flags(seq[::-1], n)
    return [m for m in range(1, len(seq) + 1) if flags[m]]

