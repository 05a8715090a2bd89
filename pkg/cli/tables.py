"""
Regeneration of the reference tables, one builder per table name.

Each builder returns (header, rows) with plain values ready for CSV.
"""
import logging

from asymptotics.sequences import cd_recursion
from asymptotics.series import i_z2, i_z3, iv_product_upper, zimin_multiplicities
from avoidance.search import compute_f
from density.liminf import liminf_bound_report, tower_window_form

logger = logging.getLogger(__name__)

FN2_CASES = ((1, 2), (2, 2), (3, 2), (2, 3), (2, 4))
TREES_RANGES = {1: range(3, 10), 2: range(5, 11), 3: range(7, 13)}
LIMINF_FORMS = ('trimmed', 'window', 'minimal', 'closed')


def fn2_table(budget=None, max_n=3):
    rows = []
    for n, q in FN2_CASES:
        if n <= max_n:
            rows.append([n, q, compute_f(n, q, budget=budget).f_value])
    return ['n', 'q', 'f'], rows


def z2z3_table(digits=8):
    rows = []
    for q in range(2, 7):
        rows.append([q, i_z2(q).decimal(7), i_z3(q).decimal(digits)])
    return ['q', 'I(Z2,q)', 'I(Z3,q)'], rows


def iz2_table():
    return ['q', 'I(Z2,q)'], [[q, i_z2(q).decimal(7)] for q in range(2, 9)]


def iz3_table(N=None, M=None, digits=8):
    rows = []
    for q in range(2, 7):
        enclosure = i_z3(q, N=N, M=M)
        lower, upper = enclosure.endpoints(12)
        rows.append([q, enclosure.decimal(digits), lower, upper])
    return ['q', 'I(Z3,q)', 'lower', 'upper'], rows


def appendmd_table(max_n=5, max_q=5):
    """
    Best-known bounds: lower bounds on the liminf density of Z_n (every form)
    and the product upper bound on I(Z_n,q).
    """
    rows = []
    for n in range(3, max_n + 1):
        for q in range(2, max_q + 1):
            report = liminf_bound_report(n, q)
            forms = dict(report.forms)
            if 'window' not in forms:
                tower = tower_window_form(n, q)
                if tower is not None:
                    forms['window (tower)'] = tower
            cells = [forms[name].scientific() if name in forms else '-' for name in LIMINF_FORMS]
            tower_cell = forms['window (tower)'].scientific() if 'window (tower)' in forms else '-'
            upper = iv_product_upper(zimin_multiplicities(n), q)
            rows.append([n, q, *cells, tower_cell, f"{float(upper):.3g}"])
    return ['n', 'q', *LIMINF_FORMS, 'window (tower)', 'upper'], rows


def trees_table():
    rows = []
    for ell, ms in TREES_RANGES.items():
        b = cd_recursion(2, ell, ms[-1])[2]
        rows.extend([ell, m, b[m]] for m in ms)
    return ['ell', 'm', 'b'], rows


TABLES = {
    'fn2': fn2_table,
    'Z2Z3': z2z3_table,
    'IZ2': iz2_table,
    'IZ3': iz3_table,
    'appendMD': appendmd_table,
    'TREES': trees_table,
}


def build_table(name, **options):
    if name not in TABLES:
        raise KeyError(name)
    logger.info(f"Reproducing table {name}")
    if name == 'fn2':
        return fn2_table(budget=options.get('budget'), max_n=options.get('max_n') or 3)
    if name == 'IZ3':
        return iz3_table(N=options.get('N'), M=options.get('M'))
    return TABLES[name]()
