"""
Multi-start minimization of the de Bruijn objective d(p).

Each restart runs projected coordinate descent with a shrinking step and,
for q = 2, a bounded Nelder-Mead polish. The output is a candidate lower
bound from a heuristic search, never a certified optimum.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import logging

import numpy as np
from scipy.optimize import minimize

from zimin_lab.conf import get_setting
from zimin_lab.exceptions import NoConvergence
from zimin_lab.pool import run_group
from .graph import DeBruijnModel
from .stationary import FLOAT, parse_probabilities, stationary, verify_candidate

logger = logging.getLogger(__name__)

LABEL = 'candidate lower bound (de Bruijn heuristic)'

# Walks on the 4-dimensional binary graph known to give d = 1/28.
KNOWN_CANDIDATES = (
    '-,4/5,0,3/5,2/5,-,1/5,0,1,4/5,-,3/5,2/5,1,1/5,-',
    '-,1,0,3/4,1,-,1/2,0,1,1/2,-,0,1/4,1,0,-',
    '-,1,-,3/5,2/5,-,1/5,0,1,1,0,-,2/5,0,1/5,-',
)

SNAP = 1e-9
MAX_DENOMINATOR = 10 ** 6


@dataclass
class RestartResult:
    p: tuple
    d: float
    start: str = 'random'


@dataclass
class OptimizationReport:
    best: RestartResult
    restarts: list = field(default_factory=list)
    verified: object = None
    label: str = LABEL

    @property
    def d_upper_float(self):
        return self.best.d


def _to_p(model, vector):
    if model.q == 2:
        return tuple(float(x) for x in vector)
    rows = np.asarray(vector, dtype=float).reshape(model.size, model.q)
    return tuple(tuple(row) for row in rows)


def _project(model, vector):
    """Clip to [0,1]; for q > 2 renormalize each node's row onto the simplex."""
    vector = np.clip(vector, 0.0, 1.0)
    if model.q == 2:
        return vector
    rows = vector.reshape(model.size, model.q)
    totals = rows.sum(axis=1, keepdims=True)
    rows = np.where(totals > 0, rows / np.where(totals > 0, totals, 1), 1.0 / model.q)
    return rows.reshape(-1)


def objective(model, vector):
    """d(p) in float mode; an unsolvable walk scores +inf."""
    try:
        return float(stationary(model, _to_p(model, vector), mode=FLOAT).objective)
    except NoConvergence:
        return float('inf')


def coordinate_descent(model, vector, step=0.25, tolerance=1e-7):
    vector = _project(model, np.asarray(vector, dtype=float))
    value = objective(model, vector)
    while step > tolerance:
        improved = False
        for i in range(len(vector)):
            for direction in (step, -step):
                trial = vector.copy()
                trial[i] += direction
                trial = _project(model, trial)
                trial_value = objective(model, trial)
                if trial_value < value:
                    vector, value, improved = trial, trial_value, True
                    break
        if not improved:
            step /= 2
    return vector, value


def polish(model, vector, tolerance=1e-9):
    """Bounded Nelder-Mead from the descent output (q = 2 only)."""
    if model.q != 2:
        return vector, objective(model, vector)
    result = minimize(
        lambda x: objective(model, x), vector, method='Nelder-Mead',
        bounds=[(0.0, 1.0)] * len(vector),
        options={'xatol': tolerance, 'fatol': tolerance * 1e-3, 'maxiter': 200 * len(vector), 'maxfev': 200 * len(vector)},
    )
    candidate = _project(model, result.x)
    value = objective(model, candidate)
    current = objective(model, vector)
    return (candidate, value) if value < current else (vector, current)


def snap(vector):
    """Entries within SNAP of 0 or 1 become exactly 0 or 1."""
    vector = np.asarray(vector, dtype=float).copy()
    vector[vector < SNAP] = 0.0
    vector[vector > 1 - SNAP] = 1.0
    return vector


def run_single_restart(k, q, max_len, minimal, entropy, spawn_key, tolerance, start=None):
    """One descent + polish; `start` overrides the random initial point."""
    model = DeBruijnModel(k=k, q=q, max_len=max_len, minimal=minimal)
    dimension = model.size * (1 if q == 2 else q)
    if start is None:
        rng = np.random.default_rng(np.random.SeedSequence(entropy, spawn_key=tuple(spawn_key)))
        vector = rng.random(dimension)
    else:
        vector = np.asarray(start, dtype=float)
    vector, _ = coordinate_descent(model, vector, tolerance=tolerance)
    vector, _ = polish(model, vector, tolerance=tolerance)
    vector = snap(_project(model, vector))
    return {'p': [float(x) for x in vector], 'd': objective(model, vector)}


def _warm_start_vectors(model):
    if (model.k, model.q) != (4, 2):
        return []
    vectors = []
    for text in KNOWN_CANDIDATES:
        vectors.append([0.5 if x is None else float(x) for x in parse_probabilities(text)])
    return vectors


def rationalize(model, p, max_denominator=MAX_DENOMINATOR):
    """Nearest small-denominator rationals; q > 2 rows are renormalized exactly."""
    if model.q == 2:
        return tuple(Fraction(x).limit_denominator(max_denominator) for x in p)
    rows = []
    for row in p:
        values = [Fraction(x).limit_denominator(max_denominator) for x in row]
        total = sum(values)
        rows.append(tuple(v / total for v in values))
    return tuple(rows)


def minimize_objective(model, restarts=None, seed=None, tolerance=1e-7, warm_starts=True, verify=True):
    """
    Best d(p) over `restarts` random starts (plus the known candidates when
    warm_starts is set). Ties go to the lexicographically smallest p.
    """
    from .tasks import run_restart

    restarts = get_setting('RESTARTS', restarts)
    seed = get_setting('DEFAULT_SEED', seed)
    if restarts < 1:
        raise ValueError('restarts must be at least 1')
    signatures = [
        run_restart.s(model.k, model.q, model.max_len, model.minimal, seed, [index], tolerance)
        for index in range(restarts)
    ]
    starts = ['random'] * restarts
    if warm_starts:
        for index, vector in enumerate(_warm_start_vectors(model)):
            signatures.append(
                run_restart.s(model.k, model.q, model.max_len, model.minimal, seed, [restarts + index], tolerance, vector)
            )
            starts.append(f'known-{index + 1}')
    outcomes = run_group(signatures)
    results = [
        RestartResult(p=tuple(outcome['p']), d=outcome['d'], start=start)
        for outcome, start in zip(outcomes, starts)
    ]
    best = min(results, key=lambda r: (r.d, r.p))
    report = OptimizationReport(best=best, restarts=results)
    if verify:
        p = best.p if model.q == 2 else _to_p(model, best.p)
        report.verified = verify_candidate(model, rationalize(model, p))
    logger.info(f"Best d over {len(results)} starts: {best.d:.10f} ({best.start}); {LABEL}")
    return report
