"""
The `zimin` command line: one subcommand per operation.

run(argv) returns the process exit code: 0 on success, 2 when a budget ran
out (partial results are still emitted), 1 on any other error.
"""
import argparse
from contextlib import contextmanager
import logging
import sys

from django.conf import settings
from rest_framework import serializers as drf_serializers

from asymptotics.serializers import (
    RationalEnclosureSerializer, SequenceParamsSerializer, SequenceTableSerializer, SeriesParamsSerializer,
)
from avoidance.serializers import (
    AvoidanceResultSerializer, BoundReportSerializer, BoundsParamsSerializer, LongAvoiderParamsSerializer,
    MinimalInstancesSerializer, SearchParamsSerializer, instance_count_payload,
)
from debruijn.serializers import (
    DeBruijnParamsSerializer, FamilyFrequenciesSerializer, OptimizationReportSerializer,
    StationarySolutionSerializer,
)
from density.serializers import (
    DensityParamsSerializer, DensityValueSerializer, LiminfReportSerializer, MonteCarloSerializer,
    ScatterParamsSerializer, ScatterSerializer,
)
from ledger.recording import record_run
from patterns.serializers import (
    EncounterWitnessSerializer, ReductionTraceSerializer, UnavoidabilityQuerySerializer,
)
from words.core import Word
from words.serializers import WordField
from zimin_lab.error_utils import validation_error_payload
from zimin_lab.exceptions import BudgetExhausted, UsageError, ZiminError
from .formats import FORMATS, Outcome, render, render_error, write_out
from .serializers import RunConfigSerializer, TablesParamsSerializer, VerifyParamsSerializer

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2

# Options whose values may start with '-'.
DASH_VALUE_OPTIONS = ('--p', '--period')


class CliParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message, details={'usage': self.format_usage().strip()})


class InvalidParameters(Exception):
    def __init__(self, errors):
        self.payload = validation_error_payload(errors)
        super().__init__(self.payload['error']['message'])


def _validated(serializer_class, data):
    serializer = serializer_class(data={k: v for k, v in data.items() if v is not None})
    if not serializer.is_valid():
        raise InvalidParameters(serializer.errors)
    return serializer.validated_data


def _parse_word(text, alphabet):
    try:
        return WordField(alphabet=alphabet).to_internal_value(text)
    except drf_serializers.ValidationError as exc:
        raise InvalidParameters({'word': exc.detail}) from None


def _words_text(words, alphabet):
    return [w.to_string(alphabet) for w in words]


# Subcommand handlers. Each takes (args, config) and returns an Outcome.

def handle_f(args, config):
    from avoidance.search import compute_f

    params = _validated(SearchParamsSerializer, {'n': args.n, 'q': args.q, 'budget': config['budget']})
    result = compute_f(params['n'], params['q'], budget=params['budget'])
    return Outcome(
        data=AvoidanceResultSerializer(result).data,
        lines=[str(result.f_value)],
        header=['n', 'q', 'f'],
        rows=[[result.n, result.q, result.f_value]],
        action='SEARCH_RUN',
        summary={'f': result.f_value, 'nodes': result.nodes_explored},
    )


def handle_avoiders(args, config):
    from avoidance.search import enumerate_avoiders, search_max_avoiders

    params = _validated(SearchParamsSerializer, {'n': args.n, 'q': args.q, 'budget': config['budget']})
    if args.max:
        result = search_max_avoiders(params['n'], params['q'], budget=params['budget'])
        words = result.max_avoiders
    else:
        words = enumerate_avoiders(params['n'], params['q'], budget=params['budget'])
    texts = _words_text(words, config['alphabet'])
    return Outcome(
        data={'n': params['n'], 'q': params['q'], 'count': len(texts), 'words': texts},
        lines=texts,
        header=['word'],
        rows=[[t] for t in texts],
        action='SEARCH_RUN',
        summary={'count': len(texts)},
    )


def handle_longavoider(args, config):
    from avoidance.search import find_long_avoider

    params = _validated(LongAvoiderParamsSerializer, {
        'n': args.n, 'q': args.q, 'target': args.target, 'strategy': args.strategy,
        'seed': config['seed'], 'budget': config['budget'],
    })
    word = find_long_avoider(
        params['n'], params['q'], params['target'], strategy=params['strategy'],
        seed=params['seed'], budget=params['budget'],
    )
    text = None if word is None else word.to_string(config['alphabet'])
    return Outcome(
        data={'n': params['n'], 'q': params['q'], 'target': params['target'], 'found': word is not None,
              'length': None if word is None else len(word), 'word': text},
        lines=[text] if text is not None else [f"no Z_{params['n']}-avoider of length {params['target']} found"],
        action='SEARCH_RUN',
        summary={'found': word is not None},
    )


def handle_minimal(args, config):
    from avoidance.search import enumerate_minimal_instances

    params = _validated(SearchParamsSerializer, {
        'n': args.n, 'q': args.q, 'budget': config['budget'], 'max_len': args.max_len,
    })
    result = enumerate_minimal_instances(params['n'], params['q'], max_len=params['max_len'], budget=params['budget'])
    texts = _words_text(result.words, config['alphabet'])
    note = '' if result.complete else ' (incomplete: length cap below f)'
    return Outcome(
        data={**MinimalInstancesSerializer(result).data, 'words': texts},
        lines=[f"# m({result.n},{result.q}) = {result.count}{note}"] + texts,
        header=['word'],
        rows=[[t] for t in texts],
        action='SEARCH_RUN',
        summary={'count': result.count, 'complete': result.complete},
    )


def handle_bounds(args, config):
    from avoidance.bounds import bounds_report, instance_count_bounds
    from density.liminf import liminf_bound_report

    params = _validated(BoundsParamsSerializer, {'n': args.n, 'q': args.q, 'f_value': args.f, 'm_value': args.m})
    report = bounds_report(params['n'], params['q'], params.get('f_value'), params.get('m_value'))
    data = dict(BoundReportSerializer(report).data)
    lines = [
        f"f({report.n},{report.q}) <= {report.tetration_upper}  [tetration]",
        f"f({report.n},{report.q}) <  {report.tao_upper}  [tower in q]",
        f"f({report.n},{report.q}) <= {report.doubling_upper if report.doubling_upper is not None else '-'}  [doubling]",
        f"f({report.n},{report.q}) >= {report.first_moment_lower:.6g}  [first moment]",
        f"f({report.n},{report.q}) >= {report.tao_product_lower:.6g}  [product]",
    ]
    if report.rs_chain_upper is not None:
        lines.append(f"f({report.n},{report.q}) <= {report.rs_chain_upper}  [chain from f={report.previous_f}, m={report.previous_m}]")
    if report.rs_asymptotic_f3 is not None:
        lines.append(f"f(3,{report.q}) ~ {report.rs_asymptotic_f3:.6g}  [RS asymptotic form, not a bound]")
    if report.n >= 2:
        liminf = liminf_bound_report(report.n, report.q, params.get('f_value'), params.get('m_value'))
        data['liminf'] = LiminfReportSerializer(liminf).data
        for name, value in liminf.forms.items():
            lines.append(f"liminf density of Z_{report.n} >= {value.scientific()}  [{name}]")
    if args.instances:
        counts = instance_count_bounds(report.n, report.q, args.instances)
        data['instance_counts'] = instance_count_payload(counts)
        for name, value in counts.items():
            lines.append(f"{name} at M={args.instances}: {float(value):.6g}")
    return Outcome(data=data, lines=lines, action='BOUNDS_RUN', summary={'n': report.n, 'q': report.q})


def handle_density(args, config):
    from density.exact import (
        expected_density_exact, instance_density, monte_carlo_density, surjective_density,
    )

    params = _validated(DensityParamsSerializer, {
        'pattern': args.pattern, 'word': args.word, 'q': args.q, 'n': args.n,
        'samples': args.samples, 'seed': config['seed'], 'surjective': args.surjective,
    })
    data = {'pattern': params['pattern']}
    lines = []
    if params.get('word') is not None:
        word = _parse_word(params['word'], config['alphabet'])
        measure = surjective_density if params['surjective'] else instance_density
        value = measure(params['pattern'], word)
        data['density'] = DensityValueSerializer(value).data
        lines.append(f"δ = {value.numerator}/{value.denominator} = {value.as_float:.10g}")
    else:
        expected = expected_density_exact(params['pattern'], params['q'], params['n'], budget=config['budget'])
        data['expected'] = expected
        lines.append(f"E δ over [{params['q']}]^{params['n']} = {expected} = {float(expected):.10g}")
    if params['samples'] and params.get('n') is not None:
        estimate = monte_carlo_density(params['pattern'], params['q'], params['n'], params['samples'], seed=params['seed'])
        data['monte_carlo'] = MonteCarloSerializer(estimate).data
        lines.append(f"Monte Carlo: {estimate.mean:.6f} ± {estimate.standard_error:.6f} ({estimate.samples} samples)")
    return Outcome(data=data, lines=lines, action='DENSITY_RUN', summary={'pattern': params['pattern']})


def handle_scatter(args, config):
    from density.exact import SCATTER_HEADER, scatter_rows, scatter_z2_z3

    params = _validated(ScatterParamsSerializer, {'q': args.q, 'n': args.n, 'budget': config['budget']})
    dataset = scatter_z2_z3(params['q'], params['n'], budget=params['budget'])
    x_bar, y_bar = dataset.expectation
    return Outcome(
        data=ScatterSerializer(dataset).data,
        lines=[
            f"{len(dataset.points)} distinct (δ(Z_2,W), δ(Z_3,W)) points over [{dataset.q}]^{dataset.n}",
            f"min x = {dataset.min_x} = {float(dataset.min_x):.6f}",
            f"expectation = ({float(x_bar):.6f}, {float(y_bar):.6f})",
        ],
        header=SCATTER_HEADER,
        rows=scatter_rows(dataset),
        action='DENSITY_RUN',
        summary={'points': len(dataset.points)},
    )


def handle_ei(args, config):
    from density.exact import expected_density_bruteforce, expected_density_exact, instance_probability_exact

    params = _validated(DensityParamsSerializer, {'pattern': args.pattern, 'q': args.q, 'n': args.n})
    pattern, q, n = params['pattern'], params['q'], params['n']
    probabilities = [instance_probability_exact(pattern, q, m, budget=config['budget']) for m in range(1, n + 1)]
    expected = expected_density_exact(pattern, q, n, budget=config['budget'])
    data = {'pattern': pattern, 'q': q, 'n': n, 'expected': expected, 'probabilities': probabilities}
    lines = [f"I_{m} = {p}" for m, p in enumerate(probabilities, start=1)]
    lines.append(f"E δ_{n} = {expected} = {float(expected):.10g}")
    if args.check:
        direct = expected_density_bruteforce(pattern, q, n, budget=config['budget'])
        data['identity_holds'] = direct == expected
        lines.append(f"direct average = {direct}: identity {'holds' if direct == expected else 'FAILS'}")
    return Outcome(
        data=data, lines=lines, header=['m', 'num', 'den'],
        rows=[[m, p.numerator, p.denominator] for m, p in enumerate(probabilities, start=1)],
        action='DENSITY_RUN', summary={'expected': str(expected)},
    )


def _enclosure_outcome(enclosure, label, config):
    data = RationalEnclosureSerializer(enclosure, context={'digits': config['digits']}).data
    lower, upper = enclosure.endpoints(config['digits'] + 2)
    return Outcome(
        data=data,
        lines=[f"{label} = {enclosure.decimal(config['digits'])}  in [{lower}, {upper}]"],
        header=['lower_num', 'lower_den', 'upper_num', 'upper_den'],
        rows=[[enclosure.lower.numerator, enclosure.lower.denominator,
               enclosure.upper.numerator, enclosure.upper.denominator]],
        action='SERIES_RUN',
        summary={'decimal': enclosure.decimal(config['digits'])},
    )


def handle_iz2(args, config):
    from asymptotics.series import i_z2

    params = _validated(SeriesParamsSerializer, {'q': args.q, 'digits': config['digits'], 'tol': args.tol})
    enclosure = i_z2(params['q'], tolerance=params['tol'])
    return _enclosure_outcome(enclosure, f"I(Z_2,{params['q']})", config)


def handle_iz3(args, config):
    from asymptotics.series import i_z3

    params = _validated(SeriesParamsSerializer, {'q': args.q, 'N': args.N, 'M': args.M, 'bits': args.bits})
    enclosure = i_z3(params['q'], N=params['N'], M=params['M'], bits=params['bits'], cross_check=args.cross_check)
    return _enclosure_outcome(enclosure, f"I(Z_3,{params['q']})", config)


def handle_izn_upper(args, config):
    from asymptotics.series import i_zn_upper

    params = _validated(SeriesParamsSerializer, {'q': args.q, 'n': args.n})
    value = i_zn_upper(params['n'], params['q'])
    return Outcome(
        data={'n': params['n'], 'q': params['q'], 'upper': value},
        lines=[f"I(Z_{params['n']},{params['q']}) <= {float(value):.6g}"],
        action='SERIES_RUN',
        summary={'upper': float(value)},
    )


def handle_iv_upper(args, config):
    from asymptotics.series import iv_product_upper, zimin_multiplicities

    if args.multiplicities:
        try:
            multiplicities = [int(r) for r in args.multiplicities.split(',')]
        except ValueError:
            raise UsageError('multiplicities must be comma-separated integers') from None
    elif args.n:
        multiplicities = zimin_multiplicities(args.n)
    else:
        raise UsageError('give --n or --multiplicities')
    if args.q < 2:
        raise UsageError('q must be at least 2')
    value = iv_product_upper(multiplicities, args.q)
    return Outcome(
        data={'multiplicities': multiplicities, 'q': args.q, 'upper': value},
        lines=[f"I(V,{args.q}) <= {value} = {float(value):.3g}"],
        action='SERIES_RUN',
        summary={'upper': float(value)},
    )


def handle_sequences(args, config):
    from asymptotics.sequences import bhat_recursion, bifix_free_counts, cd_recursion

    params = _validated(SequenceParamsSerializer, {
        'kind': args.kind, 'q': args.q, 'ell': args.ell, 'max_m': args.max_m,
        'variant': args.variant, 'check': args.check,
    })
    kind = params['kind']
    if kind == 'a':
        table = bifix_free_counts(params['q'], params['max_m'])
    elif kind == 'bhat':
        table = bhat_recursion(params['q'], params['ell'], params['max_m'], variant=params['variant'])
    else:
        c, d, b = cd_recursion(params['q'], params['ell'], params['max_m'], check=params['check'])
        table = {'b': b, 'c': c, 'd': d}[kind]
    return Outcome(
        data=SequenceTableSerializer(table).data,
        lines=[f"{m} {value}" for m, value in table.rows()],
        header=['index', 'value'],
        rows=[list(row) for row in table.rows()],
        action='SERIES_RUN',
        summary={'kind': table.kind, 'length': len(table)},
    )


def handle_debruijn(args, config):
    from debruijn.graph import DeBruijnModel
    from debruijn.optimize import minimize_objective
    from debruijn.stationary import simulate_walk, verify_candidate, word_family_frequencies

    params = _validated(DeBruijnParamsSerializer, {
        'k': args.k, 'q': args.q, 'max_len': args.max_len, 'literal': args.literal,
        'restarts': args.restarts, 'seed': config['seed'], 'warm_starts': not args.no_warm_starts,
    })
    model = DeBruijnModel(k=params['k'], q=params['q'], max_len=params['max_len'], minimal=not params['literal'])
    tracked = ', '.join(str(v) for v in model.instances)
    if args.action == 'verify':
        if not args.p:
            raise UsageError('debruijn verify needs --p')
        solution = verify_candidate(model, args.p)
        return Outcome(
            data=StationarySolutionSerializer(solution).data,
            lines=[
                f"tracked instances: {tracked}",
                *(f"r_{name} = {value}" for name, value in solution.r.items()),
                f"d = {solution.objective} = {float(solution.objective):.10g}"
                + ('  (reducible walk)' if solution.reducible else ''),
            ],
            header=['node', 'num', 'den'],
            rows=[[model.label(node), v.numerator, v.denominator] for node, v in enumerate(solution.q_dist)],
            action='DEBRUIJN_RUN',
            summary={'d': str(solution.objective)},
        )
    if args.action == 'family':
        if not args.period:
            raise UsageError('debruijn family needs --period')
        frequencies = word_family_frequencies(_parse_word(args.period, config['alphabet']), model)
        return Outcome(
            data=FamilyFrequenciesSerializer(frequencies).data,
            lines=[
                *(f"{model.label(node)} {share}" for node, share in enumerate(frequencies.q_dist) if share),
                f"quadratic estimate = {frequencies.estimate} = {float(frequencies.estimate):.10g}",
            ],
            action='DEBRUIJN_RUN',
            summary={'estimate': str(frequencies.estimate)},
        )
    if args.action == 'simulate':
        if not args.p:
            raise UsageError('debruijn simulate needs --p')
        from debruijn.stationary import parse_probabilities

        shares = simulate_walk(model, parse_probabilities(args.p, model.q), args.steps, seed=params.get('seed'))
        return Outcome(
            data={'steps': args.steps, 'frequencies': [float(v) for v in shares]},
            lines=[f"{model.label(node)} {float(v):.6f}" for node, v in enumerate(shares)],
            action='DEBRUIJN_RUN',
            summary={'steps': args.steps},
        )
    report = minimize_objective(
        model, restarts=params.get('restarts'), seed=params.get('seed'), warm_starts=params['warm_starts'],
    )
    lines = [
        f"tracked instances: {tracked}",
        f"best d = {report.best.d:.10f} from {report.best.start} start over {len(report.restarts)} starts",
        'p = ' + ','.join(f"{x:.6g}" for x in report.best.p),
    ]
    if report.verified is not None:
        lines.append(f"rational check: d = {float(report.verified.objective):.10f}")
    lines.append(report.label)
    return Outcome(
        data=OptimizationReportSerializer(report).data,
        lines=lines,
        action='DEBRUIJN_RUN',
        summary={'d': report.best.d},
    )


def handle_verify(args, config):
    from .verification import verify_word_file

    params = _validated(VerifyParamsSerializer, {'path': args.path, 'n': args.n, 'method': args.method})
    report = verify_word_file(params['path'], params['n'], alphabet=config['alphabet'], method=params['method'])
    return Outcome(
        data={'n': params['n'], 'words': [entry.to_dict(config['alphabet']) for entry in report]},
        lines=[entry.describe(config['alphabet']) for entry in report],
        header=['line', 'word', 'start', 'end'],
        rows=[
            [entry.line, entry.word.to_string(config['alphabet']),
             *(entry.encounter[:2] if entry.encounter else ('', ''))]
            for entry in report
        ],
        action='VERIFY_RUN',
        summary={'words': len(report), 'encounters': sum(1 for e in report if not e.avoids)},
    )


def handle_tables(args, config):
    from .tables import build_table

    params = _validated(TablesParamsSerializer, {'reproduce': args.reproduce, 'max_n': args.max_n})
    header, rows = build_table(params['reproduce'], budget=config['budget'], max_n=params.get('max_n'))
    widths = [max(len(str(cell)) for cell in column) for column in zip(header, *rows)]
    lines = ['  '.join(str(cell).ljust(width) for cell, width in zip(row, widths)).rstrip() for row in [header, *rows]]
    return Outcome(
        data={'table': params['reproduce'], 'header': header, 'rows': rows},
        lines=lines,
        header=header,
        rows=rows,
        action='TABLES_RUN',
        summary={'table': params['reproduce'], 'rows': len(rows)},
    )


def handle_unavoidable(args, config):
    from patterns.engine import is_unavoidable

    params = _validated(UnavoidabilityQuerySerializer, {'pattern': args.pattern, 'method': args.method})
    verdict, certificates = is_unavoidable(params['pattern'], method=params['method'], certificate=True)
    data = {'pattern': params['pattern'], 'unavoidable': verdict}
    if certificates.get('zimin') is not None:
        data['witness'] = EncounterWitnessSerializer(certificates['zimin']).data
    if certificates.get('bem') is not None:
        data['reduction'] = ReductionTraceSerializer(certificates['bem']).data
    return Outcome(
        data=data,
        lines=[f"{params['pattern']}: {'unavoidable' if verdict else 'avoidable'}"],
        action='SEARCH_RUN',
        summary={'unavoidable': verdict},
    )


def _common_options():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument('--format', choices=FORMATS, default='text')
    parent.add_argument('--out', help='write the rendered output to this file')
    parent.add_argument('--alphabet', help='symbols for letter codes 0, 1, ... (default 0-9a-z)')
    parent.add_argument('--budget', type=int, help='node or enumeration budget')
    parent.add_argument('--seed', type=int)
    parent.add_argument('--threads', type=int, help='worker pool size (default ZIMIN_THREADS)')
    parent.add_argument('--digits', type=int, default=10)
    parent.add_argument('--progress', action='store_true', help='show progress bars on long enumerations')
    return parent


def build_parser():
    common = _common_options()
    parser = CliParser(prog='zimin', description='Zimin word avoidance, densities and instance probabilities.')
    sub = parser.add_subparsers(dest='command', required=True, parser_class=CliParser)

    def command(name, handler, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = command('f', handle_f, 'compute f(n,q) by exhaustive search')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, default=2)

    p = command('avoiders', handle_avoiders, 'list Z_n-avoiders')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--max', action='store_true', help='only avoiders of length f(n,q) - 1')

    p = command('longavoider', handle_longavoider, 'randomized search for a long Z_n-avoider')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--target', type=int, required=True)
    p.add_argument('--strategy', choices=['greedy', 'restart-backtrack'], default='restart-backtrack')

    p = command('minimal', handle_minimal, 'list minimal Z_n-instances')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--max-len', dest='max_len', type=int)

    p = command('bounds', handle_bounds, 'closed-form bounds on f(n,q) and on the liminf density of Z_n')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--f', type=int, help='f(n-1,q) for the chain and density bounds')
    p.add_argument('--m', type=int, help='m(n-1,q) for the chain and density bounds')
    p.add_argument('--instances', type=int, help='also report instance counts at this length')

    p = command('density', handle_density, 'instance density of a pattern')
    p.add_argument('--pattern', required=True)
    p.add_argument('--word')
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--n', type=int)
    p.add_argument('--samples', type=int, default=0)
    p.add_argument('--surjective', action='store_true')

    p = command('scatter', handle_scatter, '(δ(Z_2,W), δ(Z_3,W)) over all words of one length')
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--n', type=int, required=True)

    p = command('ei', handle_ei, 'expected density from instance probabilities')
    p.add_argument('--pattern', required=True)
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--check', action='store_true', help='compare with the direct average over all words')

    p = command('iz2', handle_iz2, 'enclosure of I(Z_2,q)')
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--tol', default='1e-12')

    p = command('iz3', handle_iz3, 'enclosure of I(Z_3,q)')
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--N', type=int)
    p.add_argument('--M', type=int)
    p.add_argument('--bits', type=int)
    p.add_argument('--cross-check', dest='cross_check', action='store_true')

    p = command('izn-upper', handle_izn_upper, 'upper bound on I(Z_n,q)')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--q', type=int, default=2)

    p = command('iv-upper', handle_iv_upper, 'product upper bound on I(V,q)')
    p.add_argument('--n', type=int, help='use the multiplicities of Z_n')
    p.add_argument('--multiplicities')
    p.add_argument('--q', type=int, default=2)

    p = command('sequences', handle_sequences, 'the a, b, c, d and bhat tables')
    p.add_argument('--kind', required=True, choices=['a', 'b', 'c', 'd', 'bhat'])
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--ell', type=int)
    p.add_argument('--max-m', dest='max_m', type=int, default=16)
    p.add_argument('--variant', choices=['overcount', 'printed'], default='overcount')
    p.add_argument('--check', action='store_true', help='reconcile b with brute force')

    p = command('debruijn', handle_debruijn, 'walks on de Bruijn graphs')
    p.add_argument('action', nargs='?', choices=['optimize', 'verify', 'family', 'simulate'], default='optimize')
    p.add_argument('--k', type=int, default=4)
    p.add_argument('--q', type=int, default=2)
    p.add_argument('--max-len', dest='max_len', type=int)
    p.add_argument('--literal', action='store_true', help='track every Z_2-bifix-free instance, not only minimal ones')
    p.add_argument('--restarts', type=int)
    p.add_argument('--no-warm-starts', dest='no_warm_starts', action='store_true')
    p.add_argument('--p', help="edge probabilities, e.g. '-,4/5,0,3/5,...'")
    p.add_argument('--period')
    p.add_argument('--steps', type=int, default=10 ** 6)

    p = command('verify', handle_verify, 'check a word file for Z_n-encounters')
    p.add_argument('path')
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--method', choices=['auto', 'window', 'kernel'], default='auto')

    p = command('tables', handle_tables, 'regenerate a reference table')
    p.add_argument('--reproduce', required=True, choices=['fn2', 'Z2Z3', 'IZ2', 'IZ3', 'appendMD', 'TREES'])
    p.add_argument('--max-n', dest='max_n', type=int)

    p = command('unavoidable', handle_unavoidable, 'decide whether a pattern is unavoidable')
    p.add_argument('--pattern', required=True)
    p.add_argument('--method', choices=['zimin', 'bem', 'both'], default='both')

    return parser


@contextmanager
def _settings_overrides(config):
    """Apply --threads and --progress to the ZIMIN block for one run."""
    saved = dict(settings.ZIMIN)
    if config['threads'] is not None:
        settings.ZIMIN['THREADS'] = config['threads']
    if config['progress']:
        settings.ZIMIN['PROGRESS'] = True
    try:
        yield
    finally:
        settings.ZIMIN.clear()
        settings.ZIMIN.update(saved)


def _partial_data(partial, alphabet):
    if partial is None:
        return None
    if isinstance(partial, list):
        return [w.to_string(alphabet) if isinstance(w, Word) else str(w) for w in partial]
    if hasattr(partial, 'words'):
        return {**MinimalInstancesSerializer(partial).data, 'words': _words_text(partial.words, alphabet)}
    if hasattr(partial, 'f_lower_bound'):
        return AvoidanceResultSerializer(partial).data
    return str(partial)


def _attach_dash_values(argv):
    """
    Join `--p -,4/5,...` into `--p=-,4/5,...`.
    Edge vectors start with '-' for an unused self-loop.
    """
    joined = []
    tokens = iter(argv)
    for token in tokens:
        if token in DASH_VALUE_OPTIONS:
            value = next(tokens, None)
            if value is not None and value.startswith('-') and not value.startswith('--'):
                joined.append(f'{token}={value}')
                continue
            joined.append(token)
            if value is not None:
                joined.append(value)
            continue
        joined.append(token)
    return joined


def _requested_format(argv):
    """Format to use for errors raised before the options are validated."""
    for index, token in enumerate(argv):
        if token == '--format=json' or (token == '--format' and argv[index + 1:index + 2] == ['json']):
            return 'json'
    return 'text'


def _emit(text, config, stdout):
    if config['out']:
        write_out(text, config['out'])
    elif text:
        stdout.write(text + '\n')


def run(argv, stdout=None, stderr=None):
    """
    Parse argv, dispatch to the subcommand and stream its output.

    Example:
        run(['f', '--n', '2', '--q', '2'])  # prints 5, returns 0
    """
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(argv)
    fmt = _requested_format(argv)
    action = None
    try:
        args = build_parser().parse_args(_attach_dash_values(argv))
        config = _validated(RunConfigSerializer, {
            'format': args.format, 'out': args.out, 'alphabet': args.alphabet, 'budget': args.budget,
            'seed': args.seed, 'threads': args.threads, 'digits': args.digits, 'progress': args.progress,
        })
        fmt = config['format']
        with _settings_overrides(config):
            outcome = args.handler(args, config)
        action = outcome.action
        _emit(render(outcome, fmt), config, stdout)
        exit_code = outcome.exit_code
        record_run(action, {'argv': argv, 'exit_code': exit_code, 'summary': outcome.summary})
        return exit_code
    except BudgetExhausted as exc:
        logger.warning(f"Budget exhausted: {exc.message}")
        payload = exc.to_payload()
        payload['partial'] = _partial_data(exc.partial, config['alphabet'])
        if fmt == 'json':
            _emit(render_error(payload, fmt), config, stdout)
        else:
            stderr.write(render_error(payload, fmt) + '\n')
            if isinstance(payload['partial'], list):
                _emit('\n'.join(payload['partial']), config, stdout)
            elif payload['partial'] is not None:
                _emit(render(Outcome(data=payload['partial']), 'json'), config, stdout)
        record_run(action or 'SEARCH_RUN', {'argv': argv, 'exit_code': EXIT_BUDGET})
        return EXIT_BUDGET
    except InvalidParameters as exc:
        _report(exc.payload, fmt, stdout, stderr)
        return EXIT_ERROR
    except ZiminError as exc:
        payload = exc.to_payload()
        _report(payload, fmt, stdout, stderr)
        if isinstance(exc, UsageError) and fmt != 'json' and exc.details:
            stderr.write(exc.details.get('usage', '') + '\n')
        return exc.exit_code


def _report(payload, fmt, stdout, stderr):
    if fmt == 'json':
        stdout.write(render_error(payload, fmt) + '\n')
    else:
        stderr.write(render_error(payload, fmt) + '\n')
