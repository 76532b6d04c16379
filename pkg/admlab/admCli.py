import sys
import json
import logging
import argparse
from collections import namedtuple, OrderedDict
from fractions import Fraction
import sympy
from prettytable import PrettyTable
from colorama import Fore, Style
import admlab
from admlab import ADMLAB, LOG_LEVEL
from admlab.admGraph import read_graph, parse_point, format_point
from admlab.admCircuit import resistance
from admlab.admGreen import canonical_measure, green_value, discrete_oracle
from admlab.admInvariants import CHECKS, DEFAULT_CHECKS, run_checks
from admlab.admLedger import read_ledger, ledger_report
from admlab.admSweep import default_options, sweep
from admlab.admDeligne import CATALOG, PicExpr, verify_all
from admlab.admErrors import AdmError, AdmInputError, InvariantViolation

"""Command line front end.

Every command prints a report on stdout, as tables or as JSON with
``--json``. Logs go to stderr.

Exit codes
----------

    0   success, every check passed
    1   a mathematical check failed or an internal invariant was violated
    2   usage, parse or input error
"""

RunConfig = namedtuple('RunConfig', ['command', 'paths', 'seed', 'output'])

LEVELS = {'debug': logging.DEBUG,
          'info': logging.INFO,
          'warning': logging.WARNING,
          'error': logging.ERROR,
          'critical': logging.CRITICAL}

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def jsonable(value):
    """Convert a report value to JSON types; rationals become ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (float, str)):
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, sympy.Poly):
        return str(value.as_expr())
    if isinstance(value, PicExpr):
        return OrderedDict((term.label(), jsonable(coefficient))
                           for term, coefficient in value.terms())
    if hasattr(value, '_asdict'):
        return OrderedDict((key, jsonable(item)) for key, item in value._asdict().items())
    if isinstance(value, dict):
        return OrderedDict((str(key), jsonable(item)) for key, item in value.items())
    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]
    return str(value)


def status(passed):
    text = 'PASS' if passed else 'FAIL'
    if not sys.stdout.isatty():
        return text
    return (Fore.GREEN if passed else Fore.RED) + text + Style.RESET_ALL


def emit(config, document, tables):
    """Print a report: JSON document or a list of tables / text blocks."""
    if config.output == 'json':
        print(json.dumps(jsonable(document), indent=2, sort_keys=True))
        return
    for table in tables:
        print(table)


def quantity_table(rows):
    table = PrettyTable(['quantity', 'value'])
    table.align = 'l'
    for name, value in rows:
        table.add_row([name, value])
    return table


def check_table(checks):
    table = PrettyTable(['check', 'status', 'margin'])
    table.align = 'l'
    for check in checks.values():
        margin = '~%g' % check.margin if check.approximate else str(check.margin)
        table.add_row([check.name, status(check.passed), margin])
    return table


def report_document(report):
    document = OrderedDict()
    for key in ('genus', 'total_length', 'delta', 'epsilon', 'epsilon_alt', 'phi',
                'admissible_constant', 'canonical_divisor'):
        document[key] = getattr(report, key)
    document['checks'] = OrderedDict()
    for name, check in report.checks.items():
        margin = float(check.margin) if check.approximate else check.margin
        document['checks'][name] = OrderedDict([('passed', check.passed),
                                                ('margin', margin),
                                                ('approximate', check.approximate)])
    document['passed'] = report.passed
    if not report.passed:
        document['graph'] = report.graph
    return document


def selected_checks(options):
    if getattr(options, 'oracle', False):
        return CHECKS
    return DEFAULT_CHECKS


def do_invariants(config, options):
    graph = read_graph(options.file)
    report = run_checks(graph, checks=selected_checks(options), segments=options.segments)
    rows = [('genus', report.genus), ('total length', report.total_length)]
    rows += [('delta_%d' % i, value) for i, value in enumerate(report.delta)]
    rows += [('epsilon', report.epsilon), ('epsilon (resistance)', report.epsilon_alt),
             ('phi', report.phi), ('admissible constant', report.admissible_constant),
             ('canonical divisor', ' '.join('%s:%s' % item for item
                                            in sorted(report.canonical_divisor.items())))]
    tables = [quantity_table(rows), check_table(report.checks)]
    if not report.passed:
        tables.append(report.graph)
    emit(config, report_document(report), tables)
    return EXIT_OK if report.passed else EXIT_FAILED


def do_check(config, options):
    report = run_checks(read_graph(options.file), checks=selected_checks(options),
                        segments=options.segments)
    document = report_document(report)
    tables = [check_table(report.checks)]
    if not report.passed:
        tables.append(report.graph)
    emit(config, OrderedDict([('checks', document['checks']), ('passed', report.passed),
                              ('graph', report.graph)]), tables)
    return EXIT_OK if report.passed else EXIT_FAILED


def do_resistance(config, options):
    graph = read_graph(options.file)
    x, y = parse_point(options.a), parse_point(options.b)
    value = resistance(graph, x, y)
    document = OrderedDict([('a', format_point(x)), ('b', format_point(y)),
                            ('resistance', value)])
    emit(config, document, [value])
    return EXIT_OK


def do_green(config, options):
    graph = read_graph(options.file)
    source, at = parse_point(options.source), parse_point(options.at)
    value = green_value(graph, canonical_measure(graph), at, source)
    document = OrderedDict([('source', format_point(source)), ('at', format_point(at)),
                            ('value', value)])
    emit(config, document, [value])
    return EXIT_OK


def do_oracle(config, options):
    graph = read_graph(options.file)
    source = parse_point(options.source)
    values = discrete_oracle(graph, canonical_measure(graph), source, options.segments)
    document = OrderedDict([('source', format_point(source)), ('segments', options.segments),
                            ('approximate', True),
                            ('values', OrderedDict(sorted(values.items())))])
    table = PrettyTable(['vertex', 'approximate value'])
    table.align = 'l'
    for vertex_id, value in sorted(values.items()):
        table.add_row([vertex_id, '%.12g' % value])
    emit(config, document, [table])
    return EXIT_OK


def parse_checks(text):
    """``all`` or a comma separated list of check names."""
    if text == 'all':
        return CHECKS
    names = tuple(name.strip() for name in text.split(',') if name.strip())
    unknown = [name for name in names if name not in CHECKS]
    if unknown or not names:
        raise argparse.ArgumentTypeError('unknown checks: %s' % ', '.join(unknown or [text]))
    return names


def do_random(config, options):
    sweep_options = default_options(max_vertices=options.max_vertices,
                                    max_edges=options.max_edges,
                                    max_genus=options.max_genus,
                                    checks=options.check, segments=options.segments)
    report = sweep(options.count, seed=config.seed, options=sweep_options,
                   workers=options.threads)
    failures = report.failures()
    document = OrderedDict([('count', report.count), ('passed', report.passed),
                            ('seed', report.seed),
                            ('minimum_margins', report.minimum_margins),
                            ('failures', [OrderedDict([('index', outcome.index),
                                                       ('seed', outcome.seed),
                                                       ('failures', outcome.failures),
                                                       ('error', outcome.error),
                                                       ('graph', outcome.graph)])
                                          for outcome in failures])])
    rows = [('graphs', report.count), ('passed', '%d/%d' % (report.passed, report.count)),
            ('seed', report.seed)]
    rows += [('min margin %s' % name, margin if isinstance(margin, Fraction) else '~%g' % margin)
             for name, margin in report.minimum_margins.items()]
    tables = [quantity_table(rows)]
    for outcome in failures:
        tables.append('# graph %d (seed %d) failed: %s\n%s'
                      % (outcome.index, outcome.seed,
                         ', '.join(outcome.failures), outcome.graph))
    emit(config, document, tables)
    return EXIT_OK if report.success else EXIT_FAILED


def do_ledger(config, options):
    report = ledger_report(read_ledger(options.file), workers=options.threads)
    document = OrderedDict([
        ('genus', report.genus), ('deg_lambda', report.deg_lambda),
        ('omega_sq', report.omega_sq), ('sum_delta', report.sum_delta),
        ('sum_epsilon', report.sum_epsilon), ('sum_phi', report.sum_phi),
        ('gross_schoen', report.gross_schoen), ('constants', report.constants),
        ('isotriviality_floor', report.floor), ('places', report.places),
        ('bounds', report.bounds), ('passed', report.passed)])
    rows = [('genus', report.genus), ('deg lambda', report.deg_lambda),
            ('omega^2', report.omega_sq), ('sum delta', report.sum_delta),
            ('sum epsilon', report.sum_epsilon), ('sum phi', report.sum_phi),
            ('gross-schoen height', report.gross_schoen),
            ('c_exact', report.constants.c_exact), ('c_round', report.constants.c_round),
            ('isotriviality floor', report.floor)]
    bounds = PrettyTable(['bound', 'threshold', 'status', 'margin'])
    bounds.align = 'l'
    for bound in report.bounds.values():
        bounds.add_row([bound.name, bound.threshold, status(bound.satisfied), bound.margin])
    emit(config, document, [quantity_table(rows), bounds])
    return EXIT_OK if report.passed else EXIT_FAILED


def do_identities(config, options):
    names = [options.name] if options.name and not options.all else list(CATALOG)
    results = verify_all(names, workers=options.threads)
    document = OrderedDict()
    table = PrettyTable(['identity', 'status', 'residual'])
    table.align = 'l'
    derivations = list()
    for result in results:
        entry = OrderedDict([('statement', result.statement), ('holds', result.holds),
                             ('lhs', result.lhs), ('rhs', result.rhs),
                             ('residual', result.residual),
                             ('specializations', result.specializations)])
        if options.show_derivation:
            entry['derivation'] = [step._asdict() for step in result.steps]
            derivations.append('# %s\n%s' % (result.name, '\n'.join(
                '  [%s] %s => %s' % step for step in result.steps)))
        document[result.name] = entry
        table.add_row([result.name, status(result.holds), result.residual.label()])
    emit(config, document, [table] + derivations)
    held = sum(1 for result in results if result.holds)
    logging.info('* %d/%d identities hold', held, len(results))
    return EXIT_OK if held == len(results) else EXIT_FAILED


def build_parser():
    """Argument parser with one sub-command per report."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-d', '--debug_level',
                        help='Verbose level (debug / info / warning / error / critical)',
                        type=str, default=LOG_LEVEL)
    common.add_argument('--json', help='Print the report as JSON', action='store_true')
    common.add_argument('--threads', help='Worker processes. Default is ${ADMLAB_THREADS}',
                        type=int, default=ADMLAB['THREADS'])

    parser = argparse.ArgumentParser(prog='admlab',
                                     description='Exact potential theory on metrized graphs')
    parser.add_argument('--version', action='version', version=admlab.__version__)
    commands = parser.add_subparsers(dest='command')
    commands.required = True

    for name, helper in (('invariants', 'Invariants of a graph with every check'),
                         ('check', 'Run the checks of a graph')):
        command = commands.add_parser(name, parents=[common], help=helper)
        command.add_argument('file', help='Graph file')
        command.add_argument('--oracle', action='store_true',
                             help='Also compare against the discrete oracle')
        command.add_argument('--segments', type=int, default=ADMLAB['SEGMENTS'],
                             help='Oracle segments per edge. Default is ${ADMLAB_SEGMENTS}')

    command = commands.add_parser('resistance', parents=[common],
                                  help='Effective resistance between two points')
    command.add_argument('file', help='Graph file')
    command.add_argument('a', help='vertex:<id> or edge:<id>@<p>/<q>')
    command.add_argument('b', help='vertex:<id> or edge:<id>@<p>/<q>')

    command = commands.add_parser('green', parents=[common],
                                  help="Canonical Green's function at a point")
    command.add_argument('file', help='Graph file')
    command.add_argument('--source', required=True, help='Source point')
    command.add_argument('--at', required=True, help='Evaluation point')

    command = commands.add_parser('oracle', parents=[common],
                                  help="Floating point Green's function on a grid")
    command.add_argument('file', help='Graph file')
    command.add_argument('--source', required=True, help='Source point')
    command.add_argument('--segments', type=int, default=ADMLAB['SEGMENTS'],
                         help='Segments per edge. Default is ${ADMLAB_SEGMENTS}')

    command = commands.add_parser('random', parents=[common],
                                  help='Check random graphs')
    command.add_argument('--count', type=int, default=100, help='Number of graphs')
    command.add_argument('--seed', type=int, default=ADMLAB['SEED'],
                         help='Master seed. Default is ${ADMLAB_SEED}')
    command.add_argument('--max-vertices', type=int, default=8)
    command.add_argument('--max-edges', type=int, default=12)
    command.add_argument('--max-genus', type=int, default=6)
    command.add_argument('--check', type=parse_checks, default=DEFAULT_CHECKS,
                         help='"all" or a comma separated list of checks')
    command.add_argument('--segments', type=int, default=ADMLAB['SEGMENTS'],
                         help='Oracle segments per edge. Default is ${ADMLAB_SEGMENTS}')

    command = commands.add_parser('ledger', parents=[common],
                                  help='Global intersection numbers of a curve ledger')
    command.add_argument('file', help='Ledger file')

    command = commands.add_parser('identities', parents=[common],
                                  help='Verify Deligne pairing identities')
    command.add_argument('name', nargs='?', help='Identity name, all when omitted')
    command.add_argument('--all', action='store_true', help='Verify the whole catalog')
    command.add_argument('--show-derivation', action='store_true',
                         help='Print every applied rewrite rule')
    return parser


HANDLERS = {'invariants': do_invariants, 'check': do_check, 'resistance': do_resistance,
            'green': do_green, 'oracle': do_oracle, 'random': do_random,
            'ledger': do_ledger, 'identities': do_identities}


def main(argv=None):
    """Run the command line.

    Parameters
    ----------
    argv : list, optional
        Arguments without the program name, ``sys.argv[1:]`` by default

    Returns
    -------
    int
        Exit code
    """
    parser = build_parser()
    try:
        options = parser.parse_args(argv)
    except SystemExit as error:
        return error.code

    logging.basicConfig(
        format='%(asctime)s %(levelname)-8s %(message)s',
        level=LEVELS.get(options.debug_level, logging.NOTSET),
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr)

    config = RunConfig(command=options.command,
                       paths=[getattr(options, 'file', None)],
                       seed=getattr(options, 'seed', ADMLAB['SEED']),
                       output='json' if options.json else 'text')
    logging.info('* running %s', config.command)
    try:
        return HANDLERS[config.command](config, options)
    except InvariantViolation as error:
        logging.error('internal invariant violated: %s', error.msg)
        emit(config, OrderedDict([('error', error.msg), ('graph', error.graph)]),
             ['error: %s' % error.msg] + ([error.graph] if error.graph else []))
        return EXIT_FAILED
    except AdmInputError as error:
        logging.error('invalid input: %s', error.msg)
        return EXIT_USAGE
    except AdmError as error:
        logging.error('%s: %s', type(error).__name__, error.msg)
        return EXIT_USAGE
    except IOError as error:
        logging.error('cannot read input: %s', error)
        return EXIT_USAGE
