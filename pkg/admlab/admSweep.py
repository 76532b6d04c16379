import random
import logging
import multiprocessing as mp
from collections import namedtuple, OrderedDict
from fractions import Fraction
from admlab import ADMLAB
from admlab.admGraph import Vertex, Edge, MetrizedGraph, parse_graph, serialize
from admlab.admInvariants import run_checks
from admlab.admErrors import AdmError

"""Random metrized graphs and parallel property sweeps.

Every graph of a sweep is generated from its own 64-bit seed drawn from a
master ``random.Random(seed)``, so a sweep is fully determined by its seed
and options whatever the number of worker processes.
"""

SweepOptions = namedtuple('SweepOptions', ['max_vertices', 'max_edges', 'max_genus',
                                           'max_numerator', 'max_denominator',
                                           'checks', 'segments'])
GraphOutcome = namedtuple('GraphOutcome', ['index', 'seed', 'graph', 'passed',
                                           'failures', 'margins', 'error'])


def default_options(**overrides):
    options = SweepOptions(max_vertices=8, max_edges=12, max_genus=6, max_numerator=16,
                           max_denominator=ADMLAB['MAX_DENOMINATOR'], checks=None,
                           segments=None)
    return options._replace(**overrides)


def run_tasks(function, arguments, workers=1):
    """Map ``function`` over ``arguments``, in worker processes when ``workers > 1``.

    Results come back in argument order.
    """
    arguments = list(arguments)
    workers = max(1, min(int(workers), len(arguments)))
    if workers == 1:
        return [function(argument) for argument in arguments]
    logging.debug(' -> dispatching %d tasks to %d workers', len(arguments), workers)
    pool = mp.Pool(workers)
    try:
        return pool.map(function, arguments)
    finally:
        pool.close()
        pool.join()


def uniform_spanning_tree(rng, count):
    """Edges of a uniform spanning tree of the complete graph on ``count`` nodes.

    Aldous-Broder random walk: the edge used to enter a node for the first
    time joins the tree.
    """
    current = rng.randrange(count)
    visited = {current}
    edges = list()
    while len(visited) < count:
        following = rng.randrange(count - 1)
        if following >= current:
            following += 1
        if following not in visited:
            visited.add(following)
            edges.append((current, following))
        current = following
    return edges


def pair_valences(count, pairs):
    """Valence of every node of an edge list, loops counted twice."""
    valences = [0] * count
    for start, end in pairs:
        valences[start] += 1
        valences[end] += 1
    return valences


def random_graph(rng, max_vertices=8, max_edges=12, max_genus=6, max_numerator=16,
                 max_denominator=8):
    """Connected random metrized graph of genus in ``[2, max_genus]``.

    Vertex count, target genus, extra edges (loops and parallel edges
    included) and vertex genera are drawn from ``rng``. Lengths are
    ``p/q`` with ``1 <= p <= max_numerator`` and ``1 <= q <= max_denominator``.

    Every vertex of valence below 2 gets genus first, so the canonical
    divisor has no negative coefficient. Draws where the spare genus cannot
    cover those vertices are thrown away and redrawn.

    Parameters
    ----------
    rng : random.Random
        Source of randomness

    Returns
    -------
    MetrizedGraph
    """
    while True:
        count = rng.randint(1, max(1, min(max_vertices, max_edges + 1)))
        target = rng.randint(2, max(2, max_genus))
        pairs = uniform_spanning_tree(rng, count)
        extra = rng.randint(0, min(max_edges - len(pairs), target))
        for _ in range(extra):
            pairs.append((rng.randrange(count), rng.randrange(count)))
        needy = [i for i, valence in enumerate(pair_valences(count, pairs)) if valence < 2]
        if len(needy) <= target - extra:
            break
        logging.debug(' -> redraw: %d vertices of valence < 2 for spare genus %d',
                      len(needy), target - extra)
    genera = [0] * count
    for i in needy:
        genera[i] = 1
    for _ in range(target - extra - len(needy)):
        genera[rng.randrange(count)] += 1
    vertices = [Vertex('v%d' % i, genera[i]) for i in range(count)]
    edges = [Edge('e%d' % i, 'v%d' % start, 'v%d' % end,
                  Fraction(rng.randint(1, max_numerator), rng.randint(1, max_denominator)))
             for i, (start, end) in enumerate(pairs)]
    return MetrizedGraph(vertices, edges)


def check_task(task):
    """Generate one graph from its seed and run the selected checks on it."""
    index, seed, options = task
    graph = random_graph(random.Random(seed), options.max_vertices, options.max_edges,
                         options.max_genus, options.max_numerator, options.max_denominator)
    text = serialize(graph)
    try:
        report = run_checks(graph, checks=options.checks, segments=options.segments)
    except AdmError as error:
        return GraphOutcome(index, seed, text, False, ['error'], {}, error.msg)
    margins = OrderedDict((name, check.margin) for name, check in report.checks.items())
    return GraphOutcome(index, seed, text, report.passed, report.failures(), margins, None)


class SweepReport(object):
    """Aggregated outcome of a sweep.

    Attributes
    ----------
    count, passed : int
    outcomes : list of GraphOutcome
        In task order
    minimum_margins : OrderedDict
        check name -> smallest margin seen
    """

    def __init__(self, seed, outcomes):
        self.seed = seed
        self.outcomes = sorted(outcomes, key=lambda outcome: outcome.index)
        self.count = len(self.outcomes)
        self.passed = sum(1 for outcome in self.outcomes if outcome.passed)
        self.minimum_margins = OrderedDict()
        for outcome in self.outcomes:
            for name, margin in outcome.margins.items():
                if name not in self.minimum_margins or margin < self.minimum_margins[name]:
                    self.minimum_margins[name] = margin

    def failures(self):
        return [outcome for outcome in self.outcomes if not outcome.passed]

    @property
    def success(self):
        return self.passed == self.count


def sweep(count, seed=None, options=None, workers=None):
    """Check ``count`` random graphs.

    Parameters
    ----------
    count : int
        Number of graphs
    seed : int, optional
        Master seed, ``ADMLAB['SEED']`` by default
    options : SweepOptions, optional
        Generator bounds and check selection
    workers : int, optional
        Worker processes, ``ADMLAB['THREADS']`` by default

    Returns
    -------
    SweepReport
    """
    seed = ADMLAB['SEED'] if seed is None else seed
    options = options or default_options()
    workers = ADMLAB['THREADS'] if workers is None else workers
    master = random.Random(seed)
    tasks = [(index, master.getrandbits(64), options) for index in range(count)]
    logging.info('* sweeping %d random graphs with seed %d', count, seed)
    report = SweepReport(seed, run_tasks(check_task, tasks, workers=workers))
    logging.info('* %d/%d graphs passed', report.passed, report.count)
    return report


def replay(outcome):
    """Graph of a sweep outcome, parsed back from its embedded text."""
    return parse_graph(outcome.graph)
