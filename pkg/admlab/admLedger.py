import os
import re
import logging
from collections import namedtuple, OrderedDict
from fractions import Fraction
from admlab import file_read
from admlab.admGraph import IDENTIFIER, parse_rational, parse_graph, read_graph, serialize
from admlab.admInvariants import GraphInvariants
from admlab.admSweep import run_tasks
from admlab.admErrors import LedgerSyntaxError, GenusError, InvariantViolation

r"""Curve ledger: global intersection numbers from per-place graphs.

A ledger describes a curve of genus ``g`` over a function field by the
degree of its Hodge bundle and by the reduction graph of every place of
bad reduction, each with a positive weight.

**Ledger file format**::

    ledger g=2 deg_lambda=1
    place v1 weight=1 graph=circle.graph

The header accepts two optional keys: ``characteristic=<int>`` (default 0)
and ``isotrivial=yes|no`` (default yes). Graph paths are relative to the
ledger file.

**Assembled quantities**

    omega_sq = 12 deg_lambda - Σ_v w_v (δ(Γ_v) + ε(Γ_v))

and the bounds checked against it use ``Σ_v w_v φ(Γ_v)``.
"""

_HEADER = re.compile(r'^ledger\s+(.*)$')
_PLACE = re.compile(r'^place\s+(%s)\s+(.*)$' % IDENTIFIER)
_OPTION = re.compile(r'^([a-z_]+)=(\S+)$')

Place = namedtuple('Place', ['name', 'weight', 'graph'])
PlaceInvariants = namedtuple('PlaceInvariants', ['name', 'weight', 'delta', 'epsilon', 'phi'])
BoundResult = namedtuple('BoundResult', ['name', 'threshold', 'satisfied', 'margin'])
Bigness2Constants = namedtuple('Bigness2Constants', ['c_exact', 'c_round', 'coefficient'])


class CurveLedger(object):
    """Genus, Hodge degree and weighted reduction graphs of a curve.

    Per-place invariants are computed on first use and cached.
    """

    def __init__(self, genus, deg_lambda, places=None, characteristic=0, isotrivial=True):
        """Class Constructor.

        Parameters
        ----------
        genus : int
            Genus ``g >= 2`` of the curve
        deg_lambda : Fraction
            Degree of the Hodge bundle
        places : list of Place, optional
            Places of bad reduction
        characteristic : int, optional
            Characteristic of the base field
        isotrivial : bool, optional
            False when the curve is known to be non-isotrivial

        Raises
        ------
        GenusError
            Genus below 2, or a place graph of genus outside ``[2, g]``
        LedgerSyntaxError
            Non-positive weight or duplicated place name
        """
        if genus < 2:
            raise GenusError('ledger genus must be >= 2, got %d' % genus)
        self.genus = int(genus)
        self.deg_lambda = Fraction(deg_lambda)
        self.characteristic = int(characteristic)
        self.isotrivial = bool(isotrivial)
        self.places = tuple(places or ())
        names = set()
        for place in self.places:
            if place.name in names:
                raise LedgerSyntaxError('duplicate place %s' % place.name)
            names.add(place.name)
            if place.weight <= 0:
                raise LedgerSyntaxError('place %s has non-positive weight %s'
                                        % (place.name, place.weight))
            place_genus = place.graph.genus()
            if place_genus > self.genus or place_genus < 2:
                raise GenusError('place %s has graph genus %d outside [2, %d]'
                                 % (place.name, place_genus, self.genus))
            if place_genus < self.genus:
                logging.warning('place %s has graph genus %d below ledger genus %d',
                                place.name, place_genus, self.genus)
        self._invariants = None

    def with_place(self, place):
        """New ledger with one more place."""
        return CurveLedger(self.genus, self.deg_lambda, self.places + (place,),
                           self.characteristic, self.isotrivial)

    def place_invariants(self, workers=1):
        """Weighted-free invariants of every place, in ledger order."""
        if self._invariants is None:
            logging.info('* computing invariants of %d places', len(self.places))
            values = run_tasks(_place_task, [serialize(place.graph) for place in self.places],
                               workers=workers)
            self._invariants = [PlaceInvariants(place.name, place.weight, *value)
                                for place, value in zip(self.places, values)]
        return self._invariants

    def weighted_sum(self, field):
        return sum((getattr(item, field) * item.weight for item in self.place_invariants()),
                   Fraction(0))


def _place_task(graph_text):
    invariants = GraphInvariants(parse_graph(graph_text))
    return invariants.total_length(), invariants.epsilon(), invariants.phi()


def _parse_options(text, number):
    options = dict()
    for token in text.split():
        match = _OPTION.match(token)
        if not match:
            raise LedgerSyntaxError('cannot parse option "%s"' % token, line=number)
        options[match.group(1)] = match.group(2)
    return options


def parse_ledger(text, base_dir='.'):
    r"""Parse a ledger document.

    Parameters
    ----------
    text : str
        Ledger document
    base_dir : str, optional
        Directory graph paths are relative to

    Returns
    -------
    CurveLedger

    Raises
    ------
    LedgerSyntaxError
        Malformed line, missing header or missing key, with its line number
    """
    header = None
    places = list()
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        match = _HEADER.match(line)
        if match:
            if header is not None:
                raise LedgerSyntaxError('duplicate ledger header', line=number)
            header = _parse_options(match.group(1), number)
            header['line'] = number
            continue
        match = _PLACE.match(line)
        if match:
            if header is None:
                raise LedgerSyntaxError('place before ledger header', line=number)
            options = _parse_options(match.group(2), number)
            if set(options) != {'weight', 'graph'}:
                raise LedgerSyntaxError('place needs weight= and graph=', line=number)
            try:
                weight = parse_rational(options['weight'])
            except ValueError as error:
                raise LedgerSyntaxError(str(error), line=number)
            graph = read_graph(os.path.join(base_dir, options['graph']))
            places.append(Place(match.group(1), weight, graph))
            continue
        raise LedgerSyntaxError('cannot parse "%s"' % line, line=number)
    if header is None:
        raise LedgerSyntaxError('missing ledger header')
    number = header.pop('line')
    if not {'g', 'deg_lambda'} <= set(header) or \
            not set(header) <= {'g', 'deg_lambda', 'characteristic', 'isotrivial'}:
        raise LedgerSyntaxError('header needs g= and deg_lambda=', line=number)
    try:
        genus = int(header['g'])
        deg_lambda = parse_rational(header['deg_lambda'])
        characteristic = int(header.get('characteristic', 0))
    except ValueError as error:
        raise LedgerSyntaxError(str(error), line=number)
    if header.get('isotrivial', 'yes') not in ('yes', 'no'):
        raise LedgerSyntaxError('isotrivial must be yes or no', line=number)
    return CurveLedger(genus, deg_lambda, places, characteristic,
                       isotrivial=header.get('isotrivial', 'yes') == 'yes')


def read_ledger(path):
    """Read a ledger file; graph paths resolve against its directory."""
    return parse_ledger(file_read(path), base_dir=os.path.dirname(os.path.abspath(path)))


def omega_sq(ledger):
    """Admissible self-intersection ``12 deg_lambda - Σ w (δ + ε)``.

    Example
    -------

        >>> omega_sq(CurveLedger(2, 1))
        Fraction(12, 1)
    """
    return (12 * ledger.deg_lambda - ledger.weighted_sum('delta')
            - ledger.weighted_sum('epsilon'))


def dejong_bound(ledger):
    """Check ``omega_sq >= 2 / (3g - 1) · Σ w φ``.

    Returns
    -------
    tuple
        ``(lower_bound, satisfied, margin)``
    """
    bound = Fraction(2, 3 * ledger.genus - 1) * ledger.weighted_sum('phi')
    margin = omega_sq(ledger) - bound
    return bound, margin >= 0, margin


def faltings_coefficient(genus):
    return Fraction(3, 5 * (2 * genus - 1) * (3 * genus - 1))


def faltings_bound(ledger):
    """Check ``omega_sq >= 3 / (5 (2g - 1)(3g - 1)) · deg_lambda``.

    Returns
    -------
    tuple
        ``(satisfied, margin)``
    """
    margin = omega_sq(ledger) - faltings_coefficient(ledger.genus) * ledger.deg_lambda
    return margin >= 0, margin


def faltings_floor_bound(ledger):
    """Strict bound for non-isotrivial curves.

    ``omega_sq > 3 / (5 (2g - 1)(3g - 1) 4^{2g}) · max(deg_lambda, 1)``

    Returns
    -------
    tuple
        ``(threshold, satisfied, margin)``
    """
    threshold = (faltings_coefficient(ledger.genus) / 4 ** (2 * ledger.genus)
                 * max(ledger.deg_lambda, Fraction(1)))
    margin = omega_sq(ledger) - threshold
    return threshold, margin > 0, margin


def gross_schoen_height(ledger):
    """Height of the Gross-Schoen cycle ``(2g+1)/(2g-2) omega_sq - Σ w φ``."""
    genus = ledger.genus
    return (Fraction(2 * genus + 1, 2 * genus - 2) * omega_sq(ledger)
            - ledger.weighted_sum('phi'))


def bigness2_constants(genus):
    """Constants of the bigness estimate.

    ``c_exact = 1 + 39 (3g - 1)(2g - 1) / 2``, ``c_round = 20 (3g - 1)(2g - 1)``
    and ``coefficient = 12 / c_round``.

    Raises
    ------
    GenusError
        Genus below 2
    InvariantViolation
        ``c_exact > c_round``
    """
    if genus < 2:
        raise GenusError('constants need genus >= 2, got %d' % genus)
    product = (3 * genus - 1) * (2 * genus - 1)
    c_exact = 1 + Fraction(39, 2) * product
    c_round = Fraction(20 * product)
    if c_exact > c_round:
        raise InvariantViolation('c_exact %s exceeds c_round %s' % (c_exact, c_round))
    return Bigness2Constants(c_exact, c_round, 12 / c_round)


def isotriviality_floor(genus, characteristic=0):
    """``3^(-4g²)``, or ``4^(-4g²)`` in characteristic 3."""
    base = 4 if characteristic == 3 else 3
    return Fraction(1, base ** (4 * genus * genus))


class LedgerReport(object):
    """Global quantities of a ledger with every bound and its margin.

    Attributes
    ----------
    omega_sq, sum_delta, sum_epsilon, sum_phi : Fraction
    gross_schoen : Fraction
    constants : Bigness2Constants
    floor : Fraction
        Isotriviality floor for the ledger genus and characteristic
    places : list of PlaceInvariants
    bounds : OrderedDict
        bound name -> BoundResult
    """

    def __init__(self, ledger):
        self.genus = ledger.genus
        self.deg_lambda = ledger.deg_lambda
        self.places = ledger.place_invariants()
        self.sum_delta = ledger.weighted_sum('delta')
        self.sum_epsilon = ledger.weighted_sum('epsilon')
        self.sum_phi = ledger.weighted_sum('phi')
        self.omega_sq = omega_sq(ledger)
        if self.omega_sq + self.sum_delta + self.sum_epsilon != 12 * self.deg_lambda:
            raise InvariantViolation('ledger does not add up to 12 deg_lambda')
        self.gross_schoen = gross_schoen_height(ledger)
        self.constants = bigness2_constants(ledger.genus)
        self.floor = isotriviality_floor(ledger.genus, ledger.characteristic)
        self.bounds = OrderedDict()
        bound, satisfied, margin = dejong_bound(ledger)
        self.bounds['dejong'] = BoundResult('dejong', bound, satisfied, margin)
        satisfied, margin = faltings_bound(ledger)
        self.bounds['faltings'] = BoundResult(
            'faltings', faltings_coefficient(ledger.genus) * ledger.deg_lambda,
            satisfied, margin)
        if not ledger.isotrivial:
            threshold, satisfied, margin = faltings_floor_bound(ledger)
            self.bounds['faltings_floor'] = BoundResult('faltings_floor', threshold,
                                                        satisfied, margin)

    @property
    def passed(self):
        return all(bound.satisfied for bound in self.bounds.values())


def ledger_report(ledger, workers=1):
    """Assemble a LedgerReport, computing place invariants with ``workers`` processes."""
    ledger.place_invariants(workers=workers)
    return LedgerReport(ledger)
