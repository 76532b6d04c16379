import re
import logging
import itertools
from collections import namedtuple, OrderedDict
from fractions import Fraction
import sympy
from admlab.admSweep import run_tasks
from admlab.admErrors import ArityMismatchError, UnknownAtomError, UnknownIdentityError

r"""Rewriting engine for Deligne pairing identities.

Expressions live on three spaces: the base ``S``, the curve ``X`` over
``S`` and the fibre product ``XX = X ×_S X``. An expression is a formal
linear combination of terms with coefficients in ``ℚ[g, d]``, held as
``sympy.Poly`` over ``QQ``.

**Term formers**

    Atom(name, space)       omega, alpha, O(x) on X; O(Delta) on XX;
                            lambda, Delta_S, E, Phi and slack atoms on S
    Pull(map, term)         pi: S -> X, p1 and p2: X -> XX
    Section(map, term)      x: X -> S (the section), diag: XX -> X
    Pair(push, args)        pi: <a,b> on X pushed to S,
                            pipi: <a,b,c> on XX pushed to S,
                            p1: <a,b> on XX pushed to X
    Theta(kind, ...)        i_alpha^*Theta on X, j^*Theta on XX
    IotaTheta(M)            iota_M^*Theta on S

``normalize`` rewrites an expression to a combination of base classes by a
fixed list of rules; every applied rule is recorded as a ``Step``.

Slack atoms ``nef[k]`` and ``eff[k]`` stand for classes known to be non
negative. An identity holds when ``lhs - rhs - Σ m_i rel_i`` normalizes to
a combination of slack atoms whose coefficients are non negative for
``g`` in 2..10 and ``d`` in 1..5.
"""

G, D = sympy.symbols('g d')

SPACES = ('S', 'X', 'XX')
PULL_MAPS = {'pi': ('S', 'X'), 'p1': ('X', 'XX'), 'p2': ('X', 'XX')}
SECTION_MAPS = {'x': ('X', 'S'), 'diag': ('XX', 'X')}
PUSHES = {'pi': ('X', 'S', 2), 'pipi': ('XX', 'S', 3), 'p1': ('XX', 'X', 2)}

# name -> (space, fibre degree)
ATOMS = {
    'omega': ('X', 2 * G - 2),
    'alpha': ('X', D),
    'O(x)': ('X', 1),
    'O(Delta)': ('XX', None),
    'lambda': ('S', None),
    'Delta_S': ('S', None),
    'E': ('S', None),
    'Phi': ('S', None),
}
SLACK = re.compile(r'^(nef|eff)\[[A-Za-z0-9_]+\]$')

SPECIALIZE_G = range(2, 11)
SPECIALIZE_D = range(1, 6)


def poly_gd(value):
    """Coerce an int, Fraction, sympy expression or Poly to a Poly in g, d over QQ."""
    if isinstance(value, sympy.Poly):
        return value
    if isinstance(value, Fraction):
        value = sympy.Rational(value.numerator, value.denominator)
    return sympy.Poly(value, G, D, domain='QQ')


def poly_value(poly, g, d=1):
    """Exact value of a Poly at integers ``g`` and ``d``."""
    value = sympy.Rational(poly.as_expr().subs({G: g, D: d}))
    return Fraction(int(value.p), int(value.q))


ZERO = poly_gd(0)


class Atom(namedtuple('Atom', ['name', 'space'])):
    __slots__ = ()

    def label(self):
        return self.name


class Pull(namedtuple('Pull', ['map', 'inner'])):
    __slots__ = ()

    @property
    def space(self):
        return PULL_MAPS[self.map][1]

    def label(self):
        return '%s^*%s' % (self.map, self.inner.label())


class Section(namedtuple('Section', ['map', 'inner'])):
    __slots__ = ()

    @property
    def space(self):
        return SECTION_MAPS[self.map][1]

    def label(self):
        name = 'Delta' if self.map == 'diag' else self.map
        return '%s^*%s' % (name, self.inner.label())


class Pair(namedtuple('Pair', ['push', 'args'])):
    __slots__ = ()

    @property
    def space(self):
        return PUSHES[self.push][1]

    def label(self):
        inside = '<%s>' % ','.join(arg.label() for arg in self.args)
        return 'p1_*' + inside if self.push == 'p1' else inside


class Theta(namedtuple('Theta', ['kind', 'alpha', 'degree'])):
    __slots__ = ()

    @property
    def space(self):
        return 'X' if self.kind == 'i' else 'XX'

    def label(self):
        if self.kind == 'j':
            return 'j^*Theta'
        return 'i^*Theta[%s;%s]' % (self.alpha.label(), self.degree.as_expr())


class IotaTheta(namedtuple('IotaTheta', ['divisor'])):
    __slots__ = ()

    space = 'S'

    def label(self):
        return 'iota^*Theta[%s]' % self.divisor.label()


Step = namedtuple('Step', ['rule', 'before', 'after'])


def _key(term):
    return term.label()


def _format_coefficient(poly):
    text = str(poly.as_expr())
    return text if re.match(r'^-?[A-Za-z0-9_/*^]+$', text) else '(%s)' % text


class PicExpr(object):
    """Formal combination of terms with ``ℚ[g, d]`` coefficients.

    Zero coefficients are dropped; all terms share one space. The zero
    expression has space ``None`` and combines with any other.

    Example
    -------

        >>> expr = pair('pi', OMEGA, OMEGA) * (12 * G - 4) - atom('Phi') * 8
        >>> expr.label()
        '(12*g - 4)*<omega,omega> + -8*Phi'
    """

    def __init__(self, terms=None):
        self._terms = dict()
        self._space = None
        for term, coefficient in (terms or {}).items():
            coefficient = poly_gd(coefficient)
            if coefficient.is_zero:
                continue
            if self._space is None:
                self._space = term.space
            elif term.space != self._space:
                raise ArityMismatchError('cannot combine terms on %s and %s'
                                         % (self._space, term.space))
            self._terms[term] = coefficient

    @classmethod
    def of(cls, term):
        return cls({term: 1})

    @property
    def space(self):
        return self._space

    def terms(self):
        """``(term, coefficient)`` pairs sorted by label."""
        return sorted(self._terms.items(), key=lambda item: _key(item[0]))

    def coefficient(self, term):
        if isinstance(term, PicExpr):
            (term, _), = term.terms()
        return self._terms.get(term, ZERO)

    def is_zero(self):
        return not self._terms

    def label(self):
        if not self._terms:
            return '0'
        parts = list()
        for term, coefficient in self.terms():
            if coefficient == poly_gd(1):
                parts.append(term.label())
            elif coefficient == poly_gd(-1):
                parts.append('-' + term.label())
            else:
                parts.append('%s*%s' % (_format_coefficient(coefficient), term.label()))
        return ' + '.join(parts)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, PicExpr):
            return NotImplemented
        if self._space is not None and other._space is not None \
                and self._space != other._space:
            raise ArityMismatchError('cannot add expressions on %s and %s'
                                     % (self._space, other._space))
        terms = dict(self._terms)
        for term, coefficient in other._terms.items():
            terms[term] = terms.get(term, ZERO) + coefficient
        return PicExpr(terms)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, factor):
        if isinstance(factor, PicExpr):
            return NotImplemented
        factor = poly_gd(factor)
        return PicExpr({term: coefficient * factor for term, coefficient in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PicExpr):
            return NotImplemented
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(frozenset((term, tuple(coefficient.terms()))
                              for term, coefficient in self._terms.items()))

    def __repr__(self):
        return 'PicExpr(%s)' % self.label()


def atom(name):
    """Expression made of one registered atom or slack atom.

    Raises
    ------
    UnknownAtomError
        Name is neither registered nor a ``nef[..]`` / ``eff[..]`` slack
    """
    if name in ATOMS:
        return PicExpr.of(Atom(name, ATOMS[name][0]))
    if SLACK.match(name):
        return PicExpr.of(Atom(name, 'S'))
    raise UnknownAtomError('unknown atom %s' % name)


def slack(kind, index):
    return atom('%s[%s]' % (kind, index))


def is_slack(term):
    return isinstance(term, Atom) and SLACK.match(term.name) is not None


def _check_space(expr, expected, what):
    if expr.space is not None and expr.space != expected:
        raise ArityMismatchError('%s expects an expression on %s, got %s'
                                 % (what, expected, expr.space))


def _pull_term(map_name, term):
    if map_name == 'p2' and isinstance(term, Pull) and term.map == 'pi':
        map_name = 'p1'
    return Pull(map_name, term)


def pull(map_name, expr):
    """Pull back along ``pi``, ``p1`` or ``p2``; linear in ``expr``."""
    if map_name not in PULL_MAPS:
        raise ArityMismatchError('unknown pull-back map %s' % map_name)
    _check_space(expr, PULL_MAPS[map_name][0], 'pull-back %s' % map_name)
    result = PicExpr()
    for term, coefficient in expr.terms():
        result += PicExpr.of(_pull_term(map_name, term)) * coefficient
    return result


def section(map_name, expr):
    """Restrict along the section ``x`` or the diagonal ``diag``."""
    if map_name not in SECTION_MAPS:
        raise ArityMismatchError('unknown section %s' % map_name)
    _check_space(expr, SECTION_MAPS[map_name][0], 'section %s' % map_name)
    return PicExpr({Section(map_name, term): coefficient for term, coefficient in expr.terms()})


def pair(push, *exprs):
    """Deligne pairing, expanded multilinearly with sorted arguments.

    Raises
    ------
    ArityMismatchError
        Wrong number of arguments for ``push`` or arguments on the wrong space
    """
    if push not in PUSHES:
        raise ArityMismatchError('unknown push-forward %s' % push)
    source, _, arity = PUSHES[push]
    if len(exprs) != arity:
        raise ArityMismatchError('pairing %s takes %d arguments, got %d'
                                 % (push, arity, len(exprs)))
    for expr in exprs:
        _check_space(expr, source, 'pairing %s' % push)
    terms = dict()
    for combination in itertools.product(*[expr.terms() for expr in exprs]):
        coefficient = poly_gd(1)
        for _, factor in combination:
            coefficient = coefficient * factor
        key = Pair(push, tuple(sorted((term for term, _ in combination), key=_key)))
        terms[key] = terms.get(key, ZERO) + coefficient
    return PicExpr(terms)


def i_theta(alpha, degree):
    """``i_alpha^*Theta`` for a class ``alpha`` of fibre degree ``degree``."""
    _check_space(alpha, 'X', 'i^*Theta')
    return PicExpr.of(Theta('i', alpha, poly_gd(degree)))


def j_theta():
    return PicExpr.of(Theta('j', None, None))


def iota_theta(divisor):
    _check_space(divisor, 'X', 'iota^*Theta')
    return PicExpr.of(IotaTheta(divisor))


OMEGA = atom('omega')
ALPHA = atom('alpha')
O_X = atom('O(x)')
O_DELTA = atom('O(Delta)')
OMEGA1 = pull('p1', OMEGA)
OMEGA2 = pull('p2', OMEGA)


def fibre_degree(term):
    """Fibre degree of a normal term on X."""
    if isinstance(term, Atom) and term.space == 'X':
        return poly_gd(ATOMS[term.name][1])
    if isinstance(term, Pull) and term.map == 'pi':
        return ZERO
    raise ArityMismatchError('no fibre degree for %s' % term.label())


def expr_degree(expr):
    return sum((fibre_degree(term) * coefficient for term, coefficient in expr.terms()), ZERO)


def first_projection_degree(term):
    """Degree along the fibres of ``p1`` of a normal term on XX."""
    if isinstance(term, Pull) and term.map == 'p1':
        return ZERO
    if isinstance(term, Pull) and term.map == 'p2':
        return fibre_degree(term.inner)
    if isinstance(term, Atom) and term.name == 'O(Delta)':
        return poly_gd(1)
    raise ArityMismatchError('no degree over p1 for %s' % term.label())


def _swap(term):
    if isinstance(term, Pull) and term.map in ('p1', 'p2'):
        return _pull_term('p2' if term.map == 'p1' else 'p1', term.inner)
    return term


class Normalizer(object):
    """Rewrite expressions to base classes, recording each applied rule.

    Results are cached per term; a rule is logged the first time it fires
    on a given term.
    """

    def __init__(self):
        self.steps = list()
        self._cache = dict()

    def _log(self, rule, before, after):
        self.steps.append(Step(rule, before.label(), after.label()))
        logging.debug(' -> %s: %s => %s', rule, before.label(), after.label())

    def normalize(self, expr):
        result = PicExpr()
        for term, coefficient in expr.terms():
            result += self.term(term) * coefficient
        return result

    def term(self, term):
        if term not in self._cache:
            self._cache[term] = getattr(self, '_' + type(term).__name__.lower())(term)
        return self._cache[term]

    def _atom(self, term):
        return PicExpr.of(term)

    def _theta(self, term):
        if term.kind == 'i':
            alpha, degree = term.alpha, term.degree
            expansion = (OMEGA * degree * degree + alpha * (2 * degree)
                         - pull('pi', pair('pi', alpha, alpha)))
        else:
            expansion = O_DELTA * 2 + OMEGA1 + OMEGA2
        self._log('theta-definition', term, expansion)
        return self.normalize(expansion)

    def _pull(self, term):
        return pull(term.map, self.term(term.inner))

    def _section(self, term):
        result = PicExpr()
        for inner, coefficient in self.term(term.inner).terms():
            result += self._restrict(term.map, inner) * coefficient
        return result

    def _restrict(self, map_name, term):
        if map_name == 'x':
            if isinstance(term, Pull) and term.map == 'pi':
                return self._rewrite('section-of-pullback', Section('x', term),
                                     PicExpr.of(term.inner))
            if isinstance(term, Atom) and term.name == 'O(x)':
                return self._rewrite('adjunction-self-intersection', Section('x', term),
                                     -section('x', OMEGA))
        else:
            if isinstance(term, Pull) and term.map in ('p1', 'p2'):
                return self._rewrite('diagonal-restriction', Section('diag', term),
                                     PicExpr.of(term.inner))
            if isinstance(term, Atom) and term.name == 'O(Delta)':
                return self._rewrite('diagonal-self-intersection', Section('diag', term),
                                     -OMEGA)
        return PicExpr.of(Section(map_name, term))

    def _rewrite(self, rule, before, after):
        self._log(rule, before, after)
        return self.normalize(after)

    def _pair(self, term):
        arguments = [self.term(arg) for arg in term.args]
        result = PicExpr()
        for expanded, coefficient in pair(term.push, *arguments).terms():
            result += self._reduce(expanded) * coefficient
        return result

    def _reduce(self, term):
        args = term.args
        if term.push == 'pi':
            for i, arg in enumerate(args):
                if isinstance(arg, Pull) and arg.map == 'pi':
                    other = args[1 - i]
                    return self._rewrite('projection-formula', term,
                                         PicExpr.of(arg.inner) * fibre_degree(other))
            for i, arg in enumerate(args):
                if isinstance(arg, Atom) and arg.name == 'O(x)':
                    return self._rewrite('adjunction', term,
                                         section('x', PicExpr.of(args[1 - i])))
        elif term.push == 'p1':
            for i, arg in enumerate(args):
                if isinstance(arg, Pull) and arg.map == 'p1':
                    other = args[1 - i]
                    return self._rewrite('first-projection-degree', term,
                                         PicExpr.of(arg.inner) * first_projection_degree(other))
            if all(isinstance(arg, Pull) and arg.map == 'p2' for arg in args):
                inner = pair('pi', PicExpr.of(args[0].inner), PicExpr.of(args[1].inner))
                return self._rewrite('base-change', term, pull('pi', inner))
            for i, arg in enumerate(args):
                if isinstance(arg, Atom) and arg.name == 'O(Delta)':
                    return self._rewrite('diagonal-adjunction', term,
                                         section('diag', PicExpr.of(args[1 - i])))
        elif term.push == 'pipi':
            for i, arg in enumerate(args):
                if isinstance(arg, Pull) and arg.map == 'p1':
                    rest = [PicExpr.of(other) for j, other in enumerate(args) if j != i]
                    staged = pair('pi', PicExpr.of(arg.inner), pair('p1', *rest))
                    return self._rewrite('push-forward-in-stages', term, staged)
            if any(isinstance(arg, Pull) and arg.map == 'p2' for arg in args):
                swapped = pair('pipi', *[PicExpr.of(_swap(arg)) for arg in args])
                return self._rewrite('factor-swap', term, swapped)
            if all(isinstance(arg, Atom) and arg.name == 'O(Delta)' for arg in args):
                return self._rewrite('diagonal-triple-pairing', term,
                                     pair('pi', OMEGA, OMEGA) - atom('Phi'))
        return PicExpr.of(term)

    def _iotatheta(self, term):
        divisor = self.normalize(term.divisor)
        if expr_degree(divisor).is_zero:
            return self._rewrite('hodge-index', term, -pair('pi', divisor, divisor))
        return PicExpr.of(IotaTheta(divisor))


def normalize(expr, steps=None):
    """Normal form of an expression: a combination of base classes.

    Parameters
    ----------
    expr : PicExpr
        Expression to rewrite
    steps : list, optional
        Receives the applied rules as ``Step`` tuples

    Returns
    -------
    PicExpr

    Example
    -------

        >>> normalize(pair('pipi', OMEGA1, OMEGA1, OMEGA2)).label()
        '(2*g - 2)*<omega,omega>'
    """
    normalizer = Normalizer()
    result = normalizer.normalize(expr)
    if steps is not None:
        steps.extend(normalizer.steps)
    return result


def expand(expr):
    """Multilinear expansion as an ordered ``label -> coefficient`` map.

    Pairings expand on construction; this exposes the resulting patterns
    before any rewrite rule fires.
    """
    return OrderedDict((term.label(), coefficient) for term, coefficient in expr.terms())


def _substitute_term(term, atoms, degree):
    if isinstance(term, Atom):
        if term.name in atoms:
            replacement = atoms[term.name]
            _check_space(replacement, term.space, 'substitution of %s' % term.name)
            return replacement
        return PicExpr.of(term)
    if isinstance(term, Pull):
        return pull(term.map, _substitute_term(term.inner, atoms, degree))
    if isinstance(term, Section):
        return section(term.map, _substitute_term(term.inner, atoms, degree))
    if isinstance(term, Pair):
        return pair(term.push, *[_substitute_term(arg, atoms, degree) for arg in term.args])
    if isinstance(term, Theta):
        if term.kind == 'j':
            return PicExpr.of(term)
        return i_theta(_substitute(term.alpha, atoms, degree),
                       _substitute_poly(term.degree, degree))
    return iota_theta(_substitute(term.divisor, atoms, degree))


def _substitute_poly(poly, degree):
    if degree is None:
        return poly
    return poly_gd(poly.as_expr().subs(D, poly_gd(degree).as_expr()))


def _substitute(expr, atoms, degree):
    result = PicExpr()
    for term, coefficient in expr.terms():
        result += _substitute_term(term, atoms, degree) * _substitute_poly(coefficient, degree)
    return result


def substitute(expr, atoms=None, degree=None, steps=None):
    """Replace atoms by expressions and ``d`` by a polynomial, then normalize.

    Parameters
    ----------
    expr : PicExpr
    atoms : dict, optional
        atom name -> PicExpr on the same space
    degree : optional
        Polynomial in ``g`` (and ``d``) replacing ``d``
    """
    return normalize(_substitute(expr, atoms or {}, degree), steps=steps)


Identity = namedtuple('Identity', ['name', 'statement', 'lhs', 'rhs', 'relations'])
IdentityResult = namedtuple('IdentityResult', ['name', 'statement', 'holds', 'lhs', 'rhs',
                                               'residual', 'steps', 'specializations'])


def _pairing(a, b):
    return pair('pi', a, b)


def _iso5_1_to_iso3_1():
    lhs = i_theta(ALPHA, D)
    return Identity('iso5_1_to_iso3_1',
                    'i_alpha^*Theta with alpha = omega, d = 2g-2 is 4g(g-1) omega - pi^*<omega,omega>',
                    substitute(lhs, {'alpha': OMEGA}, 2 * G - 2),
                    OMEGA * (4 * G * (G - 1)) - pull('pi', _pairing(OMEGA, OMEGA)), [])


def _square_of_theta():
    theta = i_theta(ALPHA, D)
    return _pairing(theta, theta)


def _iso5_2_first():
    rhs = (_pairing(OMEGA, OMEGA) * D ** 4 + _pairing(OMEGA, ALPHA) * (4 * D ** 3)
           - _pairing(ALPHA, ALPHA) * ((4 * G - 4) * D ** 2))
    return Identity('iso5_2_first',
                    '<i^*Theta,i^*Theta> = d^4 <omega,omega> + 4d^3 <omega,alpha>'
                    ' - (4g-4) d^2 <alpha,alpha>',
                    _square_of_theta(), rhs, [])


def _iso5_2_second():
    divisor = ALPHA * (2 * G - 2) - OMEGA * D
    return Identity('iso5_2_second',
                    '(g-1) <i^*Theta,i^*Theta> = g d^4 <omega,omega> + d^2 iota_M^*Theta'
                    ' with M = (2g-2) alpha - d omega',
                    _square_of_theta() * (G - 1),
                    _pairing(OMEGA, OMEGA) * (G * D ** 4) + iota_theta(divisor) * D ** 2, [])


def _iso5_3():
    theta = i_theta(O_X, 1)
    return Identity('iso5_3',
                    '<i^*Theta,i^*Theta> with alpha = O(x), d = 1 is <omega,omega> + 4g x^*omega',
                    _pairing(theta, theta),
                    _pairing(OMEGA, OMEGA) + section('x', OMEGA) * (4 * G), [])


def _omega_theta():
    return i_theta(OMEGA, 2 * G - 2)


def _iso3_1_pairing():
    theta = _omega_theta()
    return Identity('iso3_1_pairing',
                    '<i_omega^*Theta,i_omega^*Theta> = 16g(g-1)^3 <omega,omega>',
                    _pairing(theta, theta),
                    _pairing(OMEGA, OMEGA) * (16 * G * (G - 1) ** 3), [])


def _iso3_1_nef():
    theta = _omega_theta()
    return Identity('iso3_1_nef',
                    '64g^2(g-1)^4 omega = 16g(g-1)^3 i_omega^*Theta'
                    ' + pi^*<i_omega^*Theta,i_omega^*Theta>',
                    OMEGA * (64 * G ** 2 * (G - 1) ** 4),
                    theta * (16 * G * (G - 1) ** 3) + pull('pi', _pairing(theta, theta)), [])


def _iso3_2():
    theta = j_theta()
    return Identity('iso3_2',
                    'p1_*<j^*Theta,j^*Theta> = 4g omega + pi^*<omega,omega>',
                    pair('p1', theta, theta),
                    OMEGA * (4 * G) + pull('pi', _pairing(OMEGA, OMEGA)), [])


def _lower_bound():
    theta = j_theta()
    return Identity('lower_bound',
                    '<j^*Theta,j^*Theta,j^*Theta> = (12g-4) <omega,omega> - 8 Phi',
                    pair('pipi', theta, theta, theta),
                    _pairing(OMEGA, OMEGA) * (12 * G - 4) - atom('Phi') * 8, [])


def _bigness2_cancel():
    theta = j_theta()
    omega_sq = _pairing(OMEGA, OMEGA)
    noether = omega_sq - atom('lambda') * 12 + atom('Delta_S') + atom('E')
    epsilon_bound = atom('E') - atom('Delta_S') * (2 * G - 2) + slack('eff', 1)
    lower_bound = pair('pipi', theta, theta, theta) - slack('nef', 1)
    cinkir = atom('Phi') * 39 - atom('Delta_S') - slack('eff', 2)
    constant = 1 + sympy.Rational(39, 2) * (3 * G - 1) * (2 * G - 1)
    relations = [(poly_gd(1), noether), (poly_gd(-1), epsilon_bound),
                 (poly_gd(sympy.Rational(39, 8) * (2 * G - 1)), lower_bound),
                 (poly_gd(2 * G - 1), cinkir)]
    return Identity('bigness2_cancel',
                    '(1 + 39(3g-1)(2g-1)/2) <omega,omega> >= 12 lambda',
                    omega_sq * constant, atom('lambda') * 12, relations)


CATALOG = OrderedDict([
    ('iso5_1_to_iso3_1', _iso5_1_to_iso3_1),
    ('iso5_2_first', _iso5_2_first),
    ('iso3_1_pairing', _iso3_1_pairing),
    ('iso3_2', _iso3_2),
    ('lower_bound', _lower_bound),
    ('bigness2_cancel', _bigness2_cancel),
    ('iso5_2_second', _iso5_2_second),
    ('iso5_3', _iso5_3),
    ('iso3_1_nef', _iso3_1_nef),
])


def identity(name):
    try:
        return CATALOG[name]()
    except KeyError:
        raise UnknownIdentityError('unknown identity %s' % name)


def verify_identity(name):
    """Verify a catalog identity.

    Both sides are normalized and ``lhs - rhs - Σ m_i rel_i`` must reduce
    to slack atoms with non negative coefficients at every specialization
    ``g`` in 2..10, ``d`` in 1..5 (to zero when there are no relations).

    Parameters
    ----------
    name : str
        Catalog entry, see ``CATALOG``

    Returns
    -------
    IdentityResult
        ``holds``, normal forms of both sides, residual, applied rules and
        the number of specializations that matched

    Raises
    ------
    UnknownIdentityError
        Name is not in the catalog
    """
    entry = identity(name)
    normalizer = Normalizer()
    lhs = normalizer.normalize(entry.lhs)
    rhs = normalizer.normalize(entry.rhs)
    residual = lhs - rhs
    for multiplier, relation in entry.relations:
        residual -= normalizer.normalize(relation) * multiplier
    exact = all(is_slack(term) for term, _ in residual.terms())
    matched = 0
    for g, d in itertools.product(SPECIALIZE_G, SPECIALIZE_D):
        values = [(term, poly_value(coefficient, g, d)) for term, coefficient in residual.terms()]
        if all(value == 0 or (is_slack(term) and value > 0) for term, value in values):
            matched += 1
    total = len(SPECIALIZE_G) * len(SPECIALIZE_D)
    holds = exact and matched == total
    logging.info('* identity %s %s', name, 'holds' if holds else 'FAILS')
    return IdentityResult(name, entry.statement, holds, lhs, rhs, residual,
                          normalizer.steps, matched)


def verify_all(names=None, workers=1):
    """Verify several catalog identities, in worker processes when ``workers > 1``."""
    names = list(CATALOG) if names is None else list(names)
    for name in names:
        if name not in CATALOG:
            raise UnknownIdentityError('unknown identity %s' % name)
    return run_tasks(verify_identity, names, workers=workers)
