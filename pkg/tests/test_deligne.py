from fractions import Fraction
import pytest
import sympy
from admlab.admDeligne import G, D, CATALOG, OMEGA, ALPHA, O_X, O_DELTA, OMEGA1, OMEGA2
from admlab.admDeligne import PicExpr, atom, slack, pull, section, pair, i_theta, j_theta
from admlab.admDeligne import iota_theta, normalize, expand, substitute, poly_gd, poly_value
from admlab.admDeligne import verify_identity, verify_all, is_slack
from admlab.admErrors import ArityMismatchError, UnknownAtomError, UnknownIdentityError

OMEGA_SQ = pair('pi', OMEGA, OMEGA)


@pytest.mark.parametrize('name', list(CATALOG))
def test_catalog_identity_holds(name):
    result = verify_identity(name)
    assert result.holds, result.residual.label()
    assert result.specializations == 45


def test_catalog_has_nine_entries():
    assert len(CATALOG) == 9


def test_lower_bound_coefficients():
    result = verify_identity('lower_bound')
    assert result.lhs.coefficient(OMEGA_SQ) == poly_gd(12 * G - 4)
    assert result.lhs.coefficient(atom('Phi')) == poly_gd(-8)
    assert result.residual.is_zero()


def test_bigness2_residual_is_slack():
    result = verify_identity('bigness2_cancel')
    assert result.residual.terms()
    assert all(is_slack(term) for term, _ in result.residual.terms())
    assert result.residual.coefficient(slack('eff', 1)) == poly_gd(1)
    assert result.residual.coefficient(slack('nef', 1)) == poly_gd(sympy.Rational(39, 8) * (2 * G - 1))
    assert result.residual.coefficient(slack('eff', 2)) == poly_gd(2 * G - 1)


def test_derivation_is_recorded():
    result = verify_identity('iso3_2')
    rules = {step.rule for step in result.steps}
    assert {'theta-definition', 'base-change', 'diagonal-adjunction'} <= rules


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        verify_identity('no_such_identity')
    with pytest.raises(UnknownIdentityError):
        verify_all(['lower_bound', 'no_such_identity'])


def test_verify_all_keeps_order():
    names = ['iso3_2', 'lower_bound']
    assert [result.name for result in verify_all(names)] == names


def test_cube_expansion_patterns():
    cube = pair('pipi', OMEGA1 + OMEGA2, OMEGA1 + OMEGA2, OMEGA1 + OMEGA2)
    patterns = expand(cube)
    assert list(patterns) == ['<p1^*omega,p1^*omega,p1^*omega>',
                              '<p1^*omega,p1^*omega,p2^*omega>',
                              '<p1^*omega,p2^*omega,p2^*omega>',
                              '<p2^*omega,p2^*omega,p2^*omega>']
    assert list(patterns.values()) == [poly_gd(1), poly_gd(3), poly_gd(3), poly_gd(1)]
    assert normalize(cube) == OMEGA_SQ * (12 * G - 12)


def test_single_patterns():
    assert normalize(pair('pipi', OMEGA1, OMEGA1, OMEGA1)).is_zero()
    assert normalize(pair('pipi', OMEGA1, OMEGA1, OMEGA2)) == OMEGA_SQ * (2 * G - 2)
    assert normalize(pair('pipi', OMEGA2, OMEGA2, OMEGA2)).is_zero()
    assert normalize(pair('pipi', O_DELTA, O_DELTA, O_DELTA)) == OMEGA_SQ - atom('Phi')
    assert normalize(pair('pipi', O_DELTA, O_DELTA, OMEGA1)) == -OMEGA_SQ


def test_pairing_is_symmetric():
    assert pair('pi', OMEGA, ALPHA) == pair('pi', ALPHA, OMEGA)


def test_projection_formula():
    base = atom('lambda')
    assert normalize(pair('pi', ALPHA, pull('pi', base))) == base * D
    assert normalize(pair('pi', pull('pi', base), pull('pi', base))).is_zero()


def test_adjunction():
    assert normalize(pair('pi', O_X, O_X)) == -section('x', OMEGA)
    assert normalize(section('x', pull('pi', atom('E')))) == atom('E')


def test_diagonal_restrictions():
    assert normalize(section('diag', O_DELTA)) == -OMEGA
    assert normalize(section('diag', OMEGA2)) == OMEGA


def test_second_pullback_of_base_class_is_canonical():
    base = pull('pi', atom('lambda'))
    assert pull('p2', base) == pull('p1', base)


def test_hodge_index_rule():
    divisor = ALPHA * (2 * G - 2) - OMEGA * D
    expected = -normalize(pair('pi', divisor, divisor))
    assert normalize(iota_theta(divisor)) == expected


def test_iota_theta_of_nonzero_degree_stays():
    result = normalize(iota_theta(OMEGA))
    (term, coefficient), = result.terms()
    assert term.label().startswith('iota^*Theta')


def test_theta_expansion():
    expected = OMEGA * D ** 2 + ALPHA * (2 * D) - pull('pi', pair('pi', ALPHA, ALPHA))
    assert normalize(i_theta(ALPHA, D)) == expected
    assert normalize(j_theta()) == O_DELTA * 2 + OMEGA1 + OMEGA2


def test_substitute_atoms_and_degree():
    result = substitute(i_theta(ALPHA, D), {'alpha': OMEGA}, 2 * G - 2)
    assert result == OMEGA * (4 * G * (G - 1)) - pull('pi', OMEGA_SQ)


def test_normalize_is_idempotent():
    for name in CATALOG:
        entry = CATALOG[name]()
        once = normalize(entry.lhs)
        assert normalize(once) == once


def test_wrong_arity():
    with pytest.raises(ArityMismatchError):
        pair('pi', OMEGA, OMEGA, OMEGA)
    with pytest.raises(ArityMismatchError):
        pair('pipi', OMEGA1, OMEGA1)


def test_wrong_space():
    with pytest.raises(ArityMismatchError):
        pair('pi', OMEGA, atom('lambda'))
    with pytest.raises(ArityMismatchError):
        OMEGA + atom('lambda')
    with pytest.raises(ArityMismatchError):
        pull('pi', OMEGA)


def test_unknown_atom():
    with pytest.raises(UnknownAtomError):
        atom('kappa')
    assert is_slack(slack('nef', 3).terms()[0][0])


def test_expression_algebra():
    expr = OMEGA * 2 - OMEGA * 2
    assert expr.is_zero()
    assert expr.label() == '0'
    assert sum([OMEGA, OMEGA]) == OMEGA * 2
    assert hash(OMEGA * (G + 1)) == hash(OMEGA * (1 + G))
    assert isinstance(OMEGA * G, PicExpr)


def test_poly_value():
    assert poly_value(poly_gd(sympy.Rational(39, 8) * (2 * G - 1)), 2) == Fraction(117, 8)
