from fractions import Fraction
import pytest
from admlab.admLedger import CurveLedger, Place, parse_ledger, read_ledger, ledger_report
from admlab.admLedger import omega_sq, dejong_bound, faltings_bound, faltings_floor_bound
from admlab.admLedger import faltings_coefficient, gross_schoen_height, bigness2_constants
from admlab.admLedger import isotriviality_floor
from admlab.admGraph import parse_graph
from admlab.admErrors import LedgerSyntaxError, GenusError
from conftest import sample_path, SAMPLES


def test_circle_ledger():
    ledger = read_ledger(sample_path('circle.ledger'))
    assert ledger.genus == 2
    assert ledger.deg_lambda == 1
    assert omega_sq(ledger) == Fraction(65, 6)
    bound, satisfied, margin = dejong_bound(ledger)
    assert bound == Fraction(1, 30)
    assert satisfied
    assert margin == Fraction(54, 5)


def test_dumbbell_ledger():
    ledger = read_ledger(sample_path('dumbbell.ledger'))
    assert omega_sq(ledger) == 10
    assert dejong_bound(ledger)[2] == Fraction(48, 5)
    assert not ledger.isotrivial
    report = ledger_report(ledger)
    assert list(report.bounds) == ['dejong', 'faltings', 'faltings_floor']
    assert report.passed


def test_empty_ledger_is_twelve_lambda():
    assert omega_sq(CurveLedger(2, 1)) == 12


def test_faltings_bounds(circle):
    ledger = CurveLedger(2, 1, [Place('v1', 1, circle)], isotrivial=False)
    assert faltings_coefficient(2) == Fraction(1, 25)
    satisfied, margin = faltings_bound(ledger)
    assert satisfied and margin == Fraction(65, 6) - Fraction(1, 25)
    threshold, satisfied, _ = faltings_floor_bound(ledger)
    assert threshold == Fraction(1, 25 * 256)
    assert satisfied


def test_gross_schoen_height():
    assert gross_schoen_height(read_ledger(sample_path('circle.ledger'))) == 27
    assert gross_schoen_height(read_ledger(sample_path('dumbbell.ledger'))) == 24


def test_bigness2_constants():
    constants = bigness2_constants(2)
    assert constants.c_exact == Fraction(587, 2)
    assert constants.c_round == 300
    assert constants.coefficient == Fraction(1, 25)
    for genus in range(2, 11):
        constants = bigness2_constants(genus)
        assert constants.c_exact <= constants.c_round
        assert constants.coefficient == faltings_coefficient(genus)
    with pytest.raises(GenusError):
        bigness2_constants(1)


def test_isotriviality_floor():
    assert isotriviality_floor(2) == Fraction(1, 3 ** 16)
    assert isotriviality_floor(2, characteristic=3) == Fraction(1, 4 ** 16)


def test_report_adds_up():
    report = ledger_report(read_ledger(sample_path('circle.ledger')))
    assert report.omega_sq + report.sum_delta + report.sum_epsilon == 12 * report.deg_lambda
    assert report.sum_phi == Fraction(1, 12)
    assert 'faltings_floor' not in report.bounds


def test_weights_scale_contributions(circle):
    ledger = CurveLedger(2, 3, [Place('v1', 2, circle), Place('v2', Fraction(1, 2), circle)])
    assert ledger.weighted_sum('epsilon') == Fraction(5, 2) * Fraction(1, 6)
    assert omega_sq(ledger) == 36 - Fraction(5, 2) * Fraction(7, 6)


def test_with_place_returns_new_ledger(circle):
    ledger = CurveLedger(2, 1)
    extended = ledger.with_place(Place('v1', 1, circle))
    assert len(ledger.places) == 0
    assert len(extended.places) == 1


def test_place_genus_outside_range():
    with pytest.raises(GenusError):
        CurveLedger(2, 1, [Place('v1', 1, parse_graph('vertex v genus=3\n'))])
    with pytest.raises(GenusError):
        CurveLedger(1, 1)


def test_place_genus_below_ledger_genus_warns(circle, caplog):
    CurveLedger(3, 1, [Place('v1', 1, circle)], isotrivial=True)
    assert 'below ledger genus' in caplog.text


@pytest.mark.parametrize('text', [
    'place v1 weight=1 graph=circle.graph\n',
    'ledger g=2\n',
    'ledger g=2 deg_lambda=1\nplace v1 weight=0 graph=circle.graph\n',
    'ledger g=2 deg_lambda=1\nplace v1 graph=circle.graph\n',
    'ledger g=2 deg_lambda=1 isotrivial=maybe\n',
    'ledger g=2 deg_lambda=1\nledger g=2 deg_lambda=1\n',
    'ledger g=2 deg_lambda=1\nplace v1 weight=1 graph=circle.graph\n'
    'place v1 weight=1 graph=circle.graph\n',
])
def test_ledger_syntax_errors(text):
    with pytest.raises(LedgerSyntaxError):
        parse_ledger(text, base_dir=SAMPLES)


def test_ledger_header_options():
    ledger = parse_ledger('ledger g=2 deg_lambda=1/2 characteristic=3 isotrivial=no\n')
    assert ledger.deg_lambda == Fraction(1, 2)
    assert ledger.characteristic == 3
    assert not ledger.isotrivial


def test_adding_a_place_lowers_omega_sq(circle, dumbbell):
    ledger = CurveLedger(2, 2, [Place('v1', 1, circle)])
    extended = ledger.with_place(Place('v2', 3, dumbbell))
    assert omega_sq(ledger) - omega_sq(extended) == 3 * (1 + 1)
