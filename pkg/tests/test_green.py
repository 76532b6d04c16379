from fractions import Fraction
import pytest
from hypothesis import given, settings
from admlab.admGraph import VertexPoint, EdgePoint, parse_graph, subdivide
from admlab.admGreen import Measure, Quadratic, PiecewiseQuadratic, GreenSolver
from admlab.admGreen import canonical_measure, integrate, green_solve, green_value
from admlab.admGreen import green_diagonal, discrete_oracle, admissible_constant
from admlab.admGreen import third_points
from admlab.admErrors import MeasureMassError, MissingDataError, GenusError
from admlab.admErrors import UnknownVertexError
from conftest import metrized_graphs


@pytest.fixture
def unit_path():
    return parse_graph('vertex u genus=0\nvertex w genus=0\nedge e u w length=1\n')


def test_canonical_measure_circle(circle):
    mu = canonical_measure(circle)
    assert mu.point('v') == Fraction(1, 2)
    assert mu.edge('e') == Fraction(1, 2)
    assert mu.total == 1


def test_canonical_measure_dumbbell(dumbbell):
    mu = canonical_measure(dumbbell)
    assert mu.point_masses == {'u': Fraction(1, 2), 'w': Fraction(1, 2)}
    assert mu.edge_masses == {}


def test_canonical_measure_theta(theta):
    mu = canonical_measure(theta)
    assert all(mu.edge(e) == Fraction(1, 3) for e in ('a', 'b', 'c'))
    assert mu.point_masses == {}


def test_canonical_measure_needs_genus(unit_path):
    with pytest.raises(GenusError):
        canonical_measure(unit_path)


def test_measure_arithmetic():
    mu = Measure({'u': 1}, {'e': 1})
    assert (mu * 2 - mu) == mu
    assert (-mu).total == -2
    assert not (-mu).is_positive()


def test_measure_unknown_support(circle):
    with pytest.raises(UnknownVertexError):
        Measure.dirac('nowhere').check_support(circle)


def test_integrate_linear_function(unit_path):
    f = PiecewiseQuadratic({'u': 0, 'w': 1}, {'e': Quadratic(0, 1, 0)})
    assert integrate(unit_path, f, Measure(edge_masses={'e': 1})) == Fraction(1, 2)
    assert integrate(unit_path, f, Measure.dirac('w')) == 1


def test_integrate_missing_data(unit_path):
    with pytest.raises(MissingDataError):
        integrate(unit_path, PiecewiseQuadratic({'u': 0}, {}), Measure.dirac('u'))


def test_quadratic_interpolation():
    quadratic = Quadratic.interpolate([(0, 1), (1, 2), (2, 5)])
    assert quadratic == (1, 0, 1)
    assert quadratic.average(Fraction(3)) == 4


def test_green_circle_vertex(circle):
    mu = canonical_measure(circle)
    assert green_value(circle, mu, VertexPoint('v'), VertexPoint('v')) == Fraction(1, 48)


def test_green_dumbbell_vertex(dumbbell):
    mu = canonical_measure(dumbbell)
    assert green_value(dumbbell, mu, VertexPoint('u'), VertexPoint('u')) == Fraction(1, 4)
    assert green_value(dumbbell, mu, VertexPoint('u'), VertexPoint('w')) == Fraction(-1, 4)


def test_green_wrong_mass(circle):
    with pytest.raises(MeasureMassError):
        green_solve(circle, Measure.dirac('v') * 2, VertexPoint('v'))


def test_green_solution_properties(theta):
    solution = green_solve(theta, canonical_measure(theta), EdgePoint('a', Fraction(1, 3)))
    assert solution.check_flux()
    assert solution.check_centered()
    assert solution.check_curvature()


def test_green_symmetry_interior_points(theta):
    mu = canonical_measure(theta)
    x, y = EdgePoint('a', Fraction(1, 4)), EdgePoint('b', Fraction(2, 3))
    assert green_value(theta, mu, x, y) == green_value(theta, mu, y, x)


def test_green_dirac_measure(dumbbell):
    mu = Measure.dirac('u')
    solution = green_solve(dumbbell, mu, VertexPoint('w'))
    assert solution.value(VertexPoint('u')) == 0
    assert solution.value(VertexPoint('w')) == 1


def test_green_diagonal_circle(circle):
    diagonal = green_diagonal(circle, canonical_measure(circle), 'e')
    assert diagonal.at(0) == Fraction(1, 48)
    assert diagonal.at(1) == Fraction(1, 48)
    everything = green_diagonal(circle, canonical_measure(circle))
    assert set(everything) == {'e'}


def test_green_diagonal_no_edges(single_vertex):
    assert green_diagonal(single_vertex, canonical_measure(single_vertex)) == {}


def test_solver_caches_solutions(theta):
    solver = GreenSolver(theta, canonical_measure(theta), third_points(theta))
    assert solver.solve(VertexPoint('u')) is solver.solve(VertexPoint('u'))


def test_admissible_constant_circle(circle):
    assert admissible_constant(circle) == Fraction(-1, 16)


def test_oracle_dumbbell_matches_exact(dumbbell):
    values = discrete_oracle(dumbbell, canonical_measure(dumbbell), VertexPoint('u'), 16)
    assert abs(values['u'] - 0.25) < 1e-9
    assert abs(values['w'] + 0.25) < 1e-9


def test_oracle_circle_converges(circle):
    mu = canonical_measure(circle)
    exact = float(Fraction(1, 48))
    coarse = abs(discrete_oracle(circle, mu, VertexPoint('v'), 256)['v'] - exact)
    fine = abs(discrete_oracle(circle, mu, VertexPoint('v'), 512)['v'] - exact)
    assert coarse <= 0.01
    assert fine <= 0.6 * coarse + 1e-9


def test_oracle_rejects_coarse_grid(circle):
    with pytest.raises(ValueError):
        discrete_oracle(circle, canonical_measure(circle), VertexPoint('v'), 1)


@settings(max_examples=15, deadline=None)
@given(metrized_graphs())
def test_green_symmetric_and_centered(graph):
    mu = canonical_measure(graph)
    solver = GreenSolver(graph, mu, third_points(graph))
    points = [VertexPoint(v) for v in graph.vertex_ids()] + third_points(graph)[:3]
    for y in points:
        solution = solver.solve(y)
        assert solution.check_flux()
        assert solution.check_centered()
        for x in points:
            assert solver.value(x, y) == solver.value(y, x)


@settings(max_examples=10, deadline=None)
@given(metrized_graphs())
def test_green_values_ignore_subdivision(graph):
    midpoints = [EdgePoint(edge.id, edge.length / 2) for edge in graph.edges]
    refined, mapping = subdivide(graph, midpoints)
    mu = canonical_measure(graph)
    refined_mu = canonical_measure(refined)
    points = [VertexPoint(v) for v in graph.vertex_ids()] + midpoints[:2]
    for y in points:
        for x in points:
            assert green_value(refined, refined_mu, mapping.get(x, x), mapping.get(y, y)) == \
                green_value(graph, mu, x, y)
