from fractions import Fraction
import pytest
from hypothesis import given, settings
from admlab.admGraph import Vertex, Edge, MetrizedGraph, VertexPoint, EdgePoint
from admlab.admGraph import parse_graph, serialize, genus, canonical_divisor, edge_type
from admlab.admGraph import parse_point, check_point, subdivide, split_edges, rescale
from admlab.admGraph import parse_rational, read_graph
from admlab.admErrors import GraphSyntaxError, UnknownVertexError, InvalidLengthError
from admlab.admErrors import DisconnectedGraphError, InvalidPointError, GenusError
from admlab.admErrors import UnknownEdgeError, InputEncodingError
from conftest import metrized_graphs


def test_parse_dumbbell(dumbbell):
    assert dumbbell.vertex_ids() == ['u', 'w']
    assert dumbbell.edge('b').length == Fraction(1)
    assert genus(dumbbell) == 2
    assert dumbbell.total_length() == 1


def test_parse_ignores_comments_and_blank_lines():
    graph = parse_graph('# header\n\nvertex v genus=2   # trailing\n')
    assert graph.genus() == 2
    assert list(graph.edges) == []


def test_parse_rational_lengths():
    graph = parse_graph('vertex u genus=1\nvertex w genus=1\nedge b u w length=3/4\n')
    assert graph.edge('b').length == Fraction(3, 4)


@pytest.mark.parametrize('text', ['1.5', 'abc', '1/0', ''])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_syntax_error_reports_line():
    with pytest.raises(GraphSyntaxError) as error:
        parse_graph('vertex u genus=1\nedge b u\n')
    assert error.value.line == 2
    assert 'line 2' in str(error.value)


def test_unknown_vertex():
    with pytest.raises(UnknownVertexError):
        parse_graph('vertex u genus=1\nedge b u x length=1\n')


@pytest.mark.parametrize('length', ['0', '-1', '-1/2'])
def test_non_positive_length(length):
    with pytest.raises(InvalidLengthError):
        parse_graph('vertex u genus=1\nvertex w genus=1\nedge b u w length=%s\n' % length)


def test_disconnected():
    with pytest.raises(DisconnectedGraphError):
        parse_graph('vertex u genus=1\nvertex w genus=1\n')


def test_duplicate_vertex():
    with pytest.raises(GraphSyntaxError):
        parse_graph('vertex u genus=1\nvertex u genus=1\n')


def test_valence_counts_loops_twice(circle):
    assert circle.valence('v') == 2


def test_canonical_divisor(circle, dumbbell, theta, path_graph):
    assert dict(canonical_divisor(circle)) == {'v': 2}
    assert dict(canonical_divisor(dumbbell)) == {'u': 1, 'w': 1}
    assert dict(canonical_divisor(theta)) == {'u': 1, 'w': 1}
    assert dict(canonical_divisor(path_graph)) == {'u': 1, 'm': 0, 'w': 1}


def test_canonical_divisor_needs_genus():
    tree = parse_graph('vertex u genus=0\nvertex w genus=0\nedge b u w length=1\n')
    with pytest.raises(GenusError):
        canonical_divisor(tree)


def test_edge_types(circle, dumbbell, theta, path_graph):
    assert edge_type(circle, 'e') == 0
    assert edge_type(dumbbell, 'b') == 1
    assert [edge_type(theta, e) for e in ('a', 'b', 'c')] == [0, 0, 0]
    assert [edge_type(path_graph, e) for e in ('a', 'b')] == [1, 1]


def test_edge_type_unknown_edge(theta):
    with pytest.raises(UnknownEdgeError):
        edge_type(theta, 'zz')


def test_parse_point():
    assert parse_point('vertex:u') == VertexPoint('u')
    assert parse_point('edge:e@1/2') == EdgePoint('e', Fraction(1, 2))
    with pytest.raises(InvalidPointError):
        parse_point('edge:e')
    with pytest.raises(InvalidPointError):
        parse_point('edge:e@0.5')


def test_check_point_range(circle):
    with pytest.raises(InvalidPointError):
        check_point(circle, EdgePoint('e', Fraction(1)))
    with pytest.raises(InvalidPointError):
        check_point(circle, VertexPoint('nowhere'))


def test_subdivide_midpoint(dumbbell):
    graph, mapping = subdivide(dumbbell, [EdgePoint('b', Fraction(1, 2))])
    assert sorted(edge.length for edge in graph.edges) == [Fraction(1, 2), Fraction(1, 2)]
    assert graph.genus() == 2
    new_vertex = mapping[EdgePoint('b', Fraction(1, 2))].vertex
    assert graph.vertex(new_vertex).genus == 0


def test_subdivide_empty_is_identity(theta):
    graph, mapping = subdivide(theta, [])
    assert graph == theta
    assert mapping == {}


def test_split_edges_merges_duplicates(circle):
    point = EdgePoint('e', Fraction(1, 3))
    subdivision = split_edges(circle, [point, point])
    assert len(subdivision.graph.vertices) == 2
    assert subdivision.locate(point) == subdivision.mapping[point]
    located = subdivision.locate(EdgePoint('e', Fraction(2, 3)))
    assert isinstance(located, EdgePoint)
    assert located.offset == Fraction(1, 3)


def test_rescale(theta):
    scaled = rescale(theta, Fraction(3, 2))
    assert scaled.total_length() == Fraction(9, 2)
    with pytest.raises(InvalidLengthError):
        rescale(theta, 0)


def test_graph_equality_and_hash(theta):
    copy = MetrizedGraph([Vertex('u', 0), Vertex('w', 0)],
                         [Edge(e, 'u', 'w', 1) for e in ('a', 'b', 'c')])
    assert copy == theta
    assert hash(copy) == hash(theta)


@settings(max_examples=30, deadline=None)
@given(metrized_graphs())
def test_serialize_parses_back(graph):
    assert parse_graph(serialize(graph)) == graph


@settings(max_examples=30, deadline=None)
@given(metrized_graphs())
def test_canonical_divisor_degree(graph):
    assert canonical_divisor(graph).degree() == 2 * graph.genus() - 2


@settings(max_examples=30, deadline=None)
@given(metrized_graphs())
def test_subdivision_keeps_genus_and_length(graph):
    points = [EdgePoint(edge.id, edge.length / 2) for edge in graph.edges]
    refined, _ = subdivide(graph, points)
    assert refined.genus() == graph.genus()
    assert refined.total_length() == graph.total_length()


@settings(max_examples=40, deadline=None)
@given(metrized_graphs(max_vertices=4))
def test_generated_graphs_have_effective_canonical_divisor(graph):
    assert all(k >= 0 for _, k in canonical_divisor(graph).items())


def test_read_graph_rejects_non_utf8(tmp_path):
    bad = tmp_path / 'latin1.graph'
    bad.write_bytes('vertex v genus=2 # é\n'.encode('latin-1'))
    with pytest.raises(InputEncodingError):
        read_graph(str(bad))
