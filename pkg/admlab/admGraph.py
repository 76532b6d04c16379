import re
import logging
from collections import namedtuple
from fractions import Fraction
import networkx as nx
from admlab import file_read
from admlab.admErrors import GraphSyntaxError, UnknownVertexError
from admlab.admErrors import UnknownEdgeError, InvalidLengthError
from admlab.admErrors import DisconnectedGraphError, InvalidPointError
from admlab.admErrors import GenusError, InvariantViolation

r"""Metrized graphs: parsing, validation and combinatorics.

A metrized graph is a connected multigraph whose vertices carry a genus
mark and whose edges carry a positive rational length. Loops and parallel
edges are allowed.

**Graph file format**::

    # dumbbell graph
    vertex u genus=1
    vertex w genus=1
    edge b u w length=1

Points on a graph are either ``VertexPoint(vertex)`` or
``EdgePoint(edge, offset)`` with ``0 < offset < length`` measured from the
first endpoint of the edge. Their text form is ``vertex:<id>`` or
``edge:<id>@<p>/<q>``.
"""

IDENTIFIER = r'[A-Za-z0-9_]+'
RATIONAL = r'-?[0-9]+(/[0-9]+)?'

_VERTEX_LINE = re.compile(r'^vertex\s+(%s)\s+genus=([0-9]+)$' % IDENTIFIER)
_EDGE_LINE = re.compile(r'^edge\s+(%s)\s+(%s)\s+(%s)\s+length=(\S+)$'
                        % (IDENTIFIER, IDENTIFIER, IDENTIFIER))
_RATIONAL = re.compile(r'^%s$' % RATIONAL)
_VERTEX_POINT = re.compile(r'^vertex:(%s)$' % IDENTIFIER)
_EDGE_POINT = re.compile(r'^edge:(%s)@(\S+)$' % IDENTIFIER)

Vertex = namedtuple('Vertex', ['id', 'genus'])
Edge = namedtuple('Edge', ['id', 'start', 'end', 'length'])
VertexPoint = namedtuple('VertexPoint', ['vertex'])
EdgePoint = namedtuple('EdgePoint', ['edge', 'offset'])


def parse_rational(text):
    """Convert ``p`` or ``p/q`` to a Fraction.

    Raises ValueError for anything else, including decimals.
    """
    if not _RATIONAL.match(text):
        raise ValueError('not a rational number: %s' % text)
    numerator, _, denominator = text.partition('/')
    if denominator and int(denominator) == 0:
        raise ValueError('zero denominator: %s' % text)
    return Fraction(int(numerator), int(denominator or 1))


class Divisor(dict):
    """Integer coefficients on vertices."""

    def degree(self):
        return sum(self.values())


class MetrizedGraph(object):
    """Connected metrized graph with vertex genus marks.

    Instances are immutable once built and validate themselves on
    construction.

    **List of public available methods:**

    Methods
    -------
    vertex(vertex_id)
        Get a vertex by its identifier
    edge(edge_id)
        Get an edge by its identifier
    valence(vertex_id)
        Number of edge ends at a vertex, loops count twice
    incident(vertex_id)
        Edges touching a vertex
    genus()
        Sum of vertex genera plus first Betti number
    total_length()
        Sum of edge lengths
    multigraph()
        Read-only networkx view of the combinatorial graph

    Example
    -------

        >>> graph = MetrizedGraph([Vertex('v', 1)],
        ...                       [Edge('e', 'v', 'v', Fraction(1))])
        >>> graph.genus()
        2
    """

    def __init__(self, vertices, edges):
        r"""Class Constructor.

        Parameters
        ----------
        vertices : list of Vertex
            Vertices in declaration order
        edges : list of Edge
            Edges in declaration order. Endpoints must reference vertices.

        Raises
        ------
        GraphSyntaxError
            Empty vertex list or duplicated identifiers
        UnknownVertexError
            Edge endpoint is not a vertex of the graph
        InvalidLengthError
            Edge length is not positive
        DisconnectedGraphError
            Graph is not connected
        """
        self._vertices = tuple(Vertex(v.id, int(v.genus)) for v in vertices)
        self._edges = tuple(Edge(e.id, e.start, e.end, Fraction(e.length))
                            for e in edges)
        self._vertex_index = dict()
        self._edge_index = dict()
        self._incidence = dict()
        self._multigraph = None
        self._validate()

    def _validate(self):
        if not self._vertices:
            raise GraphSyntaxError('graph has no vertices')
        for vertex in self._vertices:
            if vertex.id in self._vertex_index:
                raise GraphSyntaxError('duplicate vertex %s' % vertex.id)
            if vertex.genus < 0:
                raise GraphSyntaxError('negative genus on vertex %s' % vertex.id)
            self._vertex_index[vertex.id] = vertex
            self._incidence[vertex.id] = list()
        for edge in self._edges:
            if edge.id in self._edge_index:
                raise GraphSyntaxError('duplicate edge %s' % edge.id)
            for endpoint in (edge.start, edge.end):
                if endpoint not in self._vertex_index:
                    raise UnknownVertexError('unknown vertex %s in edge %s'
                                             % (endpoint, edge.id))
            if edge.length <= 0:
                raise InvalidLengthError('edge %s has non-positive length %s'
                                         % (edge.id, edge.length))
            self._edge_index[edge.id] = edge
            self._incidence[edge.start].append(edge)
            if edge.end != edge.start:
                self._incidence[edge.end].append(edge)
        if not nx.is_connected(self.multigraph()):
            raise DisconnectedGraphError('graph is not connected')

    def __eq__(self, other):
        if not isinstance(other, MetrizedGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self._vertices, self._edges))

    def __repr__(self):
        return 'MetrizedGraph(%d vertices, %d edges)' % (len(self._vertices),
                                                         len(self._edges))

    @property
    def vertices(self):
        return self._vertices

    @property
    def edges(self):
        return self._edges

    def vertex_ids(self):
        return [vertex.id for vertex in self._vertices]

    def edge_ids(self):
        return [edge.id for edge in self._edges]

    def has_vertex(self, vertex_id):
        return vertex_id in self._vertex_index

    def has_edge(self, edge_id):
        return edge_id in self._edge_index

    def vertex(self, vertex_id):
        """Get a vertex by its identifier.

        Raises
        ------
        UnknownVertexError
            Identifier is not a vertex of this graph
        """
        try:
            return self._vertex_index[vertex_id]
        except KeyError:
            raise UnknownVertexError('unknown vertex %s' % vertex_id)

    def edge(self, edge_id):
        """Get an edge by its identifier.

        Raises
        ------
        UnknownEdgeError
            Identifier is not an edge of this graph
        """
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise UnknownEdgeError('unknown edge %s' % edge_id)

    def incident(self, vertex_id):
        return tuple(self._incidence[self.vertex(vertex_id).id])

    def valence(self, vertex_id):
        valence = 0
        for edge in self.incident(vertex_id):
            valence += 2 if edge.start == edge.end else 1
        return valence

    def genus(self):
        return (sum(vertex.genus for vertex in self._vertices)
                + len(self._edges) - len(self._vertices) + 1)

    def total_length(self):
        return sum((edge.length for edge in self._edges), Fraction(0))

    def multigraph(self):
        """Read-only networkx view of the combinatorial graph.

        Edge keys are the edge identifiers and carry a ``length`` attribute.

        Returns
        -------
        networkx.MultiGraph
            Frozen multigraph
        """
        if self._multigraph is None:
            multigraph = nx.MultiGraph()
            multigraph.add_nodes_from(self.vertex_ids())
            for edge in self._edges:
                multigraph.add_edge(edge.start, edge.end, key=edge.id,
                                    length=edge.length)
            self._multigraph = nx.freeze(multigraph)
        return self._multigraph


def parse_graph(text):
    r"""Parse a graph document.

    Blank lines are ignored and ``#`` starts a comment. Vertices must be
    declared before edges use them.

    Parameters
    ----------
    text : str
        Graph document

    Returns
    -------
    MetrizedGraph
        Validated graph

    Raises
    ------
    GraphSyntaxError
        Malformed line, with its line number
    UnknownVertexError
        Edge references an undeclared vertex
    InvalidLengthError
        Non-positive length
    DisconnectedGraphError
        Graph is not connected
    """
    vertices = list()
    edges = list()
    declared = set()
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if not line:
            continue
        match = _VERTEX_LINE.match(line)
        if match:
            if match.group(1) in declared:
                raise GraphSyntaxError('duplicate vertex %s' % match.group(1), line=number)
            declared.add(match.group(1))
            vertices.append(Vertex(match.group(1), int(match.group(2))))
            continue
        match = _EDGE_LINE.match(line)
        if match:
            edge_id, start, end, length = match.groups()
            for endpoint in (start, end):
                if endpoint not in declared:
                    raise UnknownVertexError('unknown vertex %s' % endpoint, line=number)
            try:
                length = parse_rational(length)
            except ValueError as error:
                raise GraphSyntaxError(str(error), line=number)
            if length <= 0:
                raise InvalidLengthError('non-positive length %s' % length, line=number)
            if any(edge.id == edge_id for edge in edges):
                raise GraphSyntaxError('duplicate edge %s' % edge_id, line=number)
            edges.append(Edge(edge_id, start, end, length))
            continue
        raise GraphSyntaxError('cannot parse "%s"' % line, line=number)
    graph = MetrizedGraph(vertices, edges)
    logging.debug('parsed graph with %d vertices and %d edges',
                  len(graph.vertices), len(graph.edges))
    return graph


def read_graph(path):
    """Read and parse a graph file."""
    return parse_graph(file_read(path))


def serialize(graph):
    """Canonical text form of a graph.

    ``parse_graph(serialize(graph)) == graph`` for every graph.
    """
    lines = ['vertex %s genus=%d' % (vertex.id, vertex.genus)
             for vertex in graph.vertices]
    lines += ['edge %s %s %s length=%s' % (edge.id, edge.start, edge.end, edge.length)
              for edge in graph.edges]
    return '\n'.join(lines) + '\n'


def genus(graph):
    """Genus of the graph: sum of vertex genera plus first Betti number.

    Example
    -------

        >>> genus(parse_graph('vertex v genus=2'))
        2
    """
    return graph.genus()


def canonical_divisor(graph):
    """Canonical divisor ``K_v = 2 g_v - 2 + valence(v)``.

    Parameters
    ----------
    graph : MetrizedGraph
        Graph of genus at least 1

    Returns
    -------
    Divisor
        Coefficients per vertex, in vertex declaration order

    Raises
    ------
    GenusError
        Graph has genus 0
    InvariantViolation
        Degree differs from ``2g - 2``
    """
    total_genus = graph.genus()
    if total_genus < 1:
        raise GenusError('canonical divisor needs genus >= 1, got %d' % total_genus)
    divisor = Divisor()
    for vertex in graph.vertices:
        divisor[vertex.id] = 2 * vertex.genus - 2 + graph.valence(vertex.id)
    if divisor.degree() != 2 * total_genus - 2:
        raise InvariantViolation('canonical divisor has degree %d instead of %d'
                                 % (divisor.degree(), 2 * total_genus - 2),
                                 graph=serialize(graph))
    return divisor


def edge_type(graph, edge_id):
    """Type of an edge: 0 when non-separating, else the smaller side genus.

    Parameters
    ----------
    graph : MetrizedGraph
        Connected graph
    edge_id : str
        Edge to classify

    Returns
    -------
    int
        Type in ``[0, genus // 2]``

    Raises
    ------
    UnknownEdgeError
        Edge is not part of the graph
    """
    edge = graph.edge(edge_id)
    if edge.start == edge.end:
        return 0
    remainder = nx.MultiGraph(graph.multigraph())
    remainder.remove_edge(edge.start, edge.end, key=edge.id)
    if nx.is_connected(remainder):
        return 0
    side = nx.node_connected_component(remainder, edge.start)
    side_edges = remainder.subgraph(side).number_of_edges()
    side_genus = (sum(graph.vertex(v).genus for v in side)
                  + side_edges - len(side) + 1)
    return min(side_genus, graph.genus() - side_genus)


def format_point(point):
    if isinstance(point, VertexPoint):
        return 'vertex:%s' % point.vertex
    return 'edge:%s@%s' % (point.edge, point.offset)


def parse_point(text):
    """Parse ``vertex:<id>`` or ``edge:<id>@<p>/<q>``.

    Raises
    ------
    InvalidPointError
        Text matches neither form
    """
    match = _VERTEX_POINT.match(text.strip())
    if match:
        return VertexPoint(match.group(1))
    match = _EDGE_POINT.match(text.strip())
    if match:
        try:
            return EdgePoint(match.group(1), parse_rational(match.group(2)))
        except ValueError as error:
            raise InvalidPointError(str(error))
    raise InvalidPointError('cannot parse point "%s"' % text)


def check_point(graph, point):
    """Validate a point against a graph and return it.

    Raises
    ------
    InvalidPointError
        Unknown vertex or edge, or offset outside ``(0, length)``
    """
    if isinstance(point, VertexPoint):
        if not graph.has_vertex(point.vertex):
            raise InvalidPointError('unknown vertex %s' % point.vertex)
        return point
    if isinstance(point, EdgePoint):
        if not graph.has_edge(point.edge):
            raise InvalidPointError('unknown edge %s' % point.edge)
        length = graph.edge(point.edge).length
        if not 0 < point.offset < length:
            raise InvalidPointError('offset %s out of range (0, %s) on edge %s'
                                    % (point.offset, length, point.edge))
        return EdgePoint(point.edge, Fraction(point.offset))
    raise InvalidPointError('not a point: %r' % (point,))


def _fresh(prefix, used):
    name = prefix
    while name in used:
        name += '_'
    used.add(name)
    return name


class Subdivision(object):
    """Result of splitting edges of a graph at interior points.

    Attributes
    ----------
    graph
        The subdivided MetrizedGraph
    mapping
        Original EdgePoint or VertexPoint -> VertexPoint of the new graph
    pieces
        Original edge id -> list of ``(new edge id, start offset, end offset)``
        in increasing offset order
    """

    def __init__(self, original, graph, mapping, pieces):
        self.original = original
        self.graph = graph
        self.mapping = mapping
        self.pieces = pieces

    def locate(self, point):
        """Express a point of the original graph in the subdivided graph.

        Returns a VertexPoint when the point is a vertex of the new graph,
        else an EdgePoint on the piece that contains it.
        """
        point = check_point(self.original, point)
        if isinstance(point, VertexPoint):
            return point
        if point in self.mapping:
            return self.mapping[point]
        for new_edge, start, end in self.pieces[point.edge]:
            if start < point.offset < end:
                return EdgePoint(new_edge, point.offset - start)
        raise InvariantViolation('point %s not covered by subdivision'
                                 % format_point(point))


def split_edges(graph, points):
    """Subdivide a graph and keep track of where every piece came from.

    Duplicate points are merged. Vertex points are kept as they are.

    Parameters
    ----------
    graph : MetrizedGraph
        Graph to subdivide
    points : list
        VertexPoint or EdgePoint of ``graph``

    Returns
    -------
    Subdivision
        New graph, point mapping and edge pieces
    """
    cuts = dict()
    mapping = dict()
    for point in points:
        point = check_point(graph, point)
        if isinstance(point, VertexPoint):
            mapping[point] = point
        else:
            cuts.setdefault(point.edge, set()).add(point.offset)
    used_vertices = set(graph.vertex_ids())
    used_edges = set(graph.edge_ids())
    vertices = list(graph.vertices)
    edges = list()
    pieces = dict()
    for edge in graph.edges:
        offsets = sorted(cuts.get(edge.id, ()))
        if not offsets:
            edges.append(edge)
            pieces[edge.id] = [(edge.id, Fraction(0), edge.length)]
            continue
        previous_vertex, previous_offset = edge.start, Fraction(0)
        pieces[edge.id] = list()
        for index, offset in enumerate(offsets + [edge.length]):
            if offset == edge.length:
                vertex_id = edge.end
            else:
                vertex_id = _fresh('%s_p%d' % (edge.id, index), used_vertices)
                vertices.append(Vertex(vertex_id, 0))
                mapping[EdgePoint(edge.id, offset)] = VertexPoint(vertex_id)
            piece_id = _fresh('%s_%d' % (edge.id, index), used_edges)
            edges.append(Edge(piece_id, previous_vertex, vertex_id,
                              offset - previous_offset))
            pieces[edge.id].append((piece_id, previous_offset, offset))
            previous_vertex, previous_offset = vertex_id, offset
    if cuts:
        logging.debug(' -> subdivided %d edges at %d points', len(cuts),
                      sum(len(offsets) for offsets in cuts.values()))
    return Subdivision(graph, MetrizedGraph(vertices, edges), mapping, pieces)


def subdivide(graph, points):
    """Turn interior points into new genus-0 vertices.

    Parameters
    ----------
    graph : MetrizedGraph
        Graph to subdivide
    points : list
        Points of ``graph``. An empty list returns the graph unchanged.

    Returns
    -------
    tuple
        ``(new graph, mapping old point -> new VertexPoint)``

    Raises
    ------
    InvalidPointError
        Offset out of range or unknown edge

    Example
    -------

        >>> graph = parse_graph('vertex u genus=1\\nvertex w genus=1\\nedge b u w length=1')
        >>> new_graph, mapping = subdivide(graph, [EdgePoint('b', Fraction(1, 2))])
        >>> [edge.length for edge in new_graph.edges]
        [Fraction(1, 2), Fraction(1, 2)]
    """
    result = split_edges(graph, points)
    return result.graph, dict(result.mapping)


def rescale(graph, factor):
    """Multiply every edge length by a positive rational factor.

    Raises
    ------
    InvalidLengthError
        Factor is not positive
    """
    factor = Fraction(factor)
    if factor <= 0:
        raise InvalidLengthError('scale factor must be positive, got %s' % factor)
    return MetrizedGraph(graph.vertices,
                         [edge._replace(length=edge.length * factor)
                          for edge in graph.edges])
