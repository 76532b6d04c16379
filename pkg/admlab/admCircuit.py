import logging
from fractions import Fraction
import numpy
import networkx as nx
from admlab.admGraph import MetrizedGraph, split_edges
from admlab.admErrors import UnbalancedSourcesError, SingularSystemError
from admlab.admErrors import UnknownVertexError

"""Exact electrical network computations on metrized graphs.

Each edge of length ``L`` is a resistor of conductance ``1/L``. All
solves run over ``fractions.Fraction`` stored in numpy object arrays, so
potentials and resistances are exact rationals.
"""


class Infinite(object):
    """Resistance between points that no path connects."""

    def __eq__(self, other):
        return isinstance(other, Infinite)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash('infinite')

    def __repr__(self):
        return 'INFINITE'

    def __str__(self):
        return 'infinite'


INFINITE = Infinite()


def identity_matrix(size):
    return numpy.array([[Fraction(int(i == j)) for i in range(size)]
                        for j in range(size)], dtype=object).reshape(size, size)


def inverse_matrix(matrix):
    """Exact inverse by Gauss-Jordan elimination over Fractions.

    Parameters
    ----------
    matrix : numpy.ndarray
        Square object array of Fraction

    Returns
    -------
    numpy.ndarray
        Inverse as an object array of Fraction

    Raises
    ------
    SingularSystemError
        No non-zero pivot is left in a column
    """
    size = matrix.shape[0]
    work = matrix.copy()
    result = identity_matrix(size)
    for column in range(size):
        pivot = next((row for row in range(column, size) if work[row, column] != 0), None)
        if pivot is None:
            raise SingularSystemError('matrix is not invertible')
        if pivot != column:
            work[[column, pivot]] = work[[pivot, column]]
            result[[column, pivot]] = result[[pivot, column]]
        scale = work[column, column]
        work[column, :] = work[column, :] / scale
        result[column, :] = result[column, :] / scale
        for row in range(size):
            factor = work[row, column]
            if row != column and factor != 0:
                work[row, :] = work[row, :] - factor * work[column, :]
                result[row, :] = result[row, :] - factor * result[column, :]
    return result


def laplacian_matrix(graph):
    """Weighted Laplacian with conductance ``1/L_e``; loops contribute nothing.

    Rows and columns follow ``graph.vertex_ids()``.
    """
    index = {vertex_id: i for i, vertex_id in enumerate(graph.vertex_ids())}
    size = len(index)
    laplacian = numpy.array([[Fraction(0)] * size for _ in range(size)],
                            dtype=object).reshape(size, size)
    for edge in graph.edges:
        if edge.start == edge.end:
            continue
        conductance = 1 / edge.length
        i, j = index[edge.start], index[edge.end]
        laplacian[i, i] += conductance
        laplacian[j, j] += conductance
        laplacian[i, j] -= conductance
        laplacian[j, i] -= conductance
    return laplacian


class PotentialVector(dict):
    """Vertex potentials with the ground vertex at exactly 0."""

    def __init__(self, values, ground):
        super(PotentialVector, self).__init__(values)
        self.ground = ground

    def regrounded(self, ground):
        """Same potential shifted so that ``ground`` sits at 0."""
        offset = self[ground]
        return PotentialVector({vertex: value - offset for vertex, value in self.items()},
                               ground)


class Circuit(object):
    """Resistor network of a metrized graph.

    The reduced Laplacian is inverted once, on first use, and every later
    potential or resistance query is a matrix-vector product.

    **List of public available methods:**

    Methods
    -------
    potential(sources)
        Kirchhoff potential for balanced current sources
    resistance(x, y)
        Effective resistance between two vertices
    resistance_matrix()
        Resistances between all pairs of vertices

    Example
    -------

        >>> circuit = Circuit(graph)
        >>> circuit.resistance('u', 'w')
        Fraction(1, 3)
    """

    def __init__(self, graph, ground=None):
        """Class Constructor.

        Parameters
        ----------
        graph : MetrizedGraph
            Connected graph
        ground : str, optional
            Vertex held at potential 0. First vertex by default.
        """
        self._graph = graph
        self._order = graph.vertex_ids()
        self._index = {vertex_id: i for i, vertex_id in enumerate(self._order)}
        self._ground = ground if ground is not None else self._order[0]
        if self._ground not in self._index:
            raise UnknownVertexError('unknown ground vertex %s' % self._ground)
        self._inverse = None

    @property
    def graph(self):
        return self._graph

    @property
    def ground(self):
        return self._ground

    def index(self, vertex_id):
        try:
            return self._index[vertex_id]
        except KeyError:
            raise UnknownVertexError('unknown vertex %s' % vertex_id)

    @property
    def inverse(self):
        """Grounded inverse: ground row and column are zero."""
        if self._inverse is None:
            logging.debug(' -> inverting reduced laplacian of size %d',
                          len(self._order) - 1)
            size = len(self._order)
            ground = self._index[self._ground]
            keep = [i for i in range(size) if i != ground]
            inverse = numpy.array([[Fraction(0)] * size for _ in range(size)],
                                  dtype=object).reshape(size, size)
            if keep:
                reduced = laplacian_matrix(self._graph)[numpy.ix_(keep, keep)]
                inverse[numpy.ix_(keep, keep)] = inverse_matrix(reduced)
            self._inverse = inverse
        return self._inverse

    def vector(self, values):
        """Dense Fraction vector from a ``vertex id -> value`` map."""
        vector = numpy.array([Fraction(0)] * len(self._order), dtype=object)
        for vertex_id, value in values.items():
            vector[self.index(vertex_id)] += Fraction(value)
        return vector

    def apply(self, vector):
        """Grounded inverse times a dense vector, as a Fraction array."""
        return self.inverse.dot(vector)

    def potential(self, sources):
        """Potential for current ``sources`` (vertex id -> injected current).

        Raises
        ------
        UnbalancedSourcesError
            Currents do not sum to zero
        """
        if sum(Fraction(value) for value in sources.values()) != 0:
            raise UnbalancedSourcesError('sources sum to %s instead of 0'
                                         % sum(Fraction(v) for v in sources.values()))
        values = self.apply(self.vector(sources))
        return PotentialVector(zip(self._order, values), self._ground)

    def resistance(self, x, y):
        inverse = self.inverse
        i, j = self.index(x), self.index(y)
        return inverse[i, i] + inverse[j, j] - 2 * inverse[i, j]

    def resistance_matrix(self):
        return {(x, y): self.resistance(x, y) for x in self._order for y in self._order}


def solve_flow(graph, sources, ground):
    """Exact potential for balanced current sources, grounded at ``ground``.

    Parameters
    ----------
    graph : MetrizedGraph
        Connected graph
    sources : dict
        Vertex id -> injected current, summing to zero
    ground : str
        Vertex held at potential 0

    Returns
    -------
    PotentialVector
        Potential on every vertex

    Raises
    ------
    UnbalancedSourcesError
        Currents do not sum to zero

    Example
    -------

        >>> solve_flow(theta, {'u': 1, 'w': -1}, 'w')['u']
        Fraction(1, 3)
    """
    return Circuit(graph, ground=ground).potential(sources)


def _as_vertices(graph, points):
    subdivision = split_edges(graph, points)
    return subdivision.graph, [subdivision.locate(point).vertex for point in points]


def j_function(graph, zeta, y, x):
    """Potential at ``x`` for unit current in at ``y`` and out at ``zeta``.

    Grounded at ``zeta``. Interior points are turned into vertices first.
    """
    network, (zeta_id, y_id, x_id) = _as_vertices(graph, [zeta, y, x])
    sources = dict()
    if y_id != zeta_id:
        sources = {y_id: Fraction(1), zeta_id: Fraction(-1)}
    return Circuit(network, ground=zeta_id).potential(sources)[x_id]


def resistance(graph, x, y):
    """Effective resistance between two points.

    Example
    -------

        >>> resistance(circle, VertexPoint('v'), EdgePoint('e', Fraction(1, 4)))
        Fraction(3, 16)
    """
    network, (x_id, y_id) = _as_vertices(graph, [x, y])
    return Circuit(network).resistance(x_id, y_id)


def resistance_matrix(graph):
    return Circuit(graph).resistance_matrix()


def foster_sum(graph):
    """Sum of ``R(e) / L_e`` over edges; equals ``|V| - 1`` on connected graphs."""
    circuit = Circuit(graph)
    return sum((circuit.resistance(edge.start, edge.end) / edge.length
                for edge in graph.edges), Fraction(0))


def cut_resistance(graph, edge_id):
    """Resistance between the endpoints of an edge once the edge is removed.

    Returns
    -------
    Fraction or Infinite
        ``INFINITE`` for bridges, 0 for loops
    """
    edge = graph.edge(edge_id)
    if edge.start == edge.end:
        return Fraction(0)
    remainder = nx.MultiGraph(graph.multigraph())
    remainder.remove_edge(edge.start, edge.end, key=edge.id)
    if not nx.has_path(remainder, edge.start, edge.end):
        return INFINITE
    component = nx.node_connected_component(remainder, edge.start)
    network = MetrizedGraph([v for v in graph.vertices if v.id in component],
                            [e for e in graph.edges
                             if e.id != edge.id and e.start in component])
    return Circuit(network).resistance(edge.start, edge.end)
