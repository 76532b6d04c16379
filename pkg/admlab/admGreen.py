import logging
from collections import namedtuple
from fractions import Fraction
import numpy
import scipy.sparse
from scipy.sparse.linalg import spsolve
from admlab.admGraph import VertexPoint, EdgePoint, split_edges, check_point
from admlab.admGraph import canonical_divisor, serialize
from admlab.admCircuit import Circuit, INFINITE, cut_resistance
from admlab.admErrors import GenusError, MeasureMassError, MissingDataError
from admlab.admErrors import UnknownVertexError, UnknownEdgeError
from admlab.admErrors import InvariantViolation

r"""Canonical measure and Green's functions of a metrized graph.

The Laplacian convention is ``Δf = -f'' dx - Σ_P Σ_v d_v f(P) δ_P``. The
Green's function ``g_μ(·, y)`` solves ``Δ g = δ_y - μ`` with
``∫ g dμ = 0``. On an edge carrying mass ``m`` spread over length ``L`` it is
the quadratic ``a + b t + c t²`` with ``2 c L = m``.

**Solve outline**

    1. subdivide the graph so that the source is a vertex,
    2. solve the weighted graph Laplacian against the vertex loads
       ``δ_y(P) - μ({P}) - ½ Σ m_e`` over edge ends at ``P``,
    3. shift by the constant that makes ``∫ g dμ`` vanish.

Step 2 uses one exact grounded inverse per graph, shared by every source.
"""


class Quadratic(namedtuple('Quadratic', ['a', 'b', 'c'])):
    """``a + b t + c t²`` on an edge coordinate ``t``."""

    __slots__ = ()

    def at(self, offset):
        return self.a + self.b * offset + self.c * offset * offset

    def average(self, length):
        """Mean value over ``[0, length]``."""
        return self.a + self.b * length / 2 + self.c * length * length / 3

    @classmethod
    def interpolate(cls, samples):
        """Quadratic through three ``(t, value)`` samples with distinct ``t``."""
        (t0, v0), (t1, v1), (t2, v2) = [(Fraction(t), Fraction(v)) for t, v in samples]
        d01 = (v1 - v0) / (t1 - t0)
        d12 = (v2 - v1) / (t2 - t1)
        c = (d12 - d01) / (t2 - t0)
        b = d01 - c * (t0 + t1)
        a = v0 - b * t0 - c * t0 * t0
        return cls(a, b, c)


class Measure(object):
    """Signed measure: point masses on vertices, uniform masses on edges.

    Attributes
    ----------
    point_masses : dict
        vertex id -> mass
    edge_masses : dict
        edge id -> total mass spread uniformly over the edge
    total : Fraction
        Sum of all masses
    """

    def __init__(self, point_masses=None, edge_masses=None):
        self._points = {key: Fraction(value) for key, value in (point_masses or {}).items()
                        if value != 0}
        self._edges = {key: Fraction(value) for key, value in (edge_masses or {}).items()
                       if value != 0}
        self._total = sum(self._points.values(), Fraction(0)) + sum(self._edges.values(),
                                                                   Fraction(0))

    @classmethod
    def dirac(cls, vertex_id):
        return cls(point_masses={vertex_id: 1})

    @classmethod
    def from_divisor(cls, divisor):
        return cls(point_masses=divisor)

    @property
    def point_masses(self):
        return dict(self._points)

    @property
    def edge_masses(self):
        return dict(self._edges)

    @property
    def total(self):
        return self._total

    def point(self, vertex_id):
        return self._points.get(vertex_id, Fraction(0))

    def edge(self, edge_id):
        return self._edges.get(edge_id, Fraction(0))

    def is_positive(self):
        return all(value >= 0 for value in list(self._points.values()) + list(self._edges.values()))

    def check_support(self, graph):
        for vertex_id in self._points:
            if not graph.has_vertex(vertex_id):
                raise UnknownVertexError('measure charges unknown vertex %s' % vertex_id)
        for edge_id in self._edges:
            if not graph.has_edge(edge_id):
                raise UnknownEdgeError('measure charges unknown edge %s' % edge_id)

    def transport(self, subdivision):
        """Same measure on a subdivided graph; edge mass splits by length."""
        edges = dict()
        for edge_id, mass in self._edges.items():
            length = subdivision.original.edge(edge_id).length
            for piece, start, end in subdivision.pieces[edge_id]:
                edges[piece] = mass * (end - start) / length
        return Measure(self._points, edges)

    def _combine(self, other, sign):
        points = dict(self._points)
        for key, value in other._points.items():
            points[key] = points.get(key, Fraction(0)) + sign * value
        edges = dict(self._edges)
        for key, value in other._edges.items():
            edges[key] = edges.get(key, Fraction(0)) + sign * value
        return Measure(points, edges)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __mul__(self, factor):
        factor = Fraction(factor)
        return Measure({k: v * factor for k, v in self._points.items()},
                       {k: v * factor for k, v in self._edges.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self._points == other._points and self._edges == other._edges

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __repr__(self):
        return 'Measure(points=%s, edges=%s)' % (self._points, self._edges)


class PiecewiseQuadratic(object):
    """Function given by vertex values and one quadratic per edge."""

    def __init__(self, vertex_values, edge_quadratics):
        self.vertex_values = dict(vertex_values)
        self.edge_quadratics = dict(edge_quadratics)


def integrate(graph, function, measure):
    """Integral of a piecewise quadratic function against a measure.

    Parameters
    ----------
    graph : MetrizedGraph
        Graph the function lives on
    function : PiecewiseQuadratic
        Values on all vertices and a quadratic on every edge
    measure : Measure
        Measure on ``graph``

    Returns
    -------
    Fraction
        ``Σ_v f(v) m({v}) + Σ_e m(e) · mean of f over e``

    Raises
    ------
    MissingDataError
        A vertex value or an edge quadratic is missing

    Example
    -------

        >>> f = PiecewiseQuadratic({'u': 0, 'w': 1}, {'e': Quadratic(0, 1, 0)})
        >>> integrate(unit_path, f, Measure(edge_masses={'e': 1}))
        Fraction(1, 2)
    """
    total = Fraction(0)
    for vertex in graph.vertices:
        if vertex.id not in function.vertex_values:
            raise MissingDataError('no value on vertex %s' % vertex.id)
        total += Fraction(function.vertex_values[vertex.id]) * measure.point(vertex.id)
    for edge in graph.edges:
        if edge.id not in function.edge_quadratics:
            raise MissingDataError('no quadratic on edge %s' % edge.id)
        quadratic = Quadratic(*[Fraction(x) for x in function.edge_quadratics[edge.id]])
        total += measure.edge(edge.id) * quadratic.average(edge.length)
    return total


def canonical_measure(graph):
    """Canonical admissible measure of a graph.

    ``μ = (1/g) [Σ_v g_v δ_v + Σ_e L_e / (L_e + r_e) δ_e]`` where ``r_e`` is
    the resistance between the endpoints of ``e`` once ``e`` is removed.
    Bridges get coefficient 0 and loops 1.

    Raises
    ------
    GenusError
        Graph has genus 0
    """
    total_genus = graph.genus()
    if total_genus < 1:
        raise GenusError('canonical measure needs genus >= 1, got %d' % total_genus)
    points = {vertex.id: Fraction(vertex.genus, total_genus) for vertex in graph.vertices}
    edges = dict()
    for edge in graph.edges:
        cut = cut_resistance(graph, edge.id)
        if cut == INFINITE:
            continue
        edges[edge.id] = edge.length / (edge.length + cut) / total_genus
    measure = Measure(points, edges)
    if measure.total != 1:
        raise InvariantViolation('canonical measure has mass %s' % measure.total,
                                 graph=serialize(graph))
    return measure


class GreenSolution(object):
    """Green's function ``g_μ(·, y)`` for one source ``y``.

    Values are stored on the subdivided graph ``support`` in which ``y``
    and every refinement point are vertices; ``value()`` accepts points of
    the original graph.

    Attributes
    ----------
    source
        Source point ``y`` on the original graph
    measure
        Measure ``μ`` on the original graph
    values
        Support vertex id -> exact value
    quadratics
        Support edge id -> Quadratic along that edge
    """

    def __init__(self, source, measure, subdivision, support_measure, values):
        self.source = source
        self.measure = measure
        self.subdivision = subdivision
        self.support = subdivision.graph
        self.support_measure = support_measure
        self.values = values
        self.quadratics = dict()
        for edge in self.support.edges:
            c = support_measure.edge(edge.id) / (2 * edge.length)
            b = (values[edge.end] - values[edge.start]) / edge.length - c * edge.length
            self.quadratics[edge.id] = Quadratic(values[edge.start], b, c)
        self._source_vertex = subdivision.locate(source).vertex

    def value(self, point):
        """Exact value at a point of the original graph."""
        located = self.subdivision.locate(point)
        if isinstance(located, VertexPoint):
            return self.values[located.vertex]
        return self.quadratics[located.edge].at(located.offset)

    def function(self):
        return PiecewiseQuadratic(self.values, self.quadratics)

    def flux_defects(self):
        """Vertex id -> ``-Σ d_v g(P) - (δ_y - μ)({P})``, zero everywhere when exact."""
        outflow = {vertex_id: Fraction(0) for vertex_id in self.support.vertex_ids()}
        for edge in self.support.edges:
            quadratic = self.quadratics[edge.id]
            outflow[edge.start] += quadratic.b
            outflow[edge.end] -= quadratic.b + 2 * quadratic.c * edge.length
        defects = dict()
        for vertex_id, derivative in outflow.items():
            load = Fraction(int(vertex_id == self._source_vertex)) - self.support_measure.point(vertex_id)
            defects[vertex_id] = -derivative - load
        return defects

    def check_flux(self):
        return all(defect == 0 for defect in self.flux_defects().values())

    def centering(self):
        return integrate(self.support, self.function(), self.support_measure)

    def check_centered(self):
        return self.centering() == 0

    def check_curvature(self):
        return all(2 * self.quadratics[edge.id].c * edge.length == self.support_measure.edge(edge.id)
                   for edge in self.support.edges)


class GreenSolver(object):
    """Green's functions of one measure on one graph.

    The graph is subdivided once at ``points``; each source among those
    points (or among the vertices) then costs a matrix-vector product.

    **List of public available methods:**

    Methods
    -------
    solve(y)
        GreenSolution for source ``y``
    value(x, y)
        ``g_μ(x, y)``
    diagonal(edge_id)
        Quadratic ``t -> g_μ(x_t, x_t)`` on an edge

    Example
    -------

        >>> solver = GreenSolver(circle, canonical_measure(circle), third_points(circle))
        >>> solver.value(VertexPoint('v'), VertexPoint('v'))
        Fraction(1, 48)
    """

    def __init__(self, graph, measure, points=None):
        """Class Constructor.

        Parameters
        ----------
        graph : MetrizedGraph
            Connected graph
        measure : Measure
            Measure of total mass 1 on ``graph``
        points : list, optional
            Points to turn into vertices

        Raises
        ------
        MeasureMassError
            Total mass differs from 1
        """
        if measure.total != 1:
            raise MeasureMassError('measure has total mass %s instead of 1' % measure.total)
        measure.check_support(graph)
        self._graph = graph
        self._measure = measure
        self._points = list(points or [])
        self._subdivision = split_edges(graph, self._points)
        support = self._subdivision.graph
        self._support_measure = measure.transport(self._subdivision)
        self._circuit = Circuit(support)
        loads = {vertex_id: self._support_measure.point(vertex_id)
                 for vertex_id in support.vertex_ids()}
        for edge in support.edges:
            half = self._support_measure.edge(edge.id) / 2
            loads[edge.start] += half
            loads[edge.end] += half
        self._order = support.vertex_ids()
        self._shift = self._circuit.apply(self._circuit.vector(loads))
        self._cache = dict()

    @property
    def graph(self):
        return self._graph

    @property
    def measure(self):
        return self._measure

    @property
    def subdivision(self):
        return self._subdivision

    @property
    def circuit(self):
        return self._circuit

    def solve(self, source):
        """Green's function with source ``source``.

        Sources that are not vertices of the subdivided graph are handled
        by a dedicated solver refined at the extra point.
        """
        source = check_point(self._graph, source)
        located = self._subdivision.locate(source)
        if not isinstance(located, VertexPoint):
            return GreenSolver(self._graph, self._measure, self._points + [source]).solve(source)
        if located.vertex in self._cache:
            return self._cache[located.vertex]
        column = self._circuit.inverse[:, self._circuit.index(located.vertex)]
        potential = dict(zip(self._order, column - self._shift))
        constant = sum((potential[v] * self._support_measure.point(v) for v in self._order),
                       Fraction(0))
        for edge in self._subdivision.graph.edges:
            mass = self._support_measure.edge(edge.id)
            constant += (mass * (potential[edge.start] + potential[edge.end]) / 2
                         - mass * mass * edge.length / 12)
        values = {vertex_id: value - constant for vertex_id, value in potential.items()}
        solution = GreenSolution(source, self._measure, self._subdivision,
                                 self._support_measure, values)
        self._cache[located.vertex] = solution
        return solution

    def value(self, x, y):
        return self.solve(y).value(x)

    def diagonal(self, edge_id):
        """Quadratic ``q`` with ``q(t) = g_μ(x_t, x_t)`` on edge ``edge_id``.

        Interpolates at offsets 0, L/2 and L and checks the result at L/3
        and 2L/3.

        Raises
        ------
        InvariantViolation
            Check points are off the interpolated quadratic
        """
        return edge_quadratic(self._graph, edge_id, self._diagonal_value)

    def _diagonal_value(self, point):
        return self.solve(point).value(point)


def edge_point(graph, edge_id, offset):
    """Point at ``offset`` along an edge; the endpoints become vertex points."""
    edge = graph.edge(edge_id)
    if offset == 0:
        return VertexPoint(edge.start)
    if offset == edge.length:
        return VertexPoint(edge.end)
    return EdgePoint(edge_id, Fraction(offset))


def third_points(graph, edge_ids=None):
    """Points at L/3, L/2 and 2L/3 of the given edges (all edges by default)."""
    points = list()
    for edge in graph.edges:
        if edge_ids is None or edge.id in edge_ids:
            points += [EdgePoint(edge.id, edge.length * k) for k in
                       (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3))]
    return points


def edge_quadratic(graph, edge_id, evaluate):
    """Quadratic through ``evaluate`` at offsets 0, L/2, L, checked at L/3 and 2L/3."""
    length = graph.edge(edge_id).length
    samples = [(t, evaluate(edge_point(graph, edge_id, t)))
               for t in (Fraction(0), length / 2, length)]
    quadratic = Quadratic.interpolate(samples)
    for t in (length / 3, 2 * length / 3):
        if quadratic.at(t) != evaluate(edge_point(graph, edge_id, t)):
            raise InvariantViolation('values on edge %s are not quadratic at offset %s'
                                     % (edge_id, t), graph=serialize(graph))
    return quadratic


def green_solve(graph, mu, y):
    """Exact Green's function ``g_μ(·, y)``.

    Parameters
    ----------
    graph : MetrizedGraph
        Connected graph
    mu : Measure
        Measure of total mass 1
    y : VertexPoint or EdgePoint
        Source

    Returns
    -------
    GreenSolution
        Piecewise quadratic solution

    Raises
    ------
    MeasureMassError
        Mass of ``mu`` is not 1
    """
    return GreenSolver(graph, mu, [y]).solve(y)


def green_value(graph, mu, x, y):
    """``g_μ(x, y)``; symmetric in ``x`` and ``y``."""
    return GreenSolver(graph, mu, [x, y]).value(x, y)


def green_diagonal(graph, mu, edge_id=None):
    """Diagonal ``t -> g_μ(x_t, x_t)`` as a Quadratic.

    Without ``edge_id`` returns a dict over all edges, empty when the graph
    has none.
    """
    edge_ids = None if edge_id is None else [edge_id]
    if edge_id is not None:
        graph.edge(edge_id)
    solver = GreenSolver(graph, mu, third_points(graph, edge_ids))
    if edge_id is not None:
        return solver.diagonal(edge_id)
    return {edge.id: solver.diagonal(edge.id) for edge in graph.edges}

def discrete_oracle(graph, mu, y, segments_per_edge):
    """Floating point Green's function on a uniform grid.

    Every edge is cut into ``N`` segments of conductance ``N / L``. Edge
    mass is lumped half and half on the ends of each segment, the source
    snaps to the nearest grid node and the result is recentred so that the
    discrete integral against the lumped measure vanishes.

    Parameters
    ----------
    graph : MetrizedGraph
        Connected graph
    mu : Measure
        Measure of total mass 1
    y : VertexPoint or EdgePoint
        Source
    segments_per_edge : int
        Number of segments ``N >= 2``

    Returns
    -------
    dict
        Original vertex id -> approximate value
    """
    segments = int(segments_per_edge)
    if segments < 2:
        raise ValueError('segments per edge must be >= 2, got %d' % segments)
    y = check_point(graph, y)
    index = {vertex_id: i for i, vertex_id in enumerate(graph.vertex_ids())}
    size = len(index)
    rows, columns, conductances = list(), list(), list()
    masses = [float(mu.point(vertex_id)) for vertex_id in graph.vertex_ids()]
    source = index[y.vertex] if isinstance(y, VertexPoint) else None
    for edge in graph.edges:
        nodes = [index[edge.start]]
        for _ in range(segments - 1):
            nodes.append(size)
            masses.append(0.0)
            size += 1
        nodes.append(index[edge.end])
        conductance = segments / float(edge.length)
        lump = float(mu.edge(edge.id)) / segments / 2
        for left, right in zip(nodes, nodes[1:]):
            rows += [left, right, left, right]
            columns += [left, right, right, left]
            conductances += [conductance, conductance, -conductance, -conductance]
            masses[left] += lump
            masses[right] += lump
        if isinstance(y, EdgePoint) and y.edge == edge.id:
            source = nodes[int(round(float(y.offset / edge.length) * segments))]
    masses = numpy.array(masses)
    loads = -masses
    loads[source] += 1.0
    potential = numpy.zeros(size)
    if size > 1:
        laplacian = scipy.sparse.csr_matrix((conductances, (rows, columns)), shape=(size, size))
        potential[1:] = spsolve(laplacian[1:, 1:].tocsc(), loads[1:])
    potential -= masses.dot(potential)
    logging.debug(' -> oracle solved %d grid nodes', size)
    return {vertex_id: float(potential[i]) for vertex_id, i in index.items()}


def admissible_constant(graph, solver=None):
    """Constant ``c`` with ``c + g_μ(K, x) + g_μ(x, x) = 0`` for all ``x``.

    Evaluated at the first vertex; ``μ`` is the canonical measure.
    """
    if solver is None:
        solver = GreenSolver(graph, canonical_measure(graph))
    divisor = canonical_divisor(graph)
    anchor = VertexPoint(graph.vertices[0].id)
    solution = solver.solve(anchor)
    return -(solution.value(anchor)
             + sum((k * solution.value(VertexPoint(v)) for v, k in divisor.items()),
                   Fraction(0)))
