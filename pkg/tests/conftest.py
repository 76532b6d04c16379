import os
from fractions import Fraction
import pytest
from hypothesis import strategies as st
from admlab.admGraph import Vertex, Edge, MetrizedGraph, read_graph
from admlab.admSweep import pair_valences

SAMPLES = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'samples')


def sample_path(name):
    return os.path.join(SAMPLES, name)


@pytest.fixture
def circle():
    """Loop of length 1 on a genus 1 vertex."""
    return read_graph(sample_path('circle.graph'))


@pytest.fixture
def dumbbell():
    """Bridge of length 1 between two genus 1 vertices."""
    return read_graph(sample_path('dumbbell.graph'))


@pytest.fixture
def theta():
    """Three parallel unit edges between genus 0 vertices."""
    return read_graph(sample_path('theta.graph'))


@pytest.fixture
def single_vertex():
    return read_graph(sample_path('single_vertex.graph'))


@pytest.fixture
def path_graph():
    return read_graph(sample_path('path.graph'))


lengths = st.builds(Fraction, st.integers(min_value=1, max_value=12),
                    st.integers(min_value=1, max_value=4))


@st.composite
def metrized_graphs(draw, max_vertices=3, max_extra=2, min_genus=2, max_genus=3):
    """Connected graphs with loops and parallel edges allowed, genus in range.

    Vertices of valence below 2 always carry genus, so the canonical divisor
    is effective. The genus range widens when those vertices need it.
    """
    count = draw(st.integers(min_value=1, max_value=max_vertices))
    pairs = [(draw(st.integers(min_value=0, max_value=i - 1)), i) for i in range(1, count)]
    extra = draw(st.integers(min_value=0, max_value=max_extra))
    for _ in range(extra):
        pairs.append((draw(st.integers(0, count - 1)), draw(st.integers(0, count - 1))))
    needy = [i for i, valence in enumerate(pair_valences(count, pairs)) if valence < 2]
    floor = extra + len(needy)
    target = draw(st.integers(min_value=max(min_genus, floor), max_value=max(max_genus, floor)))
    genera = [int(i in needy) for i in range(count)]
    for _ in range(target - floor):
        genera[draw(st.integers(0, count - 1))] += 1
    vertices = [Vertex('v%d' % i, genera[i]) for i in range(count)]
    edges = [Edge('e%d' % i, 'v%d' % a, 'v%d' % b, draw(lengths))
             for i, (a, b) in enumerate(pairs)]
    return MetrizedGraph(vertices, edges)
