"""Graph model, parity matrix, degrees, and girth."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from protolift import (
    INFINITE_GIRTH,
    InvalidMatrix,
    InvalidNode,
    TannerGraph,
    from_multiplicity_matrix,
    girth,
    node_degrees,
    to_parity_matrix,
)

from oracles import girth_by_cycle_enumeration, girth_by_edge_deletion, random_graph


def test_from_multiplicity_matrix_simple():
    g = from_multiplicity_matrix([[1, 1], [1, 1]])
    assert g.num_vars == 2
    assert g.num_checks == 2
    assert g.num_edges == 4
    assert node_degrees(g) == ((2, 2), (2, 2))


def test_from_multiplicity_matrix_parallel():
    g = from_multiplicity_matrix([[2]])
    assert (g.num_vars, g.num_checks, g.num_edges) == (1, 1, 2)
    assert g.edges == ((0, 0), (0, 0))
    assert g.has_parallel_edges()


def test_from_multiplicity_matrix_zero():
    g = from_multiplicity_matrix([[0, 0], [0, 0]])
    assert (g.num_vars, g.num_checks, g.num_edges) == (2, 2, 0)


def test_from_multiplicity_matrix_errors():
    with pytest.raises(InvalidMatrix):
        from_multiplicity_matrix([[-1]])
    with pytest.raises(InvalidMatrix):
        from_multiplicity_matrix(np.zeros((0, 3), dtype=int))
    with pytest.raises(InvalidMatrix):
        from_multiplicity_matrix([[1.5]])
    # Integral floats are accepted.
    g = from_multiplicity_matrix([[2.0]])
    assert g.num_edges == 2


def test_graph_rejects_out_of_range_ids():
    with pytest.raises(InvalidNode):
        TannerGraph(num_vars=1, num_checks=1, edges=((1, 0),))
    with pytest.raises(InvalidNode):
        TannerGraph(num_vars=1, num_checks=1, edges=((0, 1),))
    with pytest.raises(InvalidNode):
        TannerGraph(num_vars=-1, num_checks=0, edges=())


def test_to_parity_matrix_mod2():
    assert to_parity_matrix(from_multiplicity_matrix([[2]])).tolist() == [[0]]
    assert to_parity_matrix(from_multiplicity_matrix([[1, 1], [1, 1]])).tolist() == [
        [1, 1],
        [1, 1],
    ]
    assert to_parity_matrix(from_multiplicity_matrix([[3, 1], [0, 2]])).tolist() == [
        [1, 1],
        [0, 0],
    ]


def test_node_degrees_examples():
    assert node_degrees(from_multiplicity_matrix([[2]])) == ((2,), (2,))
    assert node_degrees(from_multiplicity_matrix([[1, 1], [1, 0]])) == ((2, 1), (2, 1))


@given(
    st.lists(
        st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=5),
        min_size=1,
        max_size=5,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_multiplicity_round_trip(rows):
    m = np.array(rows, dtype=np.int64)
    g = from_multiplicity_matrix(m)
    assert np.array_equal(g.multiplicity_matrix(), m)
    var_deg, check_deg = node_degrees(g)
    assert sum(var_deg) == sum(check_deg) == g.num_edges


def test_edge_layout_is_deterministic():
    m = [[0, 2], [1, 1]]
    g1 = from_multiplicity_matrix(m)
    g2 = from_multiplicity_matrix(m)
    assert g1 == g2
    assert g1.edges == ((1, 0), (1, 0), (0, 1), (1, 1))


def test_girth_examples():
    assert girth(from_multiplicity_matrix([[1, 1], [1, 1]])) == 4
    assert girth(from_multiplicity_matrix([[2]])) == 2
    assert girth(from_multiplicity_matrix([[1, 1], [1, 0]])) == INFINITE_GIRTH


def test_girth_eight_cycle():
    # Single 8-cycle: 4 vars, 4 checks, checks of degree 2.
    m = np.zeros((4, 4), dtype=int)
    for i in range(4):
        m[i, i] = 1
        m[i, (i + 1) % 4] = 1
    assert girth(from_multiplicity_matrix(m)) == 8


def test_girth_empty_graph():
    assert girth(from_multiplicity_matrix([[0]])) == INFINITE_GIRTH


def test_girth_matches_edge_deletion_oracle():
    rng = np.random.default_rng(2024)
    for _ in range(300):
        g = random_graph(rng, 6, 6, max_mult=2, density=0.45)
        assert girth(g) == girth_by_edge_deletion(g), g


def test_girth_matches_cycle_enumeration_oracle():
    rng = np.random.default_rng(77)
    for _ in range(120):
        g = random_graph(rng, 6, 6, density=0.4)
        if g.num_vars + g.num_checks > 12:
            continue
        assert girth(g) == girth_by_cycle_enumeration(g), g


@settings(max_examples=60)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_girth_two_oracles_agree_with_library(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 5, 5, max_mult=2, density=0.5)
    gth = girth(g)
    assert gth == girth_by_edge_deletion(g)
    if g.num_vars + g.num_checks <= 10:
        assert gth == girth_by_cycle_enumeration(g)
    if gth != INFINITE_GIRTH:
        assert gth >= 2 and gth % 2 == 0


def test_adjacency_repeats_parallel_edges():
    g = from_multiplicity_matrix([[2, 1]])
    assert g.var_adjacency == ((0, 0), (0,))
    assert g.check_adjacency == ((0, 0, 1),)
