from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dqcomm.circuit import gen_qft, parse_gatelist
from dqcomm.graph import (
    Partition,
    QubitGraph,
    build_qubit_graph,
    cut_edges,
    cut_weight,
    dispersion_stats,
    intra_weight,
)

DISP_A = QubitGraph.from_edges(6, [(0, 3, 1), (0, 4, 1), (1, 4, 1), (0, 5, 2), (1, 3, 1)])
DISP_B = QubitGraph.from_edges(6, [(0, 2, 1), (0, 3, 1), (0, 4, 1), (1, 2, 1), (1, 4, 1), (3, 5, 1)])


def test_qft4_graph_all_pairs_once():
    g = build_qubit_graph(gen_qft(4))
    assert g.edges() == [(i, j, 1) for i in range(4) for j in range(i + 1, 4)]


def test_no_two_qubit_gates_gives_zero_matrix():
    g = build_qubit_graph(parse_gatelist("qubits 3\nh 0\nx 2"))
    assert not g.w.any()


def test_circ6_graph(circ6):
    g = build_qubit_graph(circ6)
    expected = {(1, 4): 2, (0, 3): 1, (0, 5): 1, (0, 4): 1, (0, 2): 1, (1, 3): 1, (2, 5): 1}
    assert {(i, j): w for i, j, w in g.edges()} == expected
    assert g.total_weight == 8


def test_disp_a_dispersion():
    stats = dispersion_stats(DISP_A, Partition(2, (0, 0, 0, 1, 1, 1)))
    assert (stats.sum_w, stats.n_e, stats.f_gg) == (6, 5, Fraction(6, 5))
    assert stats.f_gg_str == "6/5"


def test_disp_b_dispersion():
    # layout: {q0, q1, q5} above {q2, q3, q4}
    stats = dispersion_stats(DISP_B, Partition(2, (0, 0, 1, 1, 1, 0)))
    assert (stats.sum_w, stats.n_e) == (6, 6)
    assert stats.f_gg_str == "6/6"


def test_single_partition_has_no_dispersion():
    stats = dispersion_stats(DISP_A, Partition(2, (1,) * 6))
    assert (stats.sum_w, stats.n_e, stats.f_gg) == (0, 0, None)
    assert stats.f_gg_str is None


def test_circ6_reference_partition_cut(circ6):
    g = build_qubit_graph(circ6)
    assert cut_weight(g, Partition(2, (0, 1, 0, 1, 1, 0))) == 2


def test_path_graph_cut():
    g = QubitGraph.from_edges(3, [(0, 1, 1), (1, 2, 1)])
    assert cut_weight(g, Partition(2, (0, 1, 1))) == 1
    assert cut_weight(g, Partition(2, (0, 0, 0))) == 0


def test_graph_validation():
    with pytest.raises(ValueError):
        QubitGraph(2, np.array([[0, 1], [2, 0]]))
    with pytest.raises(ValueError):
        QubitGraph.from_edges(2, [(1, 1, 1)])
    with pytest.raises(ValueError):
        Partition(2, (0, 2))


def test_edgelist_round_trip(circ6):
    g = build_qubit_graph(circ6)
    text = g.to_edgelist()
    assert text.splitlines()[0] == "0 2 1"
    assert QubitGraph.from_edgelist(6, text) == g


def test_ascending_blocks():
    assert Partition.ascending_blocks(8, 3).counts == (2, 3, 3)
    assert Partition.ascending_blocks(8, 3).assign == (0, 0, 1, 1, 1, 2, 2, 2)
    assert Partition.ascending_blocks(64, 3).counts == (21, 21, 22)


@st.composite
def graph_and_partition(draw):
    n = draw(st.integers(1, 7))
    k = draw(st.integers(1, 4))
    weights = draw(st.lists(st.integers(0, 3), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    g = QubitGraph.from_edges(n, [(i, j, w) for (i, j), w in zip(pairs, weights)])
    assign = draw(st.lists(st.integers(0, k - 1), min_size=n, max_size=n))
    return g, Partition(k, tuple(assign))


@given(graph_and_partition())
def test_cut_plus_intra_is_total(gp):
    g, p = gp
    assert cut_weight(g, p) + intra_weight(g, p) == g.total_weight


@given(graph_and_partition(), st.randoms())
def test_dispersion_invariant_under_relabeling(gp, rnd):
    g, p = gp
    labels = list(range(p.k))
    rnd.shuffle(labels)
    relabeled = Partition(p.k, tuple(labels[a] for a in p.assign))
    assert dispersion_stats(g, relabeled) == dispersion_stats(g, p)


@given(graph_and_partition())
def test_dispersion_bounds(gp):
    g, p = gp
    s = dispersion_stats(g, p)
    assert s.n_e <= g.n_edges
    assert s.n_e == cut_edges(g, p)
    if s.n_e:
        assert 1 <= s.f_gg <= s.sum_w
    else:
        assert s.f_gg is None and s.sum_w == 0


def test_dispersion_matches_brute_pair_scan():
    rng = np.random.default_rng(5)
    for _ in range(20):
        n = 6
        w = np.triu(rng.integers(0, 3, size=(n, n)), 1)
        g = QubitGraph(n, w + w.T)
        for assign in product(range(2), repeat=n):
            p = Partition(2, assign)
            pairs = [(i, j) for i in range(n) for j in range(n) if i < j and w[i, j] and assign[i] != assign[j]]
            assert dispersion_stats(g, p).sum_w == sum(int(w[i, j]) for i, j in pairs)
            assert dispersion_stats(g, p).n_e == len(pairs)
