from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from distideals.digraph import (Digraph, LambdaParams, MatrixKind, NotStrongError, arc_slots,
                                are_isomorphic, circuit, complete, complete_bipartite,
                                count_strong_classes, diameter, digraph_from_mask, distance_matrix,
                                distances, enumerate_strong, find_isomorphism, from_arc_list,
                                is_strong, lambda_digraph, strong_masks)

from conftest import strong_digraphs


def to_nx(g: Digraph) -> nx.DiGraph:
    h = nx.DiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.arcs)
    return h


def test_circuit_distances():
    for n in range(2, 9):
        d = distances(circuit(n))
        assert all(d[i][j] == (j - i) % n for i in range(n) for j in range(n))
        assert diameter(circuit(n)) == n - 1


def test_derived_matrices_c3():
    g = circuit(3)
    assert distance_matrix(g).rows == ((0, 1, 2), (2, 0, 1), (1, 2, 0))
    assert distance_matrix(g, "DL").rows == ((3, -1, -2), (-2, 3, -1), (-1, -2, 3))
    assert distance_matrix(g, MatrixKind.DQ).rows == ((3, 1, 2), (2, 3, 1), (1, 2, 3))
    assert distance_matrix(g, "Ddeg").rows == ((1, -1, -2), (-2, 1, -1), (-1, -2, 1))
    assert distance_matrix(g, "DdegPlus").rows == ((1, 1, 2), (2, 1, 1), (1, 2, 1))


def test_not_strong_and_bad_input():
    path = from_arc_list(3, [(0, 1), (1, 2)])
    assert not is_strong(path)
    with pytest.raises(NotStrongError):
        distances(path)
    with pytest.raises(ValueError):
        Digraph(2, frozenset({(0, 0)}))
    with pytest.raises(ValueError):
        Digraph(2, frozenset({(0, 2)}))


def test_text_formats():
    g = circuit(4)
    assert Digraph.from_text(g.to_text()) == g
    assert Digraph.from_text("0 1 0\n0 0 1\n1 0 0\n") == circuit(3)
    assert Digraph.from_text("n=3\n0 1 0\n0 0 1\n1 0 0") == circuit(3)
    assert Digraph.from_text("n=1") == Digraph(1)
    with pytest.raises(ValueError):
        Digraph.from_text("n=2\n0 1")


def test_named_families():
    assert len(complete(4).arcs) == 12
    assert complete_bipartite(2, 3).is_symmetric() and len(complete_bipartite(2, 3).arcs) == 12
    assert lambda_digraph((4, 0, 0, 0)) == complete(4)
    assert are_isomorphic(lambda_digraph((0, 2, 0, 3)), complete_bipartite(2, 3))
    assert are_isomorphic(lambda_digraph((0, 1, 0, 1)), complete(2))
    assert circuit(2) == complete(2)
    assert LambdaParams(1, 2, 3, 4).swapped() == LambdaParams(3, 4, 1, 2)


def test_lambda_symmetry():
    for p in [(1, 1, 1, 1), (2, 1, 0, 1), (1, 2, 1, 3), (0, 2, 2, 1)]:
        g, h = lambda_digraph(p), lambda_digraph(LambdaParams(*p).swapped())
        assert are_isomorphic(g, h)


def test_enumeration_counts():
    assert [len(strong_masks(n)) for n in range(1, 5)] == [1, 1, 18, 1606]
    assert [count_strong_classes(n) for n in range(1, 5)] == [1, 1, 5, 83]


def test_enumeration_n5_counts():
    assert len(strong_masks(5)) == 565080
    assert count_strong_classes(5) == 5048


def test_enumeration_matches_networkx():
    for n in (3, 4):
        ours = {g.arcs for g in enumerate_strong(n)}
        slots = arc_slots(n)
        theirs = set()
        for mask in range(1 << len(slots)):
            g = digraph_from_mask(n, mask)
            if nx.is_strongly_connected(to_nx(g)):
                theirs.add(g.arcs)
        assert ours == theirs


def test_mask_roundtrip():
    rng = random.Random(1)
    for _ in range(50):
        n = rng.randint(1, 5)
        mask = rng.randrange(1 << (n * (n - 1))) if n > 1 else 0
        assert digraph_from_mask(n, mask).mask == mask


@given(strong_digraphs(max_n=7))
def test_distances_match_networkx(g):
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    d = distances(g)
    assert all(d[u][v] == ref[u][v] for u in range(g.n) for v in range(g.n))
    assert is_strong(g) == nx.is_strongly_connected(to_nx(g))


@given(strong_digraphs(max_n=7), st.randoms(use_true_random=False))
def test_relabel_is_isomorphic(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    phi = find_isomorphism(g, h)
    assert phi is not None
    assert all(((phi[u], phi[v]) in h.arcs) for u, v in g.arcs)
    assert nx.is_isomorphic(to_nx(g), to_nx(h))


@given(strong_digraphs(max_n=5), strong_digraphs(max_n=5))
def test_isomorphism_agrees_with_networkx(g, h):
    assert are_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))
