from __future__ import annotations

from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from distideals.digraph import (Digraph, LambdaParams, NotStrongError, are_isomorphic, circuit,
                                complete, complete_bipartite, from_arc_list, is_strong,
                                lambda_digraph)
from distideals.patterns import (Pattern, builtin, builtin_names, classify, contains_pattern,
                                 first_gamma1_pattern, is_f6_free_graph, is_gamma1_pattern_free,
                                 is_lambda_blocks, lambda_parameters_bruteforce,
                                 lambda_realizations)

from conftest import strong_digraphs

C4_WITH_DIGON = from_arc_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (3, 1)])


def undirected(n, edges):
    return from_arc_list(n, [(u, v) for u, v in edges] + [(v, u) for u, v in edges])


def embeds_bruteforce(g: Digraph, p: Pattern):
    for image in permutations(range(g.n), p.k):
        if all((image[u], image[v]) in g.arcs for u, v in p.required) and \
                not any((image[u], image[v]) in g.arcs for u, v in p.forbidden):
            return image
    return None


def lambda_params(n_max):
    for n in range(1, n_max + 1):
        for a in range(n + 1):
            for b in range(n + 1 - a):
                for c in range(n + 1 - a - b):
                    p = LambdaParams(a, b, c, n - a - b - c)
                    if is_strong(lambda_digraph(p)):
                        yield p


def test_pattern_sizes_are_pinned():
    sizes = {name: (builtin(name).k, len(builtin(name).required), len(builtin(name).forbidden))
             for name in builtin_names()}
    assert sizes == {"P4": (4, 3, 3), "F1": (4, 2, 3), "F2": (3, 5, 1), "F3": (4, 3, 1),
                     "F4": (3, 3, 3), "F5": (3, 3, 3), "F6": (4, 6, 2)}
    assert builtin("F2").forbidden == {(1, 0)}
    assert builtin("f1") == builtin("F1")
    with pytest.raises(ValueError):
        builtin("F7")


def test_pattern_text():
    p = Pattern.from_text("k=3; B: u->v, v->w; C: w->u")
    assert p.required == {(0, 1), (1, 2)} and p.forbidden == {(2, 0)}
    assert Pattern.from_text(p.to_text()) == p
    assert Pattern.from_text("k=2; B: 0->1") == Pattern(2, frozenset({(0, 1)}), frozenset())
    for bad in ["B: u->v", "k=2; B: u-v", "k=2; B: u->w", "k=2; B: u->v; C: u->v", "k=2; X: 1"]:
        with pytest.raises(ValueError):
            Pattern.from_text(bad)


def test_containment_examples():
    assert contains_pattern(circuit(4), builtin("P4")) is not None
    assert contains_pattern(circuit(3), builtin("F2")) is None
    assert contains_pattern(complete(4), builtin("F2")) is None
    assert contains_pattern(circuit(2), builtin("P4")) is None


def test_gamma1_examples():
    assert is_gamma1_pattern_free(C4_WITH_DIGON)
    assert not is_gamma1_pattern_free(circuit(5))
    assert is_gamma1_pattern_free(lambda_digraph((1, 1, 0, 1)))
    with pytest.raises(NotStrongError):
        is_gamma1_pattern_free(from_arc_list(2, [(0, 1)]))


def test_classify_examples():
    assert classify(circuit(3)).tag == "Circuit3"
    r = classify(complete(4))
    assert r.tag == "Lambda" and r.params == LambdaParams(4, 0, 0, 0)
    assert is_lambda_blocks(complete(4), r.params, r.blocks)
    r = classify(circuit(4))
    assert r.tag == "NotInGamma1" and r.pattern == "F1"
    assert contains_pattern(circuit(4), builtin("F1")) == r.embedding
    r = classify(C4_WITH_DIGON)
    assert r.tag == "Lambda" and are_isomorphic(lambda_digraph(r.params), C4_WITH_DIGON)
    assert r.to_dict()["tag"] == "Lambda" and str(r).startswith("Lambda(")
    with pytest.raises(NotStrongError):
        classify(from_arc_list(3, [(0, 1), (1, 2)]))


def test_f6_examples():
    assert is_f6_free_graph(complete_bipartite(2, 3))
    assert not is_f6_free_graph(undirected(4, [(0, 1), (1, 2), (2, 3)]))
    assert not is_f6_free_graph(undirected(4, [(0, 1), (1, 2), (2, 0), (2, 3)]))
    with pytest.raises(ValueError):
        is_f6_free_graph(circuit(3))


def test_lambda_recovery_up_to_seven_vertices():
    for p in lambda_params(7):
        g = lambda_digraph(p)
        r = classify(g)
        if g.n == 3 and len(g.arcs) == 3:
            assert r.tag == "Circuit3"
            continue
        assert r.tag == "Lambda"
        assert is_lambda_blocks(g, r.params, r.blocks)
        assert p in r.alternatives or p.swapped() in r.alternatives


def test_structural_recovery_matches_bruteforce():
    for p in lambda_params(6):
        g = lambda_digraph(p).relabel(list(reversed(range(sum(p.astuple())))))
        structural = [q for q, _ in lambda_realizations(g)]
        assert sorted(q.astuple() for q in structural) == \
            sorted(q.astuple() for q in lambda_parameters_bruteforce(g))


def test_f6_is_p4_paw_diamond_freeness():
    forbidden = [nx.path_graph(4), nx.Graph([(0, 1), (1, 2), (2, 0), (2, 3)]),
                 nx.Graph([(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)])]
    checked = 0
    for h in nx.graph_atlas_g():
        if not 1 <= h.number_of_nodes() <= 6 or not nx.is_connected(h):
            continue
        g = undirected(h.number_of_nodes(), h.edges())
        oracle = not any(GraphMatcher(h, f).subgraph_is_isomorphic() for f in forbidden)
        assert is_f6_free_graph(g) == oracle
        checked += 1
    assert checked == 143


@given(strong_digraphs(max_n=6), st.sampled_from(builtin_names()))
def test_first_embedding_is_lexicographic(g, name):
    p = builtin(name)
    assert contains_pattern(g, p) == embeds_bruteforce(g, p)


@given(strong_digraphs(max_n=6))
def test_classification_is_consistent(g):
    r = classify(g)
    if r.tag == "Lambda":
        assert is_lambda_blocks(g, r.params, r.blocks)
        assert r.params.astuple() == max(q.astuple() for q in r.alternatives)
        assert is_gamma1_pattern_free(g)
    elif r.tag == "Circuit3":
        assert are_isomorphic(g, circuit(3))
    else:
        assert (r.pattern, r.embedding) == first_gamma1_pattern(g)


@given(strong_digraphs(max_n=6), st.randoms(use_true_random=False))
def test_classification_is_isomorphism_invariant(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    a, b = classify(g), classify(g.relabel(perm))
    assert a.tag == b.tag and a.params == b.params
