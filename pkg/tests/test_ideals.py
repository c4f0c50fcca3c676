from __future__ import annotations

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from distideals.digraph import (circuit, complete, distance_matrix, enumerate_strong,
                                from_arc_list)
from distideals.ideals import (Ideal, constant_minor_gcd, distance_ideal, distance_ideal_trivial,
                               evaluate_ideal, ideal_from, ideals_equal, is_trivial, phi,
                               phi_is_one, second_ideal_trivial, univariate_distance_ideal)
from distideals.linalg import gcd_of_minors
from distideals.poly import T_CONTEXT, MonomialOrder, VarContext, parse_poly

from conftest import strong_digraphs

C4_WITH_DIGON = from_arc_list(4, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 3), (3, 1)])


def ideal_of(ctx, *texts):
    return ideal_from(ctx, [parse_poly(s, ctx) for s in texts])


def test_small_examples():
    c3 = VarContext.indexed(3)
    assert ideals_equal(distance_ideal(circuit(3), 2), ideal_of(c3, "x0+3", "x1+3", "x2+3", "7"))
    assert ideals_equal(distance_ideal(complete(3), 2), ideal_of(c3, "x0-1", "x1-1", "x2-1"))
    assert ideals_equal(univariate_distance_ideal(circuit(3), 2), ideal_of(T_CONTEXT, "t+3", "7"))
    assert ideals_equal(univariate_distance_ideal(circuit(3), 3),
                        ideal_of(T_CONTEXT, "t^3-6*t+9"))
    assert ideals_equal(univariate_distance_ideal(complete(3), 2), ideal_of(T_CONTEXT, "t-1"))
    assert ideals_equal(univariate_distance_ideal(complete(3), 3),
                        ideal_of(T_CONTEXT, "t^3-3*t+2"))
    c4 = VarContext.indexed(4)
    assert ideals_equal(distance_ideal(C4_WITH_DIGON, 2),
                        ideal_of(c4, "x0+2", "x1+1", "x2+2", "x3+1", "3"))


def test_ideals_equal_detects_difference():
    c3 = VarContext.indexed(3)
    assert not ideals_equal(distance_ideal(circuit(3), 2), ideal_of(c3, "x0+3", "x1+3", "x2+3"))
    with pytest.raises(ValueError):
        ideals_equal(distance_ideal(circuit(3), 2), ideal_of(T_CONTEXT, "t"))


def test_triviality_and_phi():
    assert is_trivial(distance_ideal(circuit(3), 1))
    assert not is_trivial(distance_ideal(circuit(3), 2))
    assert phi(circuit(3)).phi == 1
    assert phi(circuit(5)).phi == 2
    assert phi(complete(4)).phi == 1
    assert str(phi(circuit(3))) == "Phi=1 flags=T.."
    assert phi_is_one(circuit(3)) and not phi_is_one(circuit(5))
    assert second_ideal_trivial(circuit(5)) and not second_ideal_trivial(circuit(3))


def test_index_range_and_evaluation_errors():
    with pytest.raises(ValueError):
        distance_ideal(circuit(3), 4)
    with pytest.raises(ValueError):
        univariate_distance_ideal(circuit(3), 0)
    with pytest.raises(ValueError):
        evaluate_ideal(distance_ideal(circuit(3), 2), [0, 0])
    with pytest.raises(ValueError):
        Ideal(T_CONTEXT, [VarContext.indexed(2).var(0)])


def test_phi_distribution_up_to_four_vertices():
    counts = Counter()
    for n in range(1, 5):
        for g in enumerate_strong(n):
            counts[(n, phi(g).phi)] += 1
    assert counts == {(1, 0): 1, (2, 1): 1, (3, 1): 12, (3, 2): 6, (4, 1): 56, (4, 2): 1502,
                      (4, 3): 48}


@given(strong_digraphs(max_n=5), st.integers(1, 5))
def test_evaluation_at_zero_is_minor_gcd(g, i):
    i = min(i, g.n)
    want = gcd_of_minors(distance_matrix(g), i)
    assert evaluate_ideal(distance_ideal(g, i), [0] * g.n) == want
    assert evaluate_ideal(univariate_distance_ideal(g, i), [0]) == want


@given(strong_digraphs(min_n=2, max_n=4), st.integers(1, 3))
def test_ideal_chain(g, i):
    i = min(i, g.n - 1)
    small, big = distance_ideal(g, i + 1), distance_ideal(g, i)
    assert all(big.contains(p) for p in small.generators)


@given(strong_digraphs(min_n=2, max_n=4), st.integers(1, 4), st.randoms(use_true_random=False))
def test_isomorphism_invariance(g, i, rnd):
    i = min(i, g.n)
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    a, b = distance_ideal(g, i), distance_ideal(h, i)
    # relabelling vertices renames variables, so compare after x_v -> x_perm(v)
    images = [b.ctx.var(perm[v]) for v in range(g.n)]
    renamed = Ideal(b.ctx, (p.substitute(b.ctx, images) for p in a.generators))
    assert ideals_equal(renamed, b)
    assert is_trivial(a) == is_trivial(b)


@given(strong_digraphs(max_n=4), st.integers(1, 4))
def test_univariate_ideal_is_collapse(g, i):
    i = min(i, g.n)
    assert ideals_equal(univariate_distance_ideal(g, i), distance_ideal(g, i).collapse())


@given(strong_digraphs(max_n=6), st.integers(1, 3))
def test_constant_minor_screen_is_sound(g, k):
    k = min(k, g.n)
    fast = distance_ideal_trivial(g, k)
    if constant_minor_gcd(g, k) == 1:
        assert is_trivial(distance_ideal(g, k))
    if g.n <= 4:
        assert fast == is_trivial(distance_ideal(g, k))


@given(strong_digraphs(max_n=4), st.integers(1, 4))
def test_triviality_independent_of_order(g, i):
    i = min(i, g.n)
    ideal = distance_ideal(g, i)
    assert is_trivial(ideal, MonomialOrder.LEX) == is_trivial(ideal, MonomialOrder.DEGREVLEX)
