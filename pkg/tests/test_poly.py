from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from distideals.digraph import circuit, complete, distances
from distideals.linalg import determinant
from distideals.poly import (T_CONTEXT, MonomialOrder, MultiPoly, VarContext, collapse_to_t,
                             dt_matrix, dx_matrix, minors, parse_poly, sym_det, univariate_det)

from conftest import strong_digraphs

CTX = VarContext.indexed(3)


@st.composite
def polys(draw, ctx=CTX, max_terms=5, max_exp=3):
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * len(ctx)), st.integers(-20, 20), max_size=max_terms))
    return MultiPoly(ctx, terms)


points = st.tuples(*[st.integers(-5, 5)] * 3)


def test_small_determinants():
    assert sym_det(dx_matrix(circuit(3))) == parse_poly("x0*x1*x2 - 2*x0 - 2*x1 - 2*x2 + 9", CTX)
    assert sym_det(dx_matrix(complete(3))) == parse_poly("x0*x1*x2 - x0 - x1 - x2 + 2", CTX)
    assert sym_det(dt_matrix(circuit(3))).format() == "t^3 - 6*t + 9"
    assert sym_det(dt_matrix(complete(3))).format() == "t^3 - 3*t + 2"


def test_two_minors_of_c3():
    got = set(minors(dx_matrix(circuit(3)), 2))
    want = {parse_poly(s, CTX) for s in
            ["x0*x1 - 2", "x0 - 4", "1 - 2*x1", "2*x0 - 1", "x0*x2 - 2", "x2 - 4", "4 - x1",
             "2*x2 - 1", "x1*x2 - 2"]}
    assert got - {CTX.zero()} == want


def test_minor_count_and_order():
    m = dx_matrix(circuit(4))
    assert len(minors(m, 2)) == 36
    ctx4 = VarContext.indexed(4)
    assert minors(m, 1)[:2] == [ctx4.var(0), ctx4.const(1)]
    assert minors(m, 4) == [sym_det(m)]


def test_format_and_parse():
    p = parse_poly("-3*x0^2*x1 + x2 - 7", CTX)
    assert p.format() == "-3*x0^2*x1 + x2 - 7"
    assert parse_poly(p.format(), CTX) == p
    assert CTX.zero().format() == "0"
    with pytest.raises(ValueError):
        parse_poly("x9 + 1", CTX)
    with pytest.raises(ValueError):
        parse_poly("", CTX)


def test_evaluate_errors():
    with pytest.raises(ValueError):
        CTX.var(0).evaluate([1, 2])
    assert CTX.var("x1").evaluate({"x0": 5, "x1": 7, "x2": 0}) == 7


def test_context_mismatch():
    with pytest.raises(ValueError):
        CTX.var(0) + VarContext.indexed(2).var(0)


def test_orders():
    x0, x1, x2 = CTX.gens()
    p = x0 * x2 + x1 ** 2
    assert p.leading_monomial(MonomialOrder.DEGREVLEX) == (0, 2, 0)
    assert p.leading_monomial(MonomialOrder.LEX) == (1, 0, 1)


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == CTX.zero()


@given(polys(), polys(), points)
def test_evaluation_is_a_homomorphism(a, b, pt):
    assert (a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)
    assert (a - b).evaluate(pt) == a.evaluate(pt) - b.evaluate(pt)


@given(polys())
def test_parse_roundtrip(p):
    assert parse_poly(p.format(), CTX) == p


@given(polys(), st.integers(-4, 4))
def test_collapse_matches_diagonal_evaluation(p, t):
    assert collapse_to_t(p).evaluate([t]) == p.evaluate([t, t, t])


@given(strong_digraphs(max_n=6), st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_sym_det_agrees_with_bareiss(g, pt):
    m = dx_matrix(g)
    point = pt[:g.n]
    assert sym_det(m).evaluate(point) == determinant(m.evaluate(point).rows)


@given(strong_digraphs(max_n=5), st.integers(1, 5))
def test_minors_evaluate_to_integer_minors(g, k):
    k = min(k, g.n)
    d = distances(g)
    ms = minors(dx_matrix(g), k)
    ints = [determinant([[d[i][j] for j in cs] for i in rs])
            for rs in combinations(range(g.n), k) for cs in combinations(range(g.n), k)]
    assert [p.evaluate([0] * g.n) for p in ms] == ints


@given(strong_digraphs(max_n=7))
def test_univariate_det_matches_sym_det(g):
    m = dt_matrix(g)
    assert univariate_det(m) == sym_det(m)
    assert univariate_det(m).ctx == T_CONTEXT
