from __future__ import annotations

from itertools import permutations
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from distideals.digraph import circuit, complete, distance_matrix, lambda_digraph
from distideals.linalg import IntMatrix, determinant, gcd_of_minors, smith_normal_form


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        total += (-1) ** inv * prod(rows[i][p[i]] for i in range(n))
    return total


int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c),
                           min_size=r, max_size=r)))
square = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


def test_circuit_snf_values():
    assert smith_normal_form(distance_matrix(circuit(4))).diagonal == (1, 1, 4, 24)
    assert smith_normal_form(distance_matrix(circuit(5))).diagonal == (1, 1, 5, 5, 50)
    assert determinant(distance_matrix(circuit(4))) == -96


def test_gcd_of_minors_c5():
    # Delta_4 = 1*1*5*5
    assert gcd_of_minors(distance_matrix(circuit(5)), 4) == 25


def test_small_named_snfs():
    assert smith_normal_form(distance_matrix(complete(3))).diagonal == (1, 1, 2)
    assert smith_normal_form(distance_matrix(lambda_digraph((1, 1, 0, 1)))).diagonal == (1, 1, 5)


def test_zero_and_rank_deficient():
    r = smith_normal_form([[0, 0], [0, 0]])
    assert r.diagonal == (0, 0) and r.rank == 0
    r = smith_normal_form([[2, 4], [1, 2]])
    assert r.diagonal == (1, 0) and r.invariant_factors == (1,)


def test_text_roundtrip_and_errors():
    m = IntMatrix.from_rows([[1, -2, 3], [4, 5, 6]])
    assert IntMatrix.from_text(m.to_text()) == m
    with pytest.raises(ValueError):
        IntMatrix.from_text("2 2\n1 2 3")
    with pytest.raises(ValueError):
        gcd_of_minors(m, 3)
    with pytest.raises(ValueError):
        determinant(m)


@given(square)
def test_bareiss_matches_leibniz(rows):
    assert determinant(rows) == leibniz_det(rows)


@given(int_matrices)
def test_snf_matches_sympy(rows):
    ours = smith_normal_form(rows)
    theirs = sympy_snf(Matrix(rows), domain=ZZ)
    diag = [abs(theirs[i, i]) for i in range(min(theirs.shape))]
    assert list(ours.diagonal) == diag


@given(int_matrices)
def test_snf_divisibility_and_minor_gcds(rows):
    r = smith_normal_form(rows)
    f = r.invariant_factors
    assert all(b % a == 0 for a, b in zip(f, f[1:]))
    assert all(x > 0 for x in f)
    for i in range(1, min(len(rows), len(rows[0])) + 1):
        assert gcd_of_minors(rows, i) == (prod(r.diagonal[:i]) if i <= r.rank else 0)


@given(square)
def test_snf_product_is_abs_det(rows):
    assert prod(smith_normal_form(rows).diagonal) == abs(determinant(rows))
