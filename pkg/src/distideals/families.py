"""Closed-form distance ideals and Smith normal forms for solved families.

Every ideal is produced in its family's own variable names together with the
digraph vertex each name belongs to, so it can be moved into the
vertex-indexed context ``x0..x_{n-1}`` and compared with the minor-generated
ideal.  Omit-one-factor products are built directly; no polynomial division
takes place.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .digraph import (Digraph, LambdaParams, circuit, complete, complete_bipartite, is_strong,
                      lambda_digraph)
from .ideals import Ideal
from .linalg import SnfResult
from .poly import T_CONTEXT, MultiPoly, VarContext, dt_matrix, univariate_det

CIRCULANT_MAX_N = 16


@dataclass(frozen=True)
class ClosedFormIdeal:
    """Generators of a family ideal.

    ``vertex_names[v]`` is the variable attached to diagonal entry v of the
    family digraph's distance matrix (None for ideals in ``t``).
    """

    family: str
    params: tuple[int, ...]
    k: int
    ctx: VarContext
    generators: tuple[MultiPoly, ...]
    vertex_names: tuple[str, ...] | None = None

    def ideal(self) -> Ideal:
        return Ideal(self.ctx, self.generators)

    def to_vertex_context(self) -> Ideal:
        """The same ideal written in ``x0..x_{n-1}``, vertex order of :meth:`digraph`."""
        if self.vertex_names is None:
            return self.ideal()
        target = VarContext.indexed(len(self.vertex_names))
        mapping = {name: f"x{v}" for v, name in enumerate(self.vertex_names)}
        return Ideal(target, (g.rename(target, mapping) for g in self.generators))

    def digraph(self) -> Digraph:
        return _FAMILY_DIGRAPH[self.family](*self.params)


def _prod(factors: Sequence[MultiPoly], ctx: VarContext) -> MultiPoly:
    out = ctx.const(1)
    for f in factors:
        out = out * f
    return out


def _check_k(k: int, top: int) -> None:
    if not 1 <= k <= top:
        raise ValueError(f"index k={k} outside 1..{top}")


# complete digraphs and stars -------------------------------------------------


def ideal_complete(n: int, k: int) -> ClosedFormIdeal:
    """``I_k(K_n)``: products of ``x_i - 1`` over (k-1)-subsets; the determinant at k = n."""
    if n < 1:
        raise ValueError("n must be positive")
    _check_k(k, n)
    ctx = VarContext.indexed(n)
    f = [x - 1 for x in ctx.gens()]
    if k < n:
        gens = [_prod([f[i] for i in s], ctx) for s in combinations(range(n), k - 1)]
    else:
        gens = [_prod(f, ctx) + sum((_prod(f[:j] + f[j + 1:], ctx) for j in range(n)),
                                    ctx.zero())]
    return ClosedFormIdeal("complete", (n,), k, ctx, tuple(gens), ctx.names)


def ideal_star(m: int, k: int) -> ClosedFormIdeal:
    """``I_k(K_{m,1})`` with leaves ``x1..xm`` and centre ``y``."""
    if m < 1:
        raise ValueError("m must be positive")
    _check_k(k, m + 1)
    ctx = VarContext.of([f"x{i}" for i in range(1, m + 1)] + ["y"])
    *xs, y = ctx.gens()
    f = [x - 2 for x in xs]
    c = 2 * y - 1
    if k <= m:
        gens = [c * _prod([f[i] for i in s], ctx) for s in combinations(range(m), k - 2)] if k >= 2 else []
        gens += [_prod([f[i] for i in s], ctx) for s in combinations(range(m), k - 1)]
    else:
        gens = [y * _prod(f, ctx) + c * sum((_prod(f[:i] + f[i + 1:], ctx) for i in range(m)),
                                            ctx.zero())]
    return ClosedFormIdeal("star", (m,), k, ctx, tuple(gens), ctx.names)


# two four-block subfamilies -------------------------------------------------


def _arrowhead_ideal(k: int, special: MultiPoly, factors: list[MultiPoly],
                     couplings: list[MultiPoly], ctx: VarContext) -> list[MultiPoly]:
    """Determinantal ideal of ``[[s, 1..1], [c_i, diag(f_i)]]``-type matrices.

    Below the top size the minors reduce to ``prod(f over a (k-1)-set S)`` and
    ``c_r * prod(f over S - r)`` for r in S; at full size, the determinant
    ``s*prod(f) - sum_r c_r*prod(f omitting r)``.
    """
    m = len(factors)
    if k == 1 and m > 0:
        return [ctx.const(1)]
    if k <= m:
        gens = []
        for s in combinations(range(m), k - 1):
            gens.append(_prod([factors[i] for i in s], ctx))
            for r in s:
                gens.append(couplings[r] * _prod([factors[i] for i in s if i != r], ctx))
        return gens
    total = special * _prod(factors, ctx)
    for r in range(m):
        total = total - couplings[r] * _prod(factors[:r] + factors[r + 1:], ctx)
    return [total]


def ideal_lambda_ab01(a: int, b: int, k: int) -> ClosedFormIdeal:
    """``I_k(Lambda(a,b,0,1))`` over ``x, y_1..y_b, z_1..z_a``.

    ``z`` sits on the clique block, ``y`` on the independent block and ``x``
    on the single remaining vertex.
    """
    if a < 0 or b < 1:
        raise ValueError("need a >= 0 and b >= 1 for a strong digraph")
    _check_k(k, a + b + 1)
    ys = [f"y{j}" for j in range(1, b + 1)]
    zs = [f"z{i}" for i in range(1, a + 1)]
    ctx = VarContext.of(["x"] + ys + zs)
    x = ctx.var("x")
    factors = [ctx.var(v) - 2 for v in ys] + [ctx.var(v) - 1 for v in zs]
    couplings = [1 - 2 * x] * b + [2 - x] * a
    gens = _arrowhead_ideal(k, x, factors, couplings, ctx)
    return ClosedFormIdeal("lambda_ab01", (a, b), k, ctx, tuple(gens), tuple(zs + ys + ["x"]))


def ideal_lambda_a10d(a: int, d: int, k: int) -> ClosedFormIdeal:
    """``I_k(Lambda(a,1,0,d))`` over ``y, z_1..z_a, x_1..x_d``."""
    if a < 0 or d < 1:
        raise ValueError("need a >= 0 and d >= 1 for a strong digraph")
    _check_k(k, a + d + 1)
    zs = [f"z{i}" for i in range(1, a + 1)]
    xs = [f"x{r}" for r in range(1, d + 1)]
    ctx = VarContext.of(["y"] + zs + xs)
    y = ctx.var("y")
    factors = [ctx.var(v) - 1 for v in zs] + [ctx.var(v) - 2 for v in xs]
    couplings = [2 - y] * a + [1 - 2 * y] * d
    gens = _arrowhead_ideal(k, y, factors, couplings, ctx)
    return ClosedFormIdeal("lambda_a10d", (a, d), k, ctx, tuple(gens), tuple(zs + ["y"] + xs))


def second_ideal_lambda(a: int, b: int, c: int, d: int) -> ClosedFormIdeal:
    """The case table for ``I_2(Lambda(a,b,c,d))``.

    Clique vertices (``K_a`` then ``K_c``) get ``x1..``, independent vertices
    (``T_b`` then ``T_d``) get ``y1..``.
    """
    p = LambdaParams(a, b, c, d)
    g = lambda_digraph(p)
    if p.n < 2 or not is_strong(g):
        raise ValueError(f"Lambda{p.astuple()} is not a strong digraph on at least two vertices")
    ka, tb, kc, td = p.blocks()
    names: list[str] = [""] * p.n
    for i, v in enumerate(list(ka) + list(kc), start=1):
        names[v] = f"x{i}"
    for j, v in enumerate(list(tb) + list(td), start=1):
        names[v] = f"y{j}"
    ctx = VarContext.of([f"x{i}" for i in range(1, a + c + 1)]
                        + [f"y{j}" for j in range(1, b + d + 1)])
    xs = [ctx.var(f"x{i}") for i in range(1, a + c + 1)]
    ys = [ctx.var(f"y{j}") for j in range(1, b + d + 1)]
    if (a == 2 and b == c == d == 0) or (c == 2 and a == b == d == 0):
        gens = [xs[0] * xs[1] - 1]
    elif (a >= 3 and b == c == d == 0) or (c >= 3 and a == b == d == 0):
        gens = [x - 1 for x in xs]
    elif a == c == 0 and b == d == 1:
        gens = [ys[0] * ys[1] - 1]
    elif a == c == 0 and d == 1 and b >= 2:
        gens = [y - 2 for y in ys[:b]] + [2 * ys[b] - 1]
    elif a == c == 0 and b == 1 and d >= 2:
        gens = [2 * ys[0] - 1] + [y - 2 for y in ys[1:]]
    else:
        gens = [ctx.const(3)] + [x - 1 for x in xs] + [y - 2 for y in ys]
    return ClosedFormIdeal("lambda", p.astuple(), 2, ctx, tuple(gens), tuple(names))


def third_ideal_circuit(n: int) -> ClosedFormIdeal:
    """``I_3(C_n) = <x_0, ..., x_{n-1}, n>`` for n >= 5."""
    if n < 5:
        raise ValueError("closed form holds for n >= 5; use the generic engine for n = 3, 4")
    ctx = VarContext.indexed(n)
    return ClosedFormIdeal("circuit", (n,), 3, ctx, tuple(ctx.gens()) + (ctx.const(n),), ctx.names)


# Smith normal forms ----------------------------------------------------------


def _snf(diag: list[int]) -> SnfResult:
    return SnfResult(tuple(diag), sum(1 for v in diag if v))


def snf_circuit(n: int) -> SnfResult:
    """``diag(1, 1, n, ..., n, n^2(n-1)/2)`` with n-3 middle entries."""
    if n < 3:
        raise ValueError("needs n >= 3")
    return _snf([1, 1] + [n] * (n - 3) + [n * n * (n - 1) // 2])


def snf_lambda_ab01(a: int, b: int) -> SnfResult:
    """``I_{a+2} + 2 I_{b-2} + [8a+2b]`` for b >= 2, ``I_{a+1} + [4a+1]`` for b = 1."""
    if a < 0 or b < 1:
        raise ValueError("need a >= 0 and b >= 1")
    if b == 1:
        return _snf([1] * (a + 1) + [4 * a + 1])
    return _snf([1] * (a + 2) + [2] * (b - 2) + [8 * a + 2 * b])


def snf_lambda_a10d(a: int, d: int) -> SnfResult:
    """Same diagonal as :func:`snf_lambda_ab01` with d in place of b (reversed digraph)."""
    return snf_lambda_ab01(a, d)


# circuits: univariate ideals ------------------------------------------------


def conjectured_univariate_circuit(n: int, k: int) -> ClosedFormIdeal:
    """Conjectured ``U_k(C_n) = <t^{k-2-i} n^i : 0 <= i <= k-2>`` for 4 <= k <= n-2."""
    if not 4 <= k <= n - 2:
        raise ValueError(f"conjectured form covers 4 <= k <= n-2, got n={n}, k={k}")
    t = T_CONTEXT.var(0)
    gens = tuple((t ** (k - 2 - i)) * n ** i for i in range(k - 1))
    return ClosedFormIdeal("circuit_univariate", (n,), k, T_CONTEXT, gens)


@dataclass(frozen=True)
class CirculantCheck:
    n: int
    exact: tuple[int, ...]
    numeric: tuple[complex, ...]
    deviations: tuple[float, ...]
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(dev <= self.tolerance * max(1, abs(e))
                   for dev, e in zip(self.deviations, self.exact))

    @property
    def max_relative_deviation(self) -> float:
        return max(dev / max(1, abs(e)) for dev, e in zip(self.deviations, self.exact))


def circulant_det_check(n: int, tolerance: float = 1e-6) -> CirculantCheck:
    """Compare ``det(tI + D(C_n))`` with ``prod_j (t + sum_m m w^{mj})``, ``w = e^{2 pi i/n}``.

    Coefficients run from ``t^n`` down to the constant; the tolerance is
    relative to ``max(1, |exact coefficient|)``.
    """
    if not 3 <= n <= CIRCULANT_MAX_N:
        raise ValueError(f"n must lie in 3..{CIRCULANT_MAX_N}")
    det = univariate_det(dt_matrix(circuit(n)))
    exact = tuple(det.terms.get((e,), 0) for e in range(n, -1, -1))
    w = cmath.exp(2j * cmath.pi / n)
    eig = [sum(m * w ** (m * j) for m in range(1, n)) for j in range(n)]
    numeric = tuple(complex(c) for c in np.poly([-lam for lam in eig]))
    devs = tuple(abs(z - e) for z, e in zip(numeric, exact))
    return CirculantCheck(n, exact, numeric, devs, tolerance)


_FAMILY_DIGRAPH = {
    "complete": complete,
    "star": lambda m: complete_bipartite(m, 1),
    "lambda_ab01": lambda a, b: lambda_digraph((a, b, 0, 1)),
    "lambda_a10d": lambda a, d: lambda_digraph((a, 1, 0, d)),
    "lambda": lambda a, b, c, d: lambda_digraph((a, b, c, d)),
    "circuit": circuit,
    "circuit_univariate": circuit,
}
