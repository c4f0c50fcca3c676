"""Distance ideals, univariate distance ideals, triviality and Phi."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from . import groebner
from .digraph import Digraph, distances
from .linalg import determinant
from .poly import (DEFAULT_ORDER, MonomialOrder, MultiPoly, VarContext, collapse_to_t,
                   dt_matrix, dx_matrix, minors)


class Ideal:
    """Generators in one variable context, with a lazily computed strong basis."""

    def __init__(self, ctx: VarContext, generators: Iterable[MultiPoly]):
        gens = []
        seen = set()
        for g in generators:
            if g.ctx != ctx:
                raise ValueError("generator outside the ideal's context")
            if g.terms and g not in seen:
                seen.add(g)
                gens.append(g)
        self.ctx = ctx
        self.generators: tuple[MultiPoly, ...] = tuple(gens)
        self._bases: dict[MonomialOrder, tuple[MultiPoly, ...]] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"Ideal<{', '.join(str(g) for g in self.generators[:6])}{', ...' if len(self.generators) > 6 else ''}>"

    def basis(self, order: MonomialOrder = DEFAULT_ORDER) -> tuple[MultiPoly, ...]:
        order = MonomialOrder(order)
        with self._lock:
            if order not in self._bases:
                self._bases[order] = tuple(groebner.strong_groebner(self.generators, order))
            return self._bases[order]

    def has_basis(self, order: MonomialOrder = DEFAULT_ORDER) -> bool:
        return MonomialOrder(order) in self._bases

    def contains(self, p: MultiPoly, order: MonomialOrder = DEFAULT_ORDER) -> bool:
        return not normal_form(p, self.basis(order), order).terms

    def collapse(self) -> "Ideal":
        """Image under ``x_i -> t`` for every variable."""
        from .poly import T_CONTEXT
        return Ideal(T_CONTEXT, (collapse_to_t(g) for g in self.generators))


def normal_form(p: MultiPoly, basis: Sequence[MultiPoly],
                order: MonomialOrder = DEFAULT_ORDER) -> MultiPoly:
    return groebner.normal_form(p, basis, order)


def strong_groebner(gens: Sequence[MultiPoly],
                    order: MonomialOrder = DEFAULT_ORDER) -> list[MultiPoly]:
    return groebner.strong_groebner(gens, order)


def distance_ideal(g: Digraph, i: int) -> Ideal:
    if not 1 <= i <= g.n:
        raise ValueError(f"index {i} out of range 1..{g.n}")
    m = dx_matrix(g)
    return Ideal(m.ctx, minors(m, i))


def univariate_distance_ideal(g: Digraph, i: int) -> Ideal:
    if not 1 <= i <= g.n:
        raise ValueError(f"index {i} out of range 1..{g.n}")
    m = dt_matrix(g)
    return Ideal(m.ctx, minors(m, i))


def ideal_from(ctx: VarContext, gens: Iterable[MultiPoly | int]) -> Ideal:
    return Ideal(ctx, (ctx.const(g) if isinstance(g, int) else g for g in gens))


# triviality -----------------------------------------------------------------


def _unit_fast_path(gens: Sequence[MultiPoly]) -> bool | None:
    """True when a cheap certificate of 1 in the ideal exists, else None."""
    const_gcd = 0
    for p in gens:
        if p.is_constant():
            c = p.constant_value()
            if c in (1, -1):
                return True
            const_gcd = gcd(const_gcd, c)
    if const_gcd == 1:
        return True
    # linear screen: per variable, the sub-ideal of a*x_i + b generators and constants
    by_var: dict[int, list[MultiPoly]] = {}
    for p in gens:
        if p.total_degree() == 1:
            vs = p.variables()
            if len(vs) == 1:
                by_var.setdefault(vs.pop(), []).append(p)
    consts = [p for p in gens if p.is_constant()]
    for group in by_var.values():
        if len(group) + len(consts) < 2:
            continue
        if groebner.ideal_contains_one(group + consts):
            return True
    return None


def is_trivial(ideal: Ideal, order: MonomialOrder = DEFAULT_ORDER) -> bool:
    """Whether the ideal is the whole ring, i.e. contains 1."""
    if not ideal.has_basis(order) and _unit_fast_path(ideal.generators):
        return True
    return any(b.is_constant() and b.constant_value() == 1 for b in ideal.basis(order))


def ideals_equal(a: Ideal, b: Ideal, order: MonomialOrder = DEFAULT_ORDER) -> bool:
    if a.ctx != b.ctx:
        raise ValueError("ideals live in different contexts")
    ba, bb = a.basis(order), b.basis(order)
    return (all(not normal_form(g, bb, order).terms for g in a.generators)
            and all(not normal_form(g, ba, order).terms for g in b.generators))


def evaluate_ideal(ideal: Ideal, point: Sequence[int]) -> int:
    """Non-negative generator of the integer ideal obtained by substituting ``point``."""
    if len(point) != len(ideal.ctx):
        raise ValueError(f"expected {len(ideal.ctx)} values, got {len(point)}")
    g = 0
    for p in ideal.generators:
        g = gcd(g, p.evaluate(point))
    return g


def constant_minor_gcd(g: Digraph, k: int) -> int:
    """Gcd of the k-minors of D_X(G) that avoid the diagonal (row set disjoint
    from column set); these are integers, so a gcd of 1 certifies I_k = <1>.

    Returns 0 when no such minor is nonzero (always the case for 2k > n).
    """
    d = distances(g)
    out = 0
    for rs in combinations(range(g.n), k):
        rest = [c for c in range(g.n) if c not in rs]
        for cs in combinations(rest, k):
            if k == 2:
                (i, j), (a, b) = rs, cs
                v = d[i][a] * d[j][b] - d[i][b] * d[j][a]
            else:
                v = determinant([[d[i][c] for c in cs] for i in rs])
            if v:
                out = gcd(out, v)
                if out == 1:
                    return 1
    return out


def distance_ideal_trivial(g: Digraph, i: int, order: MonomialOrder = DEFAULT_ORDER) -> bool:
    """Whether ``I_i(G) = <1>``, trying the integer screen before any symbolic work."""
    if 2 * i <= g.n and constant_minor_gcd(g, i) == 1:
        return True
    return is_trivial(distance_ideal(g, i), order)


@dataclass(frozen=True)
class TrivialityProfile:
    flags: tuple[bool, ...]
    phi: int
    decided: tuple[bool, ...] = field(default=())

    def __str__(self):
        return f"Phi={self.phi} flags={''.join('T' if f else '.' for f in self.flags)}"


def phi(g: Digraph, order: MonomialOrder = DEFAULT_ORDER) -> TrivialityProfile:
    """Largest i with I_i(G) trivial; stops at the first non-trivial index."""
    flags = []
    decided = []
    trivial = True
    for i in range(1, g.n + 1):
        if trivial:
            trivial = distance_ideal_trivial(g, i, order)
            decided.append(True)
        else:
            decided.append(False)
        flags.append(trivial)
    return TrivialityProfile(tuple(flags), sum(flags), tuple(decided))


def second_ideal_trivial(g: Digraph) -> bool:
    return distance_ideal_trivial(g, 2) if g.n >= 2 else False


def phi_is_one(g: Digraph) -> bool:
    """``Phi(G) = 1``: first ideal trivial, second not."""
    if g.n < 2:
        return False
    return distance_ideal_trivial(g, 1) and not distance_ideal_trivial(g, 2)
