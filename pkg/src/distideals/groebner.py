"""Strong Groebner bases over the integers.

Inside this module a monomial is a single packed int whose natural integer
order *is* the monomial order, so ``max(poly)`` finds the leading term and
monomial products are integer sums:

* lex: exponent fields with ``x0`` most significant;
* degrevlex: ``deg << S`` minus the fields packed with the last variable most
  significant.

Each field is ``FIELD_BITS`` wide with a spare guard bit used by the
divisibility test.  Leading coefficients of basis elements are kept positive.
"""

from __future__ import annotations

import heapq
import os
from contextlib import contextmanager
from math import gcd
from typing import Iterator, Sequence

from .poly import DEFAULT_ORDER, Monomial, MonomialOrder, MultiPoly

# DISTIDEALS_PAIR_CAP only bounds running time; it has no bearing on correctness
PAIR_CAP = int(os.environ.get("DISTIDEALS_PAIR_CAP", 10**6))
FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1


class GroebnerLimitError(RuntimeError):
    """Raised when Buchberger exceeds the pair-reduction cap."""


_RECORDERS: list[list] = []


@contextmanager
def record_bases() -> Iterator[list]:
    """Collect ``(generators, basis, order)`` for every basis computed inside the block."""
    log: list = []
    _RECORDERS.append(log)
    try:
        yield log
    finally:
        # by identity: nested logs can hold equal contents
        del _RECORDERS[next(i for i, r in enumerate(_RECORDERS) if r is log)]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class _Packing:
    def __init__(self, nvars: int, order: MonomialOrder):
        self.n = nvars
        self.lex = MonomialOrder(order) is MonomialOrder.LEX
        self.shift = FIELD_BITS * nvars
        self.low = (1 << self.shift) - 1
        self.guard = sum(1 << (FIELD_BITS * i + FIELD_BITS - 1) for i in range(nvars))
        self.field = (1 << FIELD_BITS) - 1
        # position of variable i: lex puts x0 on top, degrevlex puts x_{n-1} on top
        if self.lex:
            self.pos = [FIELD_BITS * (nvars - 1 - i) for i in range(nvars)]
        else:
            self.pos = [FIELD_BITS * i for i in range(nvars)]

    def pack(self, m: Monomial) -> int:
        if any(e > MAX_EXPONENT for e in m):
            raise OverflowError("exponent too large for packed monomials")
        fields = sum(e << p for e, p in zip(m, self.pos))
        if self.lex:
            return fields
        return (sum(m) << self.shift) - fields

    def fields(self, k: int) -> int:
        if self.lex:
            return k
        deg = (k + self.low) >> self.shift
        return (deg << self.shift) - k

    def unpack(self, k: int) -> Monomial:
        f = self.fields(k)
        return tuple((f >> p) & self.field for p in self.pos)

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((self.fields(b) | g) - self.fields(a)) & g == g

    def lcm(self, a: int, b: int) -> int:
        return self.pack(tuple(max(x, y) for x, y in zip(self.unpack(a), self.unpack(b))))

    def degree(self, k: int) -> int:
        return sum(self.unpack(k))

    def coprime(self, a: int, b: int) -> bool:
        fa, fb = self.fields(a), self.fields(b)
        fl = self.field
        return all(not ((fa >> p) & fl and (fb >> p) & fl) for p in self.pos)


class _Elem:
    __slots__ = ("poly", "lm", "lc", "lf")

    def __init__(self, poly: dict, pk: _Packing):
        lm = max(poly)
        lc = poly[lm]
        if lc < 0:
            poly = {m: -c for m, c in poly.items()}
            lc = -lc
        self.poly = poly
        self.lm = lm
        self.lc = lc
        self.lf = pk.fields(lm) | pk.guard


def _axpy(f: dict, q: int, shift: int, g: dict) -> None:
    """In place: ``f -= q * x^shift * g`` (shift is a packed monomial)."""
    for m, c in g.items():
        mm = m + shift
        v = f.get(mm, 0) - q * c
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def _reduce(f: dict, basis: Sequence[_Elem], pk: _Packing) -> dict:
    """Remainder of f: each term's coefficient is reduced modulo the leading
    coefficient of the first basis element whose leading monomial divides it."""
    f = dict(f)
    rem: dict = {}
    guard = pk.guard
    lex = pk.lex
    low, shift = pk.low, pk.shift
    while f:
        m = max(f)
        c = f[m]
        fm = m if lex else (((m + low) >> shift) << shift) - m
        for g in basis:
            if (fm | guard) - (g.lf ^ guard) & guard == guard:
                q = c // g.lc
                if q:
                    _axpy(f, q, m - g.lm, g.poly)
                    break
        else:
            rem[m] = c
            del f[m]
    return rem


def _pair_polys(f: _Elem, g: _Elem, pk: _Packing) -> tuple[dict, dict | None]:
    m = pk.lcm(f.lm, g.lm)
    sf = m - f.lm
    sg = m - g.lm
    a, b = f.lc, g.lc
    l = a // gcd(a, b) * b
    s: dict = {}
    _axpy(s, -(l // a), sf, f.poly)
    _axpy(s, l // b, sg, g.poly)
    gp = None
    if a % b and b % a:
        _, u, v = _xgcd(a, b)
        gp = {}
        _axpy(gp, -u, sf, f.poly)
        _axpy(gp, -v, sg, g.poly)
    return s, gp


def _buchberger(gens: list[dict], pk: _Packing, cap: int = PAIR_CAP) -> list[_Elem]:
    basis: list[_Elem] = []
    heap: list = []
    counter = 0
    work = 0

    def add(h: dict):
        nonlocal counter
        e = _Elem(h, pk)
        j = len(basis)
        basis.append(e)
        for i in range(j):
            heapq.heappush(heap, (pk.degree(pk.lcm(basis[i].lm, e.lm)), counter, i, j))
            counter += 1

    def drain():
        nonlocal work
        while heap:
            _, _, i, j = heapq.heappop(heap)
            work += 1
            if work > cap:
                raise GroebnerLimitError(
                    f"Buchberger exceeded {cap} pair reductions on {len(gens)} generators")
            f, g = basis[i], basis[j]
            s, gp = _pair_polys(f, g, pk)
            if gp is not None:
                r = _reduce(gp, basis, pk)
                if r:
                    add(r)
            # product criterion: coprime leading monomials and coefficients
            if not (gcd(f.lc, g.lc) == 1 and pk.coprime(f.lm, g.lm)):
                r = _reduce(s, basis, pk)
                if r:
                    add(r)

    for f in sorted(gens, key=max):
        r = _reduce(f, basis, pk)
        if r:
            add(r)
            drain()
    return basis


def _minimalize(basis: list[_Elem], pk: _Packing) -> list[_Elem]:
    keep: list[_Elem] = []
    for i, g in enumerate(basis):
        redundant = False
        for j, h in enumerate(basis):
            if i == j or not pk.divides(h.lm, g.lm) or g.lc % h.lc:
                continue
            if h.lm != g.lm or h.lc != g.lc or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        others = [h for j, h in enumerate(keep) if j != i]
        tail = dict(g.poly)
        del tail[g.lm]
        tail = _reduce(tail, others, pk)
        tail[g.lm] = g.lc
        out.append(_Elem(tail, pk))
    out.sort(key=lambda e: e.lm)
    return out


def _to_packed(p: MultiPoly, pk: _Packing) -> dict:
    return {pk.pack(m): c for m, c in p.terms.items()}


def _from_packed(ctx, d: dict, pk: _Packing) -> MultiPoly:
    return MultiPoly(ctx, {pk.unpack(k): c for k, c in d.items()})


def strong_groebner(gens: Sequence[MultiPoly], order: MonomialOrder = DEFAULT_ORDER,
                    cap: int = PAIR_CAP) -> list[MultiPoly]:
    """Reduced strong Groebner basis of the ideal generated by ``gens`` over Z.

    Elements are returned in increasing order of leading monomial.
    """
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    ctx = gens[0].ctx
    if any(g.ctx != ctx for g in gens):
        raise ValueError("generators live in different contexts")
    pk = _Packing(len(ctx), order)
    basis = _minimalize(_buchberger([_to_packed(g, pk) for g in gens], pk, cap), pk)
    out = [_from_packed(ctx, e.poly, pk) for e in basis]
    for log in _RECORDERS:
        log.append((tuple(gens), tuple(out), MonomialOrder(order)))
    return out


def _elems(basis: Sequence[MultiPoly], pk: _Packing) -> list[_Elem]:
    return [_Elem(_to_packed(b, pk), pk) for b in basis if b.terms]


def normal_form(p: MultiPoly, basis: Sequence[MultiPoly],
                order: MonomialOrder = DEFAULT_ORDER) -> MultiPoly:
    """Remainder of ``p`` modulo a strong Groebner basis; zero iff p is in the ideal."""
    pk = _Packing(len(p.ctx), order)
    return _from_packed(p.ctx, _reduce(_to_packed(p, pk), _elems(basis, pk), pk), pk)


def closure_defects(basis: Sequence[MultiPoly],
                    order: MonomialOrder = DEFAULT_ORDER) -> list[tuple[int, int, str]]:
    """Pairs whose S- or GCD-polynomial does not reduce to zero (empty for a strong basis)."""
    if not basis:
        return []
    pk = _Packing(len(basis[0].ctx), order)
    elems = _elems(basis, pk)
    bad = []
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            s, gp = _pair_polys(elems[i], elems[j], pk)
            if _reduce(s, elems, pk):
                bad.append((i, j, "S"))
            # gp is None when one leading coefficient divides the other; the
            # GCD-polynomial is then a monomial multiple of one of the pair
            if gp is not None and _reduce(gp, elems, pk):
                bad.append((i, j, "G"))
    return bad


def ideal_contains_one(gens: Sequence[MultiPoly], order: MonomialOrder = DEFAULT_ORDER) -> bool:
    basis = strong_groebner(gens, order)
    return any(b.is_constant() and b.constant_value() == 1 for b in basis)
