"""Sparse multivariate polynomials over the integers and symbolic matrices."""

from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from math import comb
from typing import Iterable, Mapping, Sequence

from .digraph import Digraph, distances
from .linalg import IntMatrix, determinant

SYM_DET_CAP = 12
MINOR_CAP = 10**6

Monomial = tuple[int, ...]


class MonomialOrder(str, Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"

    def key(self, m: Monomial):
        if self is MonomialOrder.LEX:
            return m
        return (sum(m), tuple(-e for e in reversed(m)))


DEFAULT_ORDER = MonomialOrder.DEGREVLEX


@dataclass(frozen=True)
class VarContext:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    @classmethod
    def of(cls, names: Iterable[str]) -> "VarContext":
        return cls(tuple(names))

    @classmethod
    def indexed(cls, n: int, prefix: str = "x") -> "VarContext":
        return cls(tuple(f"{prefix}{i}" for i in range(n)))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def const(self, c: int) -> "MultiPoly":
        return MultiPoly(self, {(0,) * len(self.names): c} if c else {})

    def var(self, name_or_index: str | int) -> "MultiPoly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        e = [0] * len(self.names)
        e[i] = 1
        return MultiPoly(self, {tuple(e): 1})

    def gens(self) -> list["MultiPoly"]:
        return [self.var(i) for i in range(len(self.names))]


T_CONTEXT = VarContext(("t",))


class MultiPoly:
    """Immutable sparse polynomial: exponent tuple -> nonzero int coefficient."""

    __slots__ = ("ctx", "terms", "_hash")

    def __init__(self, ctx: VarContext, terms: Mapping[Monomial, int]):
        self.ctx = ctx
        self.terms = {m: c for m, c in terms.items() if c}
        self._hash = None

    # basic protocol ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == self.ctx.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        return self.format()

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * len(self.ctx), 0)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def variables(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # arithmetic -------------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, int):
            return self.ctx.const(other)
        if other.ctx != self.ctx:
            raise ValueError("polynomials live in different variable contexts")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return MultiPoly(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ctx, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiPoly(self.ctx, {m: c * other for m, c in self.terms.items()})
        other = self._coerce(other)
        if len(other.terms) == 1 and other.is_constant():
            return self * other.constant_value()
        if len(self.terms) == 1 and self.is_constant():
            return other * self.constant_value()
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return MultiPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ctx.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # orders ------------------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder = DEFAULT_ORDER) -> list[tuple[Monomial, int]]:
        key = order.key
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = DEFAULT_ORDER) -> Monomial:
        return max(self.terms, key=order.key)

    def leading_coefficient(self, order: MonomialOrder = DEFAULT_ORDER) -> int:
        return self.terms[self.leading_monomial(order)]

    # evaluation ---------------------------------------------------------------

    def evaluate(self, point: Sequence[int] | Mapping[str, int]) -> int:
        if isinstance(point, Mapping):
            point = [point[name] for name in self.ctx.names]
        if len(point) != len(self.ctx):
            raise ValueError(f"expected {len(self.ctx)} values, got {len(point)}")
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(point, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def substitute(self, ctx: VarContext, images: Sequence["MultiPoly"]) -> "MultiPoly":
        """Ring map sending variable i to ``images[i]`` (all in ``ctx``)."""
        result = ctx.zero()
        for m, c in self.terms.items():
            term = ctx.const(c)
            for img, e in zip(images, m):
                if e:
                    term = term * img ** e
            result = result + term
        return result

    def rename(self, ctx: VarContext, mapping: Mapping[str, str] | None = None) -> "MultiPoly":
        """Move into ``ctx`` matching variables by name (optionally renamed first)."""
        mapping = mapping or {}
        pos = [ctx.index(mapping.get(name, name)) for name in self.ctx.names]
        out = {}
        for m, c in self.terms.items():
            e = [0] * len(ctx)
            for i, k in enumerate(m):
                e[pos[i]] += k
            out[tuple(e)] = out.get(tuple(e), 0) + c
        return MultiPoly(ctx, out)

    # text ---------------------------------------------------------------------

    def format(self, order: MonomialOrder = DEFAULT_ORDER) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms(order)):
            factors = []
            for name, e in zip(self.ctx.names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if idx == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


def collapse_to_t(p: MultiPoly) -> MultiPoly:
    """Send every variable to the single variable ``t``."""
    out: dict[Monomial, int] = {}
    for m, c in p.terms.items():
        d = (sum(m),)
        out[d] = out.get(d, 0) + c
    return MultiPoly(T_CONTEXT, out)


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str, ctx: VarContext) -> MultiPoly:
    """Parse the printing format (``3*x0^2*x1 - x2 + 7``) inside ``ctx``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    result = ctx.zero()
    pos = 0
    first = True
    for match in _TERM_RE.finditer(s):
        if match.start() != pos:
            raise ValueError(f"cannot parse {text!r}")
        pos = match.end()
        sign, body = match.group(1), match.group(2).strip()
        if sign is None and not first:
            raise ValueError(f"missing operator in {text!r}")
        first = False
        coef = -1 if sign == "-" else 1
        e = [0] * len(ctx)
        for factor in body.replace(" ", "").split("*"):
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor.isdigit():
                coef *= int(factor)
                continue
            name, _, exp = factor.partition("^")
            if name not in ctx.names:
                raise ValueError(f"unknown variable {name!r}")
            e[ctx.index(name)] += int(exp) if exp else 1
        result = result + MultiPoly(ctx, {tuple(e): coef})
    if pos != len(s):
        raise ValueError(f"cannot parse {text!r}")
    return result


# symbolic matrices --------------------------------------------------------------


@dataclass(frozen=True)
class SymMatrix:
    ctx: VarContext
    entries: tuple[tuple[MultiPoly, ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        return self.entries[ij[0]][ij[1]]

    @classmethod
    def from_rows(cls, ctx: VarContext, rows: Iterable[Iterable[MultiPoly | int]]) -> "SymMatrix":
        def lift(x):
            return ctx.const(x) if isinstance(x, int) else x
        return cls(ctx, tuple(tuple(lift(x) for x in r) for r in rows))

    def evaluate(self, point: Sequence[int]) -> IntMatrix:
        return IntMatrix.from_rows([[p.evaluate(point) for p in r] for r in self.entries])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "SymMatrix":
        return SymMatrix(self.ctx, tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def __str__(self):
        return "\n".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.entries)


def diag_plus(ctx: VarContext, diagonal: Sequence[MultiPoly], m: Sequence[Sequence[int]]) -> SymMatrix:
    n = len(m)
    return SymMatrix(ctx, tuple(
        tuple(diagonal[i] + m[i][j] if i == j else ctx.const(m[i][j]) for j in range(n))
        for i in range(n)))


def dx_matrix(g: Digraph, ctx: VarContext | None = None) -> SymMatrix:
    """``diag(x_0..x_{n-1}) + D(G)``."""
    d = distances(g)
    ctx = ctx or VarContext.indexed(g.n)
    return diag_plus(ctx, ctx.gens(), d)


def dt_matrix(g: Digraph) -> SymMatrix:
    """``t*I + D(G)`` over the single variable ``t``."""
    d = distances(g)
    t = T_CONTEXT.var(0)
    return diag_plus(T_CONTEXT, [t] * g.n, d)


def _laplace_table(m: SymMatrix, row_sets: list[tuple[int, ...]], k: int) -> dict:
    """Minors ``det m[R, S]`` for each R in ``row_sets`` and every k-subset S of columns.

    Built level by level: a minor on rows R is expanded along the last row of R,
    reusing the minors on R minus that row.
    """
    ncols = m.ncols
    zero = m.ctx.zero()
    one = m.ctx.const(1)
    prefixes: list[set[tuple[int, ...]]] = [set() for _ in range(k + 1)]
    for r in row_sets:
        for i in range(k + 1):
            prefixes[i].add(r[:i])
    table: dict[tuple[tuple[int, ...], int], MultiPoly] = {((), 0): one}
    col_masks = {0: [0]}
    for size in range(1, k + 1):
        col_masks[size] = [sum(1 << j for j in cs) for cs in combinations(range(ncols), size)]
    for i in range(1, k + 1):
        for rows in prefixes[i]:
            last = rows[-1]
            parent = rows[:-1]
            row = m.entries[last]
            for cmask in col_masks[i]:
                acc = zero
                pos = 0
                bits = cmask
                while bits:
                    low = bits & -bits
                    j = low.bit_length() - 1
                    bits ^= low
                    entry = row[j]
                    if entry.terms:
                        sub = table.get((parent, cmask ^ low))
                        if sub is not None and sub.terms:
                            # sign of entry at column position `pos` in row position i-1
                            term = entry * sub
                            acc = acc + term if (i - 1 + pos) % 2 == 0 else acc - term
                    pos += 1
                table[(rows, cmask)] = acc
        if i > 1:
            for rows in prefixes[i - 1]:
                for cmask in col_masks[i - 1]:
                    table.pop((rows, cmask), None)
    return table


def sym_det(m: SymMatrix) -> MultiPoly:
    """Exact determinant by memoized Laplace expansion over column subsets."""
    if m.nrows != m.ncols:
        raise ValueError("determinant needs a square matrix")
    n = m.nrows
    if n > SYM_DET_CAP:
        raise ValueError(f"symbolic determinant capped at {SYM_DET_CAP} rows")
    if n == 0:
        return m.ctx.const(1)
    rows = tuple(range(n))
    table = _laplace_table(m, [rows], n)
    return table[(rows, (1 << n) - 1)]


def univariate_det(m: SymMatrix) -> MultiPoly:
    """Determinant of a one-variable matrix by exact evaluation and interpolation.

    Uses ``n + 1`` integer points (Bareiss at each) and Newton divided
    differences over the rationals; no size cap beyond time.
    """
    if len(m.ctx) != 1:
        raise ValueError("univariate_det needs a single-variable context")
    if m.nrows != m.ncols:
        raise ValueError("determinant needs a square matrix")
    # degree bound: sum over rows of the largest entry degree in the row
    deg = sum(max((e[0] for p in row for e in p.terms), default=0) for row in m.entries)
    xs = list(range(deg + 1))
    coef = [Fraction(determinant(m.evaluate([x]).rows)) for x in xs]
    for level in range(1, len(xs)):
        for i in range(len(xs) - 1, level - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level])
    # expand the Newton form into monomial coefficients
    poly = [Fraction(0)] * (deg + 1)
    for i in range(deg, -1, -1):
        # poly = poly * (t - xs[i]) + coef[i]
        nxt = [Fraction(0)] * (deg + 1)
        for e, c in enumerate(poly):
            if c:
                if e + 1 <= deg:
                    nxt[e + 1] += c
                nxt[e] -= c * xs[i]
        nxt[0] += coef[i]
        poly = nxt
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated determinant is not integral")
    return MultiPoly(m.ctx, {(e,): int(c) for e, c in enumerate(poly) if c})


def minors(m: SymMatrix, k: int) -> list[MultiPoly]:
    """All k x k minors, ordered by (row subset, column subset) lexicographically."""
    if not 1 <= k <= min(m.nrows, m.ncols):
        raise ValueError(f"minor order {k} out of range")
    if comb(m.nrows, k) * comb(m.ncols, k) > MINOR_CAP:
        raise ValueError("too many minors")
    row_sets = list(combinations(range(m.nrows), k))
    table = _laplace_table(m, row_sets, k)
    out = []
    for rs in row_sets:
        for cs in combinations(range(m.ncols), k):
            out.append(table[(rs, sum(1 << j for j in cs))])
    return out
