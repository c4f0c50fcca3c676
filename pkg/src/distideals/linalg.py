"""Exact integer matrices: Smith normal form, determinants and gcd of minors."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb, gcd
from typing import Iterable, Sequence

MINOR_SUBSET_CAP = 10**7


@dataclass(frozen=True)
class IntMatrix:
    """Dense row-major matrix of Python ints (arbitrary precision)."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        return IntMatrix(tuple(tuple(self.rows[i][j] for j in cols) for i in rows))

    def to_text(self) -> str:
        lines = [f"{self.nrows} {self.ncols}"]
        lines += [" ".join(str(x) for x in r) for r in self.rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "IntMatrix":
        tokens = text.split()
        if len(tokens) < 2:
            raise ValueError("matrix text needs a 'rows cols' header")
        nrows, ncols = int(tokens[0]), int(tokens[1])
        body = [int(t) for t in tokens[2:]]
        if len(body) != nrows * ncols:
            raise ValueError(f"expected {nrows * ncols} entries, got {len(body)}")
        return cls(tuple(tuple(body[i * ncols:(i + 1) * ncols]) for i in range(nrows)))


@dataclass(frozen=True)
class SnfResult:
    diagonal: tuple[int, ...]
    rank: int

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.diagonal[:self.rank]

    def units(self) -> int:
        """Number of invariant factors equal to 1."""
        return sum(1 for f in self.invariant_factors if f == 1)


def _as_rows(m) -> list[list[int]]:
    if isinstance(m, IntMatrix):
        return m.tolist()
    return [list(map(int, r)) for r in m]


def smith_normal_form(m: IntMatrix | Sequence[Sequence[int]]) -> SnfResult:
    """Smith normal form by pivot-to-gcd elimination.

    The pivot is always a nonzero entry of least absolute value in the trailing
    block; rows and columns are reduced against it until it divides the whole
    block, at which point the step is closed and the block shrinks by one.
    """
    a = _as_rows(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    size = min(nrows, ncols)
    diag: list[int] = []

    for t in range(size):
        while True:
            best = None
            for i in range(t, nrows):
                row = a[i]
                for j in range(t, ncols):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            a[t], a[pi] = a[pi], a[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
            p = a[t][t]
            clean = True
            prow = a[t]
            for i in range(t + 1, nrows):
                v = a[i][t]
                if v:
                    q = v // p
                    row = a[i]
                    for j in range(t, ncols):
                        row[j] -= q * prow[j]
                    if row[t]:
                        clean = False
            for j in range(t + 1, ncols):
                v = prow[j]
                if v:
                    q = v // p
                    for i in range(t, nrows):
                        a[i][j] -= q * a[i][t]
                    if prow[j]:
                        clean = False
            if not clean:
                continue
            # divisibility repair: fold an offending row into the pivot row
            bad = next((i for i in range(t + 1, nrows)
                        if any(a[i][j] % p for j in range(t + 1, ncols))), None)
            if bad is None:
                break
            brow = a[bad]
            for j in range(t, ncols):
                prow[j] += brow[j]
        if a[t][t] == 0:
            break
        diag.append(abs(a[t][t]))

    rank = len(diag)
    return SnfResult(tuple(diag) + (0,) * (size - rank), rank)


def determinant(m: IntMatrix | Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    a = _as_rows(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * akk - aik * rk[j]) // prev
            ri[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def gcd_of_minors(m: IntMatrix | Sequence[Sequence[int]], order: int) -> int:
    """Gcd of all order x order minors, by exhaustive enumeration.

    Deliberately shares nothing with :func:`smith_normal_form`; it serves as
    the independent oracle for the elementary divisor identity.
    """
    a = _as_rows(m)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if not 1 <= order <= min(nrows, ncols):
        raise ValueError(f"minor order {order} out of range for {nrows}x{ncols}")
    if comb(nrows, order) * comb(ncols, order) > MINOR_SUBSET_CAP:
        raise ValueError("too many minors to enumerate")
    g = 0
    col_sets = list(combinations(range(ncols), order))
    for rs in combinations(range(nrows), order):
        sub_rows = [a[i] for i in rs]
        for cs in col_sets:
            d = determinant([[r[j] for j in cs] for r in sub_rows])
            if d:
                g = gcd(g, d)
                if g == 1:
                    return 1
    return g
