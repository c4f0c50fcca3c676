"""Simple digraphs, distances, named families and strong-digraph enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator

import numpy as np

from .linalg import IntMatrix

ENUMERATION_CAP = 5
ISOMORPHISM_CAP = 10


class NotStrongError(ValueError):
    """Raised when an operation needs distances but the digraph is not strong."""


class MatrixKind(str, Enum):
    D = "D"
    DL = "DL"
    DQ = "DQ"
    DDEG = "Ddeg"
    DDEG_PLUS = "DdegPlus"


@dataclass(frozen=True)
class Digraph:
    """Vertices ``0..n-1`` and a set of arcs ``(u, v)``; no loops or multi-arcs."""

    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        for u, v in arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc {u}->{v} out of range for n={self.n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
        object.__setattr__(self, "arcs", arcs)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, v in self.arcs:
            inn[v] |= 1 << u
        return tuple(inn)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_masks[u] >> v & 1)

    def out_degree(self, u: int) -> int:
        return self.out_masks[u].bit_count()

    def in_degree(self, u: int) -> int:
        return self.in_masks[u].bit_count()

    def sorted_arcs(self) -> list[tuple[int, int]]:
        return sorted(self.arcs)

    def relabel(self, perm: Iterable[int]) -> "Digraph":
        """Image under the vertex map ``u -> perm[u]``."""
        p = list(perm)
        return Digraph(self.n, frozenset((p[u], p[v]) for u, v in self.arcs))

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        vs = list(vertices)
        index = {v: i for i, v in enumerate(vs)}
        return Digraph(len(vs), frozenset((index[u], index[v]) for u, v in self.arcs
                                          if u in index and v in index))

    def is_symmetric(self) -> bool:
        return all((v, u) in self.arcs for u, v in self.arcs)

    @cached_property
    def mask(self) -> int:
        """Arc bitmask in the enumeration bit order (see :func:`arc_slots`)."""
        slots = _slot_index(self.n)
        m = 0
        for a in self.arcs:
            m |= 1 << slots[a]
        return m

    # text format -----------------------------------------------------------

    def to_text(self) -> str:
        arcs = ",".join(f"{u}->{v}" for u, v in self.sorted_arcs())
        return f"n={self.n}\n{arcs}\n"

    @classmethod
    def from_text(cls, text: str) -> "Digraph":
        """Parse ``n=<count>`` plus an arc line, or an n-line 0/1 adjacency block."""
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty digraph text")
        if lines[0].startswith("n="):
            n = int(lines[0][2:])
            rest = lines[1:]
            if not rest:
                return cls(n)
            if any("->" in ln for ln in rest):
                arcs = []
                for tok in ",".join(rest).split(","):
                    tok = tok.strip()
                    if not tok:
                        continue
                    u, _, v = tok.partition("->")
                    if not _:
                        raise ValueError(f"bad arc token {tok!r}")
                    arcs.append((int(u), int(v)))
                return from_arc_list(n, arcs)
            return _from_matrix_lines(rest, n)
        return _from_matrix_lines(lines, len(lines))


def _from_matrix_lines(lines: list[str], n: int) -> Digraph:
    if len(lines) != n:
        raise ValueError(f"adjacency block needs {n} rows, got {len(lines)}")
    arcs = []
    for u, line in enumerate(lines):
        cells = line.replace(",", " ").split()
        if len(cells) != n or any(c not in ("0", "1") for c in cells):
            raise ValueError(f"bad adjacency row {line!r}")
        arcs += [(u, v) for v, c in enumerate(cells) if c == "1"]
    return from_arc_list(n, arcs)


def from_arc_list(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    return Digraph(n, frozenset(arcs))


# connectivity and distances -------------------------------------------------


def _reach(masks: tuple[int, ...], start: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= masks[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        seen |= nxt
    return seen


def is_strong(g: Digraph) -> bool:
    if g.n <= 1:
        return True
    full = (1 << g.n) - 1
    return _reach(g.out_masks, 0) == full and _reach(g.in_masks, 0) == full


def _require_strong(g: Digraph) -> None:
    if not is_strong(g):
        raise NotStrongError("digraph is not strongly connected")


def distances(g: Digraph) -> list[list[int]]:
    """All-pairs distances by one BFS per source (cached on the digraph; a fresh copy is returned)."""
    cached = g.__dict__.get("_distances")
    if cached is None:
        cached = _bfs_distances(g)
        g.__dict__["_distances"] = cached
    return [list(r) for r in cached]


def _bfs_distances(g: Digraph) -> tuple[tuple[int, ...], ...]:
    _require_strong(g)
    out = [[v for v in range(g.n) if g.out_masks[u] >> v & 1] for u in range(g.n)]
    dist = []
    for s in range(g.n):
        row = [-1] * g.n
        row[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in out[u]:
                if row[v] < 0:
                    row[v] = row[u] + 1
                    queue.append(v)
        dist.append(tuple(row))
    return tuple(dist)


def distance_matrix(g: Digraph, kind: MatrixKind | str = MatrixKind.D) -> IntMatrix:
    kind = MatrixKind(kind)
    d = distances(g)
    if kind is MatrixKind.D:
        return IntMatrix.from_rows(d)
    if kind in (MatrixKind.DL, MatrixKind.DQ):
        diag = [sum(row) for row in d]
    else:
        diag = [g.out_degree(u) for u in range(g.n)]
    sign = -1 if kind in (MatrixKind.DL, MatrixKind.DDEG) else 1
    return IntMatrix.from_rows(
        [[diag[u] if u == v else sign * d[u][v] for v in range(g.n)] for u in range(g.n)])


def diameter(g: Digraph) -> int:
    return max((max(row) for row in distances(g)), default=0)


# named families -------------------------------------------------------------


@dataclass(frozen=True)
class LambdaParams:
    """Block sizes of the four-block family: cliques ``a``, ``c``; independent sets ``b``, ``d``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("block sizes must be non-negative")
        if self.a + self.b + self.c + self.d < 1:
            raise ValueError("at least one vertex required")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def swapped(self) -> "LambdaParams":
        return LambdaParams(self.c, self.d, self.a, self.b)

    def blocks(self) -> tuple[range, range, range, range]:
        """Vertex ranges of ``K_a, T_b, K_c, T_d`` in that order."""
        a, b, c, d = self.astuple()
        return (range(0, a), range(a, a + b), range(a + b, a + b + c),
                range(a + b + c, a + b + c + d))


def circuit(n: int) -> Digraph:
    if n < 1:
        raise ValueError("circuit needs n >= 1")
    if n == 1:
        return Digraph(1)
    return Digraph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def complete(n: int) -> Digraph:
    if n < 1:
        raise ValueError("complete digraph needs n >= 1")
    return Digraph(n, frozenset((u, v) for u in range(n) for v in range(n) if u != v))


def complete_bipartite(m: int, n: int) -> Digraph:
    """``K_{m,n}`` with every edge taken in both directions; parts ``0..m-1`` and ``m..m+n-1``."""
    if m < 1 or n < 1:
        raise ValueError("complete bipartite needs m, n >= 1")
    arcs = set()
    for u in range(m):
        for v in range(m, m + n):
            arcs.add((u, v))
            arcs.add((v, u))
    return Digraph(m + n, frozenset(arcs))


def lambda_digraph(p: LambdaParams | tuple[int, int, int, int]) -> Digraph:
    """Vertices ordered ``K_a, T_b, K_c, T_d``.

    Arcs: inside ``K_a`` and ``K_c`` all; ``K_a->T_b``, ``T_b->K_c``,
    ``K_c->T_d``, ``T_d->K_a`` and both ways between ``T_b`` and ``T_d``.
    Strongness is not checked here.
    """
    if not isinstance(p, LambdaParams):
        p = LambdaParams(*p)
    ka, tb, kc, td = p.blocks()
    arcs = set()

    def join(src, dst):
        arcs.update((u, v) for u in src for v in dst if u != v)

    join(ka, ka)
    join(kc, kc)
    join(ka, tb)
    join(tb, kc)
    join(kc, td)
    join(td, ka)
    join(tb, td)
    join(td, tb)
    return Digraph(p.n, frozenset(arcs))


# isomorphism ----------------------------------------------------------------


def are_isomorphic(g: Digraph, h: Digraph) -> bool:
    return find_isomorphism(g, h) is not None


def find_isomorphism(g: Digraph, h: Digraph) -> list[int] | None:
    """A vertex map ``phi`` with ``(u,v)`` in g iff ``(phi[u],phi[v])`` in h, or None."""
    if g.n != h.n or len(g.arcs) != len(h.arcs):
        return None
    n = g.n
    if n > ISOMORPHISM_CAP:
        raise ValueError(f"isomorphism search capped at n <= {ISOMORPHISM_CAP}")
    sig_g = [(g.out_degree(u), g.in_degree(u)) for u in range(n)]
    sig_h = [(h.out_degree(u), h.in_degree(u)) for u in range(n)]
    if sorted(sig_g) != sorted(sig_h):
        return None
    # most constrained vertices first
    order = sorted(range(n), key=lambda u: sum(1 for s in sig_g if s == sig_g[u]))
    phi = [-1] * n
    used = [False] * n

    def extend(k: int) -> bool:
        if k == n:
            return True
        u = order[k]
        for w in range(n):
            if used[w] or sig_h[w] != sig_g[u]:
                continue
            ok = True
            for j in range(k):
                x = order[j]
                y = phi[x]
                if g.has_arc(u, x) != h.has_arc(w, y) or g.has_arc(x, u) != h.has_arc(y, w):
                    ok = False
                    break
            if ok:
                phi[u] = w
                used[w] = True
                if extend(k + 1):
                    return True
                used[w] = False
        phi[u] = -1
        return False

    return list(phi) if extend(0) else None


# enumeration ----------------------------------------------------------------


def arc_slots(n: int) -> list[tuple[int, int]]:
    """Bit ``i`` of an arc mask stands for ``arc_slots(n)[i]``; pairs in (u, v) order."""
    return [(u, v) for u in range(n) for v in range(n) if u != v]


_SLOT_CACHE: dict[int, dict[tuple[int, int], int]] = {}


def _slot_index(n: int) -> dict[tuple[int, int], int]:
    if n not in _SLOT_CACHE:
        _SLOT_CACHE[n] = {a: i for i, a in enumerate(arc_slots(n))}
    return _SLOT_CACHE[n]


def digraph_from_mask(n: int, mask: int) -> Digraph:
    slots = arc_slots(n)
    return Digraph(n, frozenset(slots[i] for i in range(len(slots)) if mask >> i & 1))


def _mask_vertex_arrays(n: int, masks: np.ndarray) -> tuple[list[np.ndarray], list[np.ndarray]]:
    out = [np.zeros(masks.shape, dtype=np.int64) for _ in range(n)]
    inn = [np.zeros(masks.shape, dtype=np.int64) for _ in range(n)]
    for i, (u, v) in enumerate(arc_slots(n)):
        bit = (masks >> i) & 1
        out[u] |= bit << v
        inn[v] |= bit << u
    return out, inn


def _reach_all(n: int, adj: list[np.ndarray]) -> np.ndarray:
    seen = np.ones(adj[0].shape, dtype=np.int64)
    for _ in range(n - 1):
        nxt = seen.copy()
        for u in range(n):
            nxt |= np.where((seen >> u) & 1 == 1, adj[u], 0)
        seen = nxt
    return seen


def strong_masks(n: int) -> np.ndarray:
    """Arc masks of all labeled strong digraphs on n vertices, ascending."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > ENUMERATION_CAP:
        raise ValueError(f"enumeration capped at n <= {ENUMERATION_CAP}")
    if n == 1:
        return np.zeros(1, dtype=np.int64)
    masks = np.arange(1 << (n * (n - 1)), dtype=np.int64)
    out, inn = _mask_vertex_arrays(n, masks)
    full = (1 << n) - 1
    ok = (_reach_all(n, out) == full) & (_reach_all(n, inn) == full)
    return masks[ok]


def enumerate_strong(n: int) -> Iterator[Digraph]:
    """Every labeled strong digraph on n vertices, in ascending arc-mask order."""
    for m in strong_masks(n):
        yield digraph_from_mask(n, int(m))


def canonical_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Least arc mask over all vertex relabelings, vectorized over ``masks``."""
    slots = arc_slots(n)
    index = _slot_index(n)
    best = None
    for perm in permutations(range(n)):
        image = np.zeros(masks.shape, dtype=np.int64)
        for i, (u, v) in enumerate(slots):
            image |= ((masks >> i) & 1) << index[(perm[u], perm[v])]
        best = image if best is None else np.minimum(best, image)
    return best


def count_strong_classes(n: int) -> int:
    """Number of isomorphism classes of strong digraphs on n vertices."""
    return int(np.unique(canonical_masks(n, strong_masks(n))).size)
