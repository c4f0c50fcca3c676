"""Arc patterns (U, B, C), the built-in forbidden patterns and the Gamma-1 classifier.

A pattern on ``k`` vertices lists required arcs ``B`` and forbidden arcs
``C``; every other ordered pair is unconstrained.  Pattern vertices are
numbered 0..k-1; the letters u, v, w, z are accepted as 0, 1, 2, 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable

from .digraph import (Digraph, LambdaParams, NotStrongError, circuit, find_isomorphism, is_strong,
                      lambda_digraph)

Arc = tuple[int, int]
LETTERS = {"u": 0, "v": 1, "w": 2, "z": 3}
GAMMA1_PATTERNS = ("F1", "F2", "F3", "F4", "F5")
BRUTE_FORCE_CAP = 8


@dataclass(frozen=True)
class Pattern:
    k: int
    required: frozenset[Arc]
    forbidden: frozenset[Arc]
    name: str = ""

    def __post_init__(self):
        for u, v in self.required | self.forbidden:
            if not (0 <= u < self.k and 0 <= v < self.k) or u == v:
                raise ValueError(f"bad pattern arc {u}->{v} for k={self.k}")
        if self.required & self.forbidden:
            raise ValueError("required and forbidden arcs overlap")

    def to_text(self) -> str:
        def arcs(s):
            return ",".join(f"{u}->{v}" for u, v in sorted(s))
        return f"k={self.k}; B: {arcs(self.required)}; C: {arcs(self.forbidden)}"

    @classmethod
    def from_text(cls, text: str, name: str = "") -> "Pattern":
        """Parse ``k=<count>; B: u->v,...; C: u->v,...``."""
        parts = {}
        for chunk in text.strip().split(";"):
            chunk = chunk.strip()
            if not chunk:
                continue
            m = re.fullmatch(r"(k)\s*=\s*(\d+)|([BC])\s*:\s*(.*)", chunk)
            if not m:
                raise ValueError(f"cannot parse pattern section {chunk!r}")
            if m.group(1):
                parts["k"] = int(m.group(2))
            else:
                parts[m.group(3)] = _parse_arcs(m.group(4))
        if "k" not in parts:
            raise ValueError("pattern text needs k=<count>")
        return cls(parts["k"], frozenset(parts.get("B", ())), frozenset(parts.get("C", ())), name)


def _vertex(tok: str) -> int:
    tok = tok.strip()
    return LETTERS[tok] if tok in LETTERS else int(tok)


def _parse_arcs(text: str) -> list[Arc]:
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "->" not in item:
            raise ValueError(f"expected u->v, got {item!r}")
        a, b = item.split("->")
        out.append((_vertex(a), _vertex(b)))
    return out


def _pat(name: str, k: int, required: str, forbidden: str) -> Pattern:
    return Pattern(k, frozenset(_parse_arcs(required)), frozenset(_parse_arcs(forbidden)), name)


def _symmetrized(name: str, k: int, edges: str, non_edges: str) -> Pattern:
    def both(text):
        arcs = _parse_arcs(text.replace("-", "->"))
        return frozenset(arcs) | frozenset((v, u) for u, v in arcs)
    return Pattern(k, both(edges), both(non_edges), name)


_BUILTIN = {
    "P4": _pat("P4", 4, "u->w, w->z, z->v", "u->z, u->v, w->v"),
    "F1": _pat("F1", 4, "u->v, v->w", "u->w, u->z, v->z"),
    "F2": _pat("F2", 3, "u->v, u->w, v->w, w->u, w->v", "v->u"),
    "F3": _pat("F3", 4, "u->z, u->v, w->v", "w->z"),
    "F4": _pat("F4", 3, "u->v, v->u, v->w", "w->v, u->w, w->u"),
    "F5": _pat("F5", 3, "u->v, v->u, w->v", "v->w, u->w, w->u"),
    # undirected: path u-w-z-v whose ends are not adjacent
    "F6": _symmetrized("F6", 4, "u-w, w-z, z-v", "u-v"),
}


def builtin(name: str) -> Pattern:
    try:
        return _BUILTIN[name.upper()]
    except KeyError:
        raise ValueError(f"unknown pattern {name!r}; known: {', '.join(_BUILTIN)}") from None


def builtin_names() -> list[str]:
    return list(_BUILTIN)


def contains_pattern(g: Digraph, p: Pattern) -> tuple[int, ...] | None:
    """First embedding in lexicographic order of the image tuple, or None.

    ``result[i]`` is the vertex of g playing pattern vertex i.
    """
    if p.k > g.n:
        return None
    out = g.out_masks
    # constraints between pattern vertex i and an earlier j, checked on assignment
    checks: list[list[tuple[int, bool, bool]]] = [[] for _ in range(p.k)]
    for (a, b), want in [(arc, True) for arc in p.required] + [(arc, False) for arc in p.forbidden]:
        i, j = max(a, b), min(a, b)
        checks[i].append((j, a == i, want))  # (earlier vertex, arc leaves i?, must exist?)
    image = [0] * p.k
    used = 0

    def extend(i: int) -> bool:
        nonlocal used
        if i == p.k:
            return True
        for x in range(g.n):
            if used >> x & 1:
                continue
            ok = True
            for j, outward, want in checks[i]:
                y = image[j]
                present = bool(out[x] >> y & 1) if outward else bool(out[y] >> x & 1)
                if present != want:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = x
            used |= 1 << x
            if extend(i + 1):
                return True
            used &= ~(1 << x)
        return False

    return tuple(image) if extend(0) else None


def _require_strong(g: Digraph) -> None:
    if not is_strong(g):
        raise NotStrongError("digraph is not strongly connected")


def first_gamma1_pattern(g: Digraph) -> tuple[str, tuple[int, ...]] | None:
    for name in GAMMA1_PATTERNS:
        emb = contains_pattern(g, _BUILTIN[name])
        if emb is not None:
            return name, emb
    return None


def is_gamma1_pattern_free(g: Digraph) -> bool:
    """True iff none of F1..F5 embeds in g."""
    _require_strong(g)
    return first_gamma1_pattern(g) is None


# Lambda structure recovery -------------------------------------------------


def lambda_realizations(g: Digraph) -> list[tuple[LambdaParams, tuple[tuple[int, ...], ...]]]:
    """Every way of reading g as a four-block digraph, with its blocks.

    With ``S1 = K_a + T_b`` and ``S2 = K_c + T_d`` every vertex of the family
    has out-neighbourhood ``S1 - v`` (K_a), ``S2`` (T_b), ``S2 - v`` (K_c) or
    ``S1`` (T_d).  Out-neighbourhoods determine the digraph, so each candidate
    split that assigns every vertex a block is an exact realization.  ``S1``
    is always an open or closed out-neighbourhood or the complement of one,
    so trying those candidates is complete.
    """
    if g.n == 1:
        # a lone vertex fits every block
        return [(LambdaParams(*t), tuple((0,) if x else () for x in t))
                for t in [(0, 0, 0, 1), (0, 0, 1, 0), (0, 1, 0, 0), (1, 0, 0, 0)]]
    full = (1 << g.n) - 1
    out = g.out_masks
    candidates = set()
    for v in range(g.n):
        for s in (out[v], out[v] | 1 << v):
            candidates.add(s)
            candidates.add(full & ~s)
    found = {}
    for s1 in sorted(candidates):
        s2 = full & ~s1
        blocks: tuple[list[int], ...] = ([], [], [], [])
        for v in range(g.n):
            bit = 1 << v
            if s1 & bit:
                if out[v] == s1 & ~bit:
                    blocks[0].append(v)
                elif out[v] == s2:
                    blocks[1].append(v)
                else:
                    break
            else:
                if out[v] == s2 & ~bit:
                    blocks[2].append(v)
                elif out[v] == s1:
                    blocks[3].append(v)
                else:
                    break
        else:
            params = LambdaParams(*(len(b) for b in blocks))
            found.setdefault(params.astuple(), (params, tuple(tuple(b) for b in blocks)))
    return [found[k] for k in sorted(found)]


def lambda_parameters_bruteforce(g: Digraph) -> list[LambdaParams]:
    """All parameter tuples with ``lambda_digraph(p)`` isomorphic to g (n <= 8)."""
    if g.n > BRUTE_FORCE_CAP:
        raise ValueError(f"brute-force parameter search capped at n <= {BRUTE_FORCE_CAP}")
    out = []
    for a, b, c in product(range(g.n + 1), repeat=3):
        d = g.n - a - b - c
        if d < 0:
            continue
        h = lambda_digraph((a, b, c, d))
        if len(h.arcs) == len(g.arcs) and find_isomorphism(h, g) is not None:
            out.append(LambdaParams(a, b, c, d))
    return out


@dataclass(frozen=True)
class ClassificationResult:
    """``tag`` is "Circuit3", "Lambda" or "NotInGamma1".

    For Lambda, ``params`` and ``blocks`` (vertex lists of K_a, T_b, K_c, T_d)
    are set; for NotInGamma1, ``pattern`` and ``embedding`` name the
    forbidden pattern found.  For Circuit3, ``embedding`` lists the cycle.
    """

    tag: str
    params: LambdaParams | None = None
    blocks: tuple[tuple[int, ...], ...] | None = None
    pattern: str | None = None
    embedding: tuple[int, ...] | None = None
    alternatives: tuple[LambdaParams, ...] = field(default=())

    def __str__(self):
        if self.tag == "Lambda":
            return f"Lambda{self.params.astuple()} blocks={[list(b) for b in self.blocks]}"
        if self.tag == "NotInGamma1":
            return f"NotInGamma1 witness={self.pattern}@{list(self.embedding) if self.embedding else None}"
        return f"Circuit3 cycle={list(self.embedding)}"

    def to_dict(self) -> dict:
        d: dict = {"tag": self.tag}
        if self.params is not None:
            d["params"] = list(self.params.astuple())
            d["blocks"] = [list(b) for b in self.blocks]
            d["alternatives"] = [list(p.astuple()) for p in self.alternatives]
        if self.pattern is not None:
            d["pattern"] = self.pattern
        if self.embedding is not None:
            d["embedding"] = list(self.embedding)
        return d


def classify(g: Digraph) -> ClassificationResult:
    """C3, a four-block digraph, or neither (with a forbidden-pattern witness).

    Among equivalent parameter tuples the lexicographically largest is
    reported, so complete digraphs come out as ``(n,0,0,0)``.
    """
    _require_strong(g)
    if g.n == 3 and len(g.arcs) == 3:
        iso = find_isomorphism(circuit(3), g)
        if iso is not None:
            return ClassificationResult("Circuit3", embedding=tuple(iso))
    reals = lambda_realizations(g)
    if reals:
        params, blocks = max(reals, key=lambda r: r[0].astuple())
        return ClassificationResult("Lambda", params=params, blocks=blocks,
                                    alternatives=tuple(r[0] for r in reals))
    hit = first_gamma1_pattern(g)
    if hit is None:
        return ClassificationResult("NotInGamma1")
    return ClassificationResult("NotInGamma1", pattern=hit[0], embedding=hit[1])


def is_lambda_blocks(g: Digraph, params: LambdaParams, blocks: Iterable[Iterable[int]]) -> bool:
    """Check that the given block assignment realizes g exactly."""
    blocks = [list(b) for b in blocks]
    if [len(b) for b in blocks] != list(params.astuple()):
        return False
    order = [v for b in blocks for v in b]
    if sorted(order) != list(range(g.n)):
        return False
    return lambda_digraph(params).relabel(order) == g


# undirected pattern --------------------------------------------------------


def is_f6_free_graph(g: Digraph) -> bool:
    """For a symmetric digraph (an undirected graph): no path u-w-z-v with u, v non-adjacent."""
    if not g.is_symmetric():
        raise ValueError("F6 is an undirected pattern; the digraph must be symmetric")
    return contains_pattern(g, _BUILTIN["F6"]) is None
