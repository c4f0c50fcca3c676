"""Verification suites and the report they produce.

Each suite returns a list of :class:`Record`; the CLI wraps them in a
:class:`Report`.  Enumeration suites split the labeled strong digraphs into
chunks that can run in worker processes; results are merged and sorted, so
``parallel`` changes wall time only.
"""

from __future__ import annotations

import json
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product
from math import prod
from typing import Callable, Sequence

from . import groebner
from .digraph import (Digraph, circuit, count_strong_classes, diameter,
                      digraph_from_mask, distance_matrix, from_arc_list, is_strong, lambda_digraph,
                      strong_masks)
from .families import (circulant_det_check, conjectured_univariate_circuit, ideal_complete,
                       ideal_lambda_a10d, ideal_lambda_ab01, ideal_star, second_ideal_lambda,
                       snf_circuit, snf_lambda_a10d, snf_lambda_ab01, third_ideal_circuit)
from .ideals import (distance_ideal, evaluate_ideal, ideals_equal, phi_is_one,
                     second_ideal_trivial, univariate_distance_ideal)
from .linalg import gcd_of_minors, smith_normal_form
from .patterns import builtin, classify, contains_pattern, first_gamma1_pattern
from .poly import MultiPoly

REPORT_SCHEMA = "distideals-report/1"
CHUNK = 4000
PASS, FAIL, ERROR = "PASS", "FAIL", "ERROR"


@dataclass
class Record:
    name: str
    params: dict
    status: str
    details: str = ""

    def sort_key(self):
        return (self.name, tuple(sorted(self.params.items())))


@dataclass
class Report:
    command: str
    records: list[Record] = field(default_factory=list)
    wall_time: float = 0.0

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, ERROR: 0}
        for r in self.records:
            out[r.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        c = self.counts()
        return 1 if c[FAIL] or c[ERROR] else 0

    def to_json(self) -> str:
        return json.dumps({"schema": REPORT_SCHEMA, "command": self.command,
                           "records": [asdict(r) for r in self.records],
                           "summary": self.counts(), "wall_time": round(self.wall_time, 3)},
                          indent=2)

    def to_text(self) -> str:
        lines = [f"# {self.command}"]
        for r in self.records:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            lines.append(f"{r.status:5} {r.name} {params}  {r.details}".rstrip())
        c = self.counts()
        lines.append(f"summary: {len(self.records)} checks, {c[PASS]} pass, {c[FAIL]} fail, "
                     f"{c[ERROR]} error; wall {self.wall_time:.2f}s")
        return "\n".join(lines)


def _progress(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def _guarded(name: str, params: dict, check: Callable[[], tuple[bool, str]]) -> Record:
    try:
        ok, details = check()
    except Exception as exc:  # surfaced as an ERROR record, never swallowed silently
        return Record(name, params, ERROR, f"{type(exc).__name__}: {exc}")
    return Record(name, params, PASS if ok else FAIL, details)


# enumeration plumbing --------------------------------------------------------


def _chunks(n: int) -> list[tuple[int, list[int]]]:
    masks = [int(m) for m in strong_masks(n)]
    return [(n, masks[i:i + CHUNK]) for i in range(0, len(masks), CHUNK)]


def _run_chunks(worker, n: int, parallel: int, progress: bool) -> list:
    chunks = _chunks(n)
    results = []
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            for i, res in enumerate(pool.map(worker, chunks)):
                results.append(res)
                if progress:
                    _progress(f"  n={n}: chunk {i + 1}/{len(chunks)}")
    else:
        for i, chunk in enumerate(chunks):
            results.append(worker(chunk))
            if progress and len(chunks) > 1:
                _progress(f"  n={n}: chunk {i + 1}/{len(chunks)}")
    return results


def _merge(results: list) -> tuple[dict, list]:
    counts: dict = {}
    failures: list = []
    for c, f in results:
        for k, v in c.items():
            counts[k] = counts.get(k, 0) + v
        failures.extend(f)
    return counts, sorted(failures)


def _fmt_failures(failures: list, limit: int = 5) -> str:
    if not failures:
        return ""
    shown = "; ".join(str(f) for f in failures[:limit])
    return f" first failures: {shown}" + (" ..." if len(failures) > limit else "")


# theorem-equi --------------------------------------------------------------------


def _equi_chunk(chunk: tuple[int, list[int]]):
    n, masks = chunk
    counts = {"digraphs": 0, "gamma1": 0}
    failures = []
    for m in masks:
        g = digraph_from_mask(n, m)
        one = phi_is_one(g)
        free = first_gamma1_pattern(g) is None
        member = classify(g).tag != "NotInGamma1"
        counts["digraphs"] += 1
        counts["gamma1"] += one
        if not (one == free == member):
            failures.append((m, f"phi1={one} free={free} family={member}"))
    return counts, failures


def suite_theorem_equi(n_max: int = 4, parallel: int = 1, progress: bool = False,
                       **_) -> list[Record]:
    """Phi = 1, F1..F5-freeness and membership in C3/Lambda agree (n >= 2)."""
    if not 2 <= n_max <= 5:
        raise ValueError("theorem-equi runs for 2 <= n-max <= 5 (5 is the long opt-in run)")
    records = []
    for n in range(2, n_max + 1):
        if progress:
            _progress(f"theorem-equi: n={n}")

        def check(n=n):
            counts, failures = _merge(_run_chunks(_equi_chunk, n, parallel, progress))
            classes = count_strong_classes(n)
            return not failures, (f"labeled={counts['digraphs']} classes={classes} "
                                  f"phi1={counts['gamma1']} exceptions={len(failures)}"
                                  + _fmt_failures(failures))
        records.append(_guarded("theorem-equi", {"n": n}, check))
    return records


# evaluation consistency ------------------------------------------------------------


def eval_check(g: Digraph) -> str | None:
    """Compare the ideal at 0, the gcd of minors and the invariant-factor products."""
    d = distance_matrix(g)
    snf = smith_normal_form(d)
    for i in range(1, g.n + 1):
        at_zero = evaluate_ideal(distance_ideal(g, i), [0] * g.n)
        delta = gcd_of_minors(d, i)
        factors = prod(snf.diagonal[:i])
        if not at_zero == delta == factors:
            return f"i={i}: ideal@0={at_zero} delta={delta} prod f={factors}"
    return None


def _eval_chunk(chunk):
    n, masks = chunk
    failures = []
    for m in masks:
        msg = eval_check(digraph_from_mask(n, m))
        if msg:
            failures.append((m, msg))
    return {"digraphs": len(masks)}, failures


def random_strong_digraph(rng: random.Random, n: int) -> Digraph:
    while True:
        p = rng.uniform(0.25, 0.75)
        arcs = [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p]
        g = from_arc_list(n, arcs)
        if is_strong(g):
            return g


def suite_eval_consistency(n_max: int = 4, seed: int = 0, parallel: int = 1,
                           progress: bool = False, samples: int = 100, **_) -> list[Record]:
    records = []
    for n in range(1, min(n_max, 5) + 1):
        if progress:
            _progress(f"eval-consistency: n={n}")

        def check(n=n):
            counts, failures = _merge(_run_chunks(_eval_chunk, n, parallel, progress))
            return not failures, f"digraphs={counts['digraphs']}" + _fmt_failures(failures)
        records.append(_guarded("eval-consistency", {"n": n}, check))

    def sampled():
        rng = random.Random(seed)
        failures = []
        for t in range(samples):
            g = random_strong_digraph(rng, rng.choice((5, 6)))
            msg = eval_check(g)
            if msg:
                failures.append((g.to_text().replace("\n", " "), msg))
        return not failures, f"samples={samples} n in {{5,6}}" + _fmt_failures(failures)
    records.append(_guarded("eval-consistency-random", {"seed": seed, "samples": samples}, sampled))
    return records


# second invariant factor -------------------------------------------------------------


def _f2_chunk(chunk):
    n, masks = chunk
    failures = []
    for m in masks:
        f = smith_normal_form(distance_matrix(digraph_from_mask(n, m))).diagonal
        if f[1] != 1:
            failures.append((m, f"SNF={f}"))
    return {"digraphs": len(masks)}, failures


def suite_second_factor(n_max: int = 5, parallel: int = 1, progress: bool = False,
                        **_) -> list[Record]:
    """Second invariant factor of D(G) equals 1 for every strong G with n >= 2."""
    records = []
    for n in range(2, n_max + 1):
        if progress:
            _progress(f"second-factor: n={n}")

        def check(n=n):
            counts, failures = _merge(_run_chunks(_f2_chunk, n, parallel, progress))
            return not failures, f"digraphs={counts['digraphs']}" + _fmt_failures(failures)
        records.append(_guarded("second-factor", {"n": n}, check))
    return records


# circuits -----------------------------------------------------------------------------


def suite_circuit_snf(n_max: int = 12, **_) -> list[Record]:
    records = []
    for n in range(3, n_max + 1):
        def check(n=n):
            got = smith_normal_form(distance_matrix(circuit(n)))
            want = snf_circuit(n)
            return got == want, f"snf={list(got.diagonal)}"
        records.append(_guarded("circuit-snf", {"n": n}, check))
    return records


# closed forms ---------------------------------------------------------------------


def _closed_form_record(name: str, params: dict, make) -> Record:
    def check():
        cf = make()
        ok = ideals_equal(cf.to_vertex_context(), distance_ideal(cf.digraph(), cf.k))
        return ok, f"{len(cf.generators)} generators"
    return _guarded(name, params, check)


def suite_lambda_ideals(n_max: int = 5, **_) -> list[Record]:
    """Closed-form ideals against minor-generated ones, plus the SNF formulas.

    ``n_max`` bounds the vertex count of the ideal checks; the SNF formulas are
    checked for ``a <= 3`` and ``b, d <= 4``; ``I_3(C_n)`` for n = 5, 6, 7.
    """
    records: list[Record] = []
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            records.append(_closed_form_record("ideal-complete", {"n": n, "k": k},
                                               lambda n=n, k=k: ideal_complete(n, k)))
    for m in range(1, n_max):
        for k in range(1, m + 2):
            records.append(_closed_form_record("ideal-star", {"m": m, "k": k},
                                               lambda m=m, k=k: ideal_star(m, k)))
    for a, b in product(range(n_max), range(1, n_max)):
        if a + b > n_max - 1:
            continue
        for k in range(1, a + b + 2):
            records.append(_closed_form_record("ideal-lambda-ab01", {"a": a, "b": b, "k": k},
                                               lambda a=a, b=b, k=k: ideal_lambda_ab01(a, b, k)))
            records.append(_closed_form_record("ideal-lambda-a10d", {"a": a, "d": b, "k": k},
                                               lambda a=a, b=b, k=k: ideal_lambda_a10d(a, b, k)))
    for a, b, c, d in product(range(n_max + 1), repeat=4):
        if not 2 <= a + b + c + d <= n_max or not is_strong(lambda_digraph((a, b, c, d))):
            continue
        records.append(_closed_form_record(
            "second-ideal-lambda", {"a": a, "b": b, "c": c, "d": d},
            lambda a=a, b=b, c=c, d=d: second_ideal_lambda(a, b, c, d)))
    for n in (5, 6, 7):
        records.append(_closed_form_record("third-ideal-circuit", {"n": n},
                                           lambda n=n: third_ideal_circuit(n)))
    for a, b in product(range(4), range(1, 5)):
        def snf_ab(a=a, b=b):
            got = smith_normal_form(distance_matrix(lambda_digraph((a, b, 0, 1))))
            return got == snf_lambda_ab01(a, b), f"snf={list(got.diagonal)}"

        def snf_ad(a=a, d=b):
            got = smith_normal_form(distance_matrix(lambda_digraph((a, 1, 0, d))))
            return got == snf_lambda_a10d(a, d), f"snf={list(got.diagonal)}"
        records.append(_guarded("snf-lambda-ab01", {"a": a, "b": b}, snf_ab))
        records.append(_guarded("snf-lambda-a10d", {"a": a, "d": b}, snf_ad))
    return records


# conjecture evidence ----------------------------------------------------------------


def suite_conjecture(n_max: int = 8, tolerance: float = 1e-6, **_) -> list[Record]:
    """Evidence only: agreement on the checked range proves nothing beyond it."""
    records = []
    for n in range(6, n_max + 1):
        for k in range(4, n - 1):
            def check(n=n, k=k):
                ok = ideals_equal(conjectured_univariate_circuit(n, k).ideal(),
                                  univariate_distance_ideal(circuit(n), k))
                return ok, "evidence, not proof"
            records.append(_guarded("conjecture-univariate", {"n": n, "k": k}, check))

        def last(n=n):
            basis = univariate_distance_ideal(circuit(n), n - 1).basis()
            return True, ("no closed form proposed; computed basis: "
                          + ", ".join(b.format() for b in basis))
        records.append(_guarded("univariate-circuit-k=n-1", {"n": n, "k": n - 1}, last))
    for n in range(3, 13):
        def det_check(n=n):
            r = circulant_det_check(n, tolerance)
            return r.passed, f"max relative deviation {r.max_relative_deviation:.2e}; evidence"
        records.append(_guarded("circulant-det", {"n": n, "tolerance": tolerance}, det_check))
    return records


# lemma suites -----------------------------------------------------------------------


def _diameter_chunk(chunk):
    n, masks = chunk
    f1 = builtin("F1")
    counts = {"digraphs": len(masks), "diameter>=3": 0}
    failures = []
    for m in masks:
        g = digraph_from_mask(n, m)
        if diameter(g) < 3:
            continue
        counts["diameter>=3"] += 1
        if not second_ideal_trivial(g):
            failures.append((m, "I2 not trivial"))
        if contains_pattern(g, f1) is None:
            failures.append((m, "no F1"))
    return counts, failures


def suite_diameter_lemma(n_max: int = 5, parallel: int = 1, progress: bool = False,
                         **_) -> list[Record]:
    """Diameter >= 3 forces a trivial second ideal and an F1 embedding."""
    records = []
    for n in range(1, n_max + 1):
        if progress:
            _progress(f"diameter-lemma: n={n}")

        def check(n=n):
            counts, failures = _merge(_run_chunks(_diameter_chunk, n, parallel, progress))
            return not failures, (f"digraphs={counts['digraphs']} "
                                  f"diameter>=3: {counts['diameter>=3']}" + _fmt_failures(failures))
        records.append(_guarded("diameter-lemma", {"n": n}, check))
    return records


_LEMMA_PATTERNS = ("F2", "F3", "F4", "F5")


def _pattern_chunk(chunk):
    n, masks = chunk
    pats = [builtin(k) for k in _LEMMA_PATTERNS]
    counts = {k: 0 for k in _LEMMA_PATTERNS}
    failures = []
    for m in masks:
        g = digraph_from_mask(n, m)
        if n < 2 or diameter(g) > 2:
            continue
        trivial = None
        for name, p in zip(_LEMMA_PATTERNS, pats):
            if contains_pattern(g, p) is None:
                continue
            counts[name] += 1
            if trivial is None:
                trivial = second_ideal_trivial(g)
            if not trivial:
                failures.append((m, f"{name} present, I2 not trivial"))
    return counts, failures


def suite_pattern_lemmas(n_max: int = 5, parallel: int = 1, progress: bool = False,
                         **_) -> list[Record]:
    """Diameter <= 2 plus any of F2..F5 forces a trivial second ideal."""
    records = []
    for n in range(2, n_max + 1):
        if progress:
            _progress(f"pattern-lemmas: n={n}")
        results = None
        err = None
        try:
            results = _merge(_run_chunks(_pattern_chunk, n, parallel, progress))
        except Exception as exc:
            err = f"{type(exc).__name__}: {exc}"
        for name in _LEMMA_PATTERNS:
            params = {"n": n, "pattern": name}
            if err:
                records.append(Record("pattern-lemma", params, ERROR, err))
                continue
            counts, failures = results
            mine = [f for f in failures if f[1].startswith(name)]
            records.append(Record("pattern-lemma", params, FAIL if mine else PASS,
                                  f"with pattern: {counts[name]}" + _fmt_failures(mine)))
    return records


# Groebner kernel ---------------------------------------------------------------------


def _random_multiplier(rng: random.Random, template: MultiPoly) -> MultiPoly:
    ctx = template.ctx
    nv = len(ctx)
    terms = {}
    for _ in range(rng.randint(1, 3)):
        e = [0] * nv
        for _ in range(rng.randint(0, 2)):
            e[rng.randrange(nv)] += 1
        terms[tuple(e)] = rng.randint(-5, 5)
    return MultiPoly(ctx, terms)


def kernel_checks(entries: Sequence[tuple], seed: int = 0, trials: int = 1000) -> list[Record]:
    """Closure of every recorded basis and random-combination membership trials."""
    unique = {}
    for gens, basis, order in entries:
        unique.setdefault((basis, order), gens)
    items = [(gens, basis, order) for (basis, order), gens in unique.items()]

    def closure():
        bad = [(i, d) for i, (_, basis, order) in enumerate(items)
               if (d := groebner.closure_defects(basis, order))]
        return not bad, f"bases={len(items)} defective={len(bad)}"

    def membership():
        if not items:
            return False, "no bases recorded"
        rng = random.Random(seed)
        misses = 0
        for _ in range(trials):
            gens, basis, order = items[rng.randrange(len(items))]
            combo = gens[0].ctx.zero()
            for g in gens:
                if rng.random() < 0.6:
                    combo = combo + _random_multiplier(rng, g) * g
            if groebner.normal_form(combo, basis, order).terms:
                misses += 1
        return misses == 0, f"trials={trials} misses={misses}"

    return [_guarded("groebner-closure", {}, closure),
            _guarded("groebner-membership", {"seed": seed, "trials": trials}, membership)]


SUITES: dict[str, Callable[..., list[Record]]] = {
    "theorem-equi": suite_theorem_equi,
    "eval-consistency": suite_eval_consistency,
    "circuit-snf": suite_circuit_snf,
    "lambda-ideals": suite_lambda_ideals,
    "conjecture": suite_conjecture,
    "diameter-lemma": suite_diameter_lemma,
    "pattern-lemmas": suite_pattern_lemmas,
    "second-factor": suite_second_factor,
}

DEFAULT_N_MAX = {
    "theorem-equi": 4, "eval-consistency": 4, "circuit-snf": 12, "lambda-ideals": 5,
    "conjecture": 8, "diameter-lemma": 5, "pattern-lemmas": 5, "second-factor": 5,
}

# suites that compute Groebner bases in-process get kernel checks appended
KERNEL_SUITES = {"theorem-equi", "lambda-ideals", "conjecture"}


def run_suite(name: str, n_max: int | None = None, seed: int = 0, parallel: int = 1,
              progress: bool = False, **kwargs) -> Report:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    n_max = DEFAULT_N_MAX[name] if n_max is None else n_max
    start = time.perf_counter()
    with groebner.record_bases() as log:
        records = SUITES[name](n_max=n_max, seed=seed, parallel=parallel, progress=progress,
                               **kwargs)
    if name in KERNEL_SUITES and log:
        records += kernel_checks(log, seed)
    records.sort(key=Record.sort_key)
    cmd = f"verify {name} --n-max {n_max} --seed {seed}"
    return Report(cmd, records, time.perf_counter() - start)
