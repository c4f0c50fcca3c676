"""Command-line front end.

Digraph sources are a file path, ``-`` for stdin, or a family spec such as
``circuit:5``, ``complete:4``, ``bipartite:2,3``, ``star:3`` or
``lambda:1,1,0,1``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .digraph import (Digraph, MatrixKind, NotStrongError, circuit, complete, complete_bipartite,
                      distance_matrix, is_strong, lambda_digraph)
from .families import (conjectured_univariate_circuit, ideal_complete, ideal_lambda_a10d,
                       ideal_lambda_ab01, ideal_star, second_ideal_lambda, third_ideal_circuit)
from .groebner import GroebnerLimitError
from .ideals import (distance_ideal, evaluate_ideal, ideals_equal, phi,
                     univariate_distance_ideal)
from .linalg import smith_normal_form
from .patterns import Pattern, builtin, builtin_names, classify, contains_pattern
from .poly import MonomialOrder
from .suites import DEFAULT_N_MAX, SUITES, run_suite

_FAMILIES = {
    "circuit": (circuit, 1),
    "complete": (complete, 1),
    "bipartite": (complete_bipartite, 2),
    "star": (lambda m: complete_bipartite(m, 1), 1),
    "lambda": (lambda *p: lambda_digraph(p), 4),
}

_FORMULAS = {
    "complete": (ideal_complete, ["n"], True),
    "star": (ideal_star, ["m"], True),
    "lambda-ab01": (ideal_lambda_ab01, ["a", "b"], True),
    "lambda-a10d": (ideal_lambda_a10d, ["a", "d"], True),
    "lambda-second": (second_ideal_lambda, ["a", "b", "c", "d"], False),
    "circuit-third": (third_ideal_circuit, ["n"], False),
    "circuit-conjecture": (conjectured_univariate_circuit, ["n"], True),
}


class UsageError(Exception):
    pass


def load_digraph(source: str) -> Digraph:
    if source == "-":
        return Digraph.from_text(sys.stdin.read())
    name, sep, rest = source.partition(":")
    if sep and name in _FAMILIES:
        make, arity = _FAMILIES[name]
        try:
            params = [int(x) for x in rest.split(",")]
        except ValueError:
            raise UsageError(f"bad parameters in {source!r}") from None
        if len(params) != arity:
            raise UsageError(f"{name} takes {arity} parameter(s)")
        return make(*params)
    path = Path(source)
    if not path.exists():
        raise UsageError(f"no such file or family spec: {source!r}")
    return Digraph.from_text(path.read_text())


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _parse_point(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad point {text!r}; expected comma-separated integers") from None


def cmd_ideal(args) -> int:
    g = load_digraph(args.source)
    if not is_strong(g):
        raise NotStrongError("digraph is not strongly connected")
    ideal = (univariate_distance_ideal if args.univariate else distance_ideal)(g, args.k)
    order = MonomialOrder(args.order)
    payload: dict = {"n": g.n, "k": args.k, "univariate": args.univariate,
                     "variables": list(ideal.ctx.names),
                     "generators": [p.format(order) for p in ideal.generators]}
    lines = [f"I_{args.k} ({'univariate' if args.univariate else 'multivariate'}, n={g.n}): "
             f"{len(ideal.generators)} distinct nonzero minors"]
    lines += [f"  {s}" for s in payload["generators"]]
    if args.groebner:
        basis = [p.format(order) for p in ideal.basis(order)]
        payload["basis"] = basis
        payload["order"] = order.value
        lines.append(f"strong Groebner basis ({order.value}):")
        lines += [f"  {s}" for s in basis]
    if args.evaluate_at is not None:
        point = _parse_point(args.evaluate_at)
        value = evaluate_ideal(ideal, point)
        payload["evaluated"] = {"point": point, "gcd": value}
        lines.append(f"evaluated at {point}: <{value}>")
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_snf(args) -> int:
    g = load_digraph(args.source)
    snf = smith_normal_form(distance_matrix(g, args.matrix))
    payload = {"n": g.n, "matrix": MatrixKind(args.matrix).value,
               "invariant_factors": list(snf.diagonal), "rank": snf.rank}
    _emit(args, payload, ",".join(str(f) for f in snf.diagonal))
    return 0


def cmd_classify(args) -> int:
    g = load_digraph(args.source)
    result = classify(g)
    profile = phi(g)
    payload = result.to_dict() | {"phi": profile.phi}
    _emit(args, payload, f"{result}\nPhi={profile.phi}")
    return 0


def cmd_pattern(args) -> int:
    g = load_digraph(args.source)
    if args.pattern.upper() in builtin_names():
        pat = builtin(args.pattern)
    else:
        pat = Pattern.from_text(args.pattern, name="custom")
    emb = contains_pattern(g, pat)
    payload = {"pattern": pat.to_text(), "embedding": list(emb) if emb else None}
    _emit(args, payload, f"embedding: {list(emb)}" if emb else "not contained")
    return 0


def cmd_family(args) -> int:
    make, names, takes_k = _FORMULAS[args.name]
    if len(args.params) != len(names):
        raise UsageError(f"{args.name} takes parameters {' '.join(names)}")
    if takes_k:
        if args.k is None:
            raise UsageError(f"{args.name} needs --k")
        cf = make(*args.params, args.k)
    else:
        cf = make(*args.params)
    payload: dict = {"family": cf.family, "params": list(cf.params), "k": cf.k,
                     "variables": list(cf.ctx.names),
                     "generators": [p.format() for p in cf.generators]}
    lines = [f"{cf.family}{tuple(cf.params)} k={cf.k} over {', '.join(cf.ctx.names)}"]
    lines += [f"  {s}" for s in payload["generators"]]
    status = 0
    if args.check:
        if cf.vertex_names is None:
            ref = univariate_distance_ideal(cf.digraph(), cf.k)
            ok = ideals_equal(cf.ideal(), ref)
        else:
            ok = ideals_equal(cf.to_vertex_context(), distance_ideal(cf.digraph(), cf.k))
        payload["matches_minors"] = ok
        lines.append(f"matches minor-generated ideal: {'yes' if ok else 'NO'}")
        status = 0 if ok else 1
    _emit(args, payload, "\n".join(lines))
    return status


def cmd_verify(args) -> int:
    extra = {"tolerance": args.tolerance} if args.suite == "conjecture" else {}
    report = run_suite(args.suite, n_max=args.n_max, seed=args.seed, parallel=args.parallel,
                       progress=not args.quiet, **extra)
    print(report.to_json() if args.json else report.to_text())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    # accepted before or after the subcommand; the subcommand copy must not reset it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")

    parser = argparse.ArgumentParser(prog="distideals",
                                     description="Distance ideals of strong digraphs.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ideal", parents=[common], help="distance ideal of a digraph")
    p.add_argument("source")
    p.add_argument("--k", type=int, required=True, help="minor size")
    p.add_argument("--univariate", action="store_true", help="use tI + D instead of diag(X) + D")
    p.add_argument("--groebner", action="store_true", help="also print a strong Groebner basis")
    p.add_argument("--evaluate-at", metavar="V0,V1,...", help="gcd of generators at an integer point")
    p.add_argument("--order", choices=[o.value for o in MonomialOrder], default="degrevlex")
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("snf", parents=[common], help="Smith normal form of a distance matrix")
    p.add_argument("source")
    p.add_argument("--matrix", choices=[k.value for k in MatrixKind], default="D")
    p.set_defaults(func=cmd_snf)

    p = sub.add_parser("classify", parents=[common], help="C3 / four-block family / neither")
    p.add_argument("source")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pattern", parents=[common], help="search for a pattern embedding")
    p.add_argument("source")
    p.add_argument("pattern", help=f"one of {', '.join(builtin_names())} or 'k=..; B: ..; C: ..'")
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("family", parents=[common], help="closed-form ideal of a solved family")
    p.add_argument("name", choices=list(_FORMULAS))
    p.add_argument("params", type=int, nargs="*")
    p.add_argument("--k", type=int)
    p.add_argument("--check", action="store_true", help="compare with the minor-generated ideal")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES))
    p.add_argument("--n-max", type=int,
                   help="largest vertex count (defaults: "
                        + ", ".join(f"{k} {v}" for k, v in DEFAULT_N_MAX.items()) + ")")
    p.add_argument("--parallel", type=int, default=1, help="worker processes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-6, help="circulant check tolerance")
    p.add_argument("--quiet", action="store_true", help="no progress on stderr")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, NotStrongError, GroebnerLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
