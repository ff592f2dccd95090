"""Command-line front end.

Every subcommand prints JSON with sorted keys (or DOT / plain text where
offered), so repeated runs produce identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .core import InvalidWord, all_words, cf_dual, cf_value, check_word, dual_word
from .laurent import Laurent

SUBCOMMANDS = ("expand", "dual", "rank", "cf", "orbit", "snake", "poset", "sl3", "verify")


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _laurent_json(p: Laurent) -> dict:
    return {"text": str(p), "terms": len(p), **p.to_json()}


def _word(args) -> str:
    if args.word is None:
        raise UsageError("--word is required")
    return check_word(args.word)


def _word_or_shape(args) -> tuple[str, str]:
    """(shape, source) from --shape directly or from --word via the snake graph of w."""
    if args.shape is not None:
        return check_word(args.shape), "shape"
    if args.word is not None:
        return dual_word(check_word(args.word)), "word"
    raise UsageError("give --word or --shape")


# ---------------------------------------------------------------- commands

def cmd_expand(args) -> str:
    from .cluster_engine import cluster_variable
    from .expansions import expansion_poset, expansion_value, weight_sum
    from .triangulation import triangulation_from_word

    w = _word(args)
    X = expansion_poset(w, args.kind)
    value = expansion_value(w, args.kind)
    oracle = cluster_variable(triangulation_from_word(w))
    if args.format == "dot":
        return X.to_dot(f"{args.kind}_{w or 'empty'}")
    if args.format == "text":
        return f"{args.kind}({w}): {len(X)} elements\nsum = {weight_sum(X)}\nx_w = {value}\n"
    return _dump({
        "word": w,
        "kind": args.kind,
        "size": len(X),
        "poset": X.to_json(),
        "weight_sum": _laurent_json(weight_sum(X)),
        "value": _laurent_json(value),
        "matches_oracle": value == oracle,
    })


def cmd_poset(args) -> str:
    from .expansions import expansion_poset
    from .poset import rank_generating_function

    w = _word(args)
    X = expansion_poset(w, args.kind)
    if args.format == "dot":
        return X.to_dot(f"{args.kind}_{w or 'empty'}")
    if args.format == "text":
        return f"{args.kind}({w}): {len(X)} elements, {len(X.covers)} covers\n"
    return _dump({"word": w, "kind": args.kind, **X.to_json(),
                  "rank_polynomial": rank_generating_function(X).to_list()})


def cmd_dual(args) -> str:
    from .snakegraph import cf_of_word
    from .triangulation import dual_triangulation, triangulation_from_word

    w = _word(args)
    ws = dual_word(w)
    cf = cf_of_word(w)
    T = triangulation_from_word(w)
    Ts = dual_triangulation(T)
    out = {
        "word": w,
        "dual_word": ws,
        "cf": cf,
        "dual_cf": cf_dual(cf),
        "cf_of_dual_word": cf_of_word(ws),
        "triangles": [list(T.triangle_labels(i)) for i in range(len(T.triangles))],
        "dual_triangles": [list(Ts.triangle_labels(i)) for i in range(len(Ts.triangles))],
    }
    if args.format == "text":
        return f"{w or '(empty)'} -> {ws or '(empty)'}\nCF {cf} -> {cf_dual(cf)}\n"
    return _dump(out)


def cmd_rank(args) -> str:
    from .rank_analysis import (analyze, hook_expansion_text, rank_fibonacci, rank_hook,
                                rank_recursive, symmetry_by_shape)
    from .snakegraph import straight_segments

    shape, _ = _word_or_shape(args)
    p = rank_recursive(shape)
    flags = analyze(p)
    plateaus = flags.pop("plateaus")
    out = {
        "shape": shape,
        "segments": straight_segments(shape),
        "polynomial": p.to_list(),
        "flags": flags,
        "plateaus": [list(x) for x in plateaus],
        "hook_expansion": hook_expansion_text(shape),
        "formulas_agree": p == rank_hook(shape) == rank_fibonacci(shape),
        "symmetry": symmetry_by_shape(shape),
    }
    if args.format == "text":
        return f"{shape}: {p}\n"
    return _dump(out)


def cmd_cf(args) -> str:
    from .rank_analysis import q_deformed_rational, q_deformed_rational_dual, truncated_shape
    from .snakegraph import cf_of_word, matching_count_of_shape

    w = _word(args)
    cf = cf_of_word(w)
    val = cf_value(cf)
    shape = dual_word(w)
    rest = truncated_shape(shape, cf[0])
    num, den = q_deformed_rational(w)
    dnum, dden = q_deformed_rational_dual(w)
    out = {
        "word": w,
        "cf": cf,
        "value": f"{val.numerator}/{val.denominator}",
        "matchings": matching_count_of_shape(shape),
        "truncated_matchings": 1 if rest is None else matching_count_of_shape(rest),
        "q_numerator": num.to_list(),
        "q_denominator": den.to_list(),
        "dual_q_numerator": dnum.to_list(),
        "dual_q_denominator": dden.to_list(),
        "dual_cf": cf_dual(cf),
    }
    if args.format == "text":
        return f"CF({w}) = {cf} = {out['value']}\n"
    return _dump(out)


def cmd_orbit(args) -> str:
    if args.word is not None:
        from .cluster_engine import cluster_variable, monomials_of, seed_for_word, support_orbit
        from .triangulation import triangulation_from_word

        w = _word(args)
        xw = cluster_variable(triangulation_from_word(w))
        support = monomials_of(xw)
        start = min(support, key=str)
        orbit = support_orbit(start, seed_for_word(w))
        out = {
            "word": w,
            "support_size": len(support),
            "orbit_size": len(orbit),
            "orbit_equals_support": orbit == support,
            "extra": sorted(str(m) for m in orbit - support),
            "missing": sorted(str(m) for m in support - orbit),
        }
        return _dump(out)
    if args.n is None or args.j is None:
        raise UsageError("orbit needs --word, or --n and --j")
    from .poset import rank_generating_function
    from .snakegraph import orbit_poset

    O = orbit_poset(args.n, args.j)
    if args.format == "dot":
        return O.to_dot(f"O_{args.n}_{args.j}")
    return _dump({"n": args.n, "j": args.j, "size": len(O),
                  "rank_polynomial": rank_generating_function(O).to_list(), **O.to_json()})


def cmd_snake(args) -> str:
    from .snakegraph import SnakeGraph, cf_from_snake, sign_sequence, snake_graph

    if args.word is not None:
        G = snake_graph(_word(args))
    elif args.shape is not None:
        G = SnakeGraph.from_shape(check_word(args.shape))
    else:
        raise UsageError("give --word or --shape")
    out = {**G.to_json(), "signs": sign_sequence(G), "cf": cf_from_snake(G)}
    if args.format == "text":
        return f"shape {G.shape}, {G.n} tiles, CF {out['cf']}\n"
    return _dump(out)


def cmd_sl3(args) -> str:
    from . import sl3

    N = args.size
    if N is None or N < 3:
        raise UsageError("sl3 needs --size N with N >= 3")
    if args.face:
        tri = _int_list(args.face, 3)
        diagrams = sl3.enumerate_face_diagrams(N, tri)
        oracle = sl3.flip_oracle_face(N, tri)
        P = sl3.face_poset(N, tri)
        target = {"face": sorted(tri)}
    else:
        i, j = _int_list(args.edge, 2) if args.edge else sl3.longest_edge(N)
        diagrams = sl3.enumerate_edge_diagrams(N, i, j)
        oracle = sl3.flip_oracle_edge(N, i, j)
        P = sl3.edge_poset(N, i, j)
        target = {"edge": [i, j]}
    total = sl3.diagram_sum(diagrams)
    if args.format == "dot":
        return P.to_dot("sl3")
    out = {
        "size": N,
        "target": target,
        "terms": len(diagrams),
        "diagrams": [d.to_json() for d in sorted(diagrams)],
        "matches_flip_oracle": total == oracle,
        "covers": sorted([list(c) for c in P.covers]),
        "expansion": str(total),
    }
    if args.format == "text":
        return f"{target}: {len(diagrams)} terms, oracle match {total == oracle}\n"
    return _dump(out)


def _int_list(text: str, k: int) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"expected {k} comma-separated integers, got {text!r}") from None
    if len(vals) != k:
        raise UsageError(f"expected {k} comma-separated integers, got {text!r}")
    return vals


# ---------------------------------------------------------------- verify

def verify_word(w: str) -> dict:
    """All cross-checks for one word; values are booleans."""
    from .cluster_engine import cluster_variable
    from .expansions import KINDS, IsomorphismFailure, check_all_isomorphisms, expansion_value
    from .rank_analysis import rank_enumerated, rank_fibonacci, rank_hook, rank_recursive
    from .snakegraph import cf_of_word, matching_count_of_shape, snake_graph, truncated_matching_count
    from .triangulation import dual_triangulation, resolution_sum, triangulation_from_word

    T = triangulation_from_word(w)
    xw = cluster_variable(T)
    res: dict[str, bool] = {}
    for k in KINDS:
        res[f"expansion_{k}"] = expansion_value(w, k) == xw
    try:
        check_all_isomorphisms(w)
        res["isomorphisms"] = True
    except IsomorphismFailure:
        res["isomorphisms"] = False
    shape = dual_word(w)
    L = rank_recursive(shape)
    res["rank_formulas"] = L == rank_hook(shape) == rank_fibonacci(shape) == rank_enumerated(shape)
    cf = cf_of_word(w)
    G = snake_graph(w)
    res["cf_value"] = cf_value(cf) == Fraction(matching_count_of_shape(shape), truncated_matching_count(G, cf[0]))
    res["cf_dual_involution"] = cf_dual(cf_dual(cf)) == cf
    res["resolution"] = resolution_sum(T) == xw
    res["dual_resolution"] = resolution_sum(dual_triangulation(T), dual=True) == xw
    return res


def _verify_worker(w: str) -> tuple[str, dict]:
    return w, verify_word(w)


def cmd_verify(args) -> tuple[str, int]:
    if args.sweep is not None:
        words = all_words(args.sweep)
    else:
        words = [_word(args)]
    threads = int(os.environ.get("CLUSTERFORGE_THREADS", "1") or 1)
    if threads > 1 and len(words) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = dict(pool.map(_verify_worker, words))
    else:
        results = dict(_verify_worker(w) for w in words)
    failures = {w: sorted(k for k, ok in r.items() if not ok) for w, r in results.items()}
    failures = {w: f for w, f in failures.items() if f}
    out = {"words": len(words), "failures": failures, "ok": not failures}
    if args.sweep is None:
        out["checks"] = results[words[0]]
    if args.format == "text":
        text = f"verified {len(words)} words: {'ok' if not failures else 'FAILED'}\n"
        for w, f in sorted(failures.items()):
            text += f"  {w or '(empty)'}: {', '.join(f)}\n"
        return text, 0 if not failures else 1
    return _dump(out), 0 if not failures else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--word", help="word in the letters a, b (may be empty)")
        p.add_argument("--shape", help="gluing word of a snake graph")
        p.add_argument("--kind", choices=["P", "A", "T", "L", "B", "S"], default="P")
        p.add_argument("--format", choices=["json", "dot", "text"], default="json")
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--sweep", type=int, help="verify every word up to this length")
        p.add_argument("--n", type=int, help="tile count for orbit posets")
        p.add_argument("--j", type=int, help="number of b letters for orbit posets")
        p.add_argument("--size", type=int, help="polygon size for sl3")
        p.add_argument("--edge", help="directed edge i,j for sl3")
        p.add_argument("--face", help="face i,j,k for sl3")
    return parser


COMMANDS = {
    "expand": cmd_expand, "dual": cmd_dual, "rank": cmd_rank, "cf": cmd_cf, "orbit": cmd_orbit,
    "snake": cmd_snake, "poset": cmd_poset, "sl3": cmd_sl3, "verify": cmd_verify,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, InvalidWord) as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    text, code = result if isinstance(result, tuple) else (result, 0)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
