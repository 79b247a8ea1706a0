"""Command-line entry point: ``hyperturan <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .constructions import (
    BlowupSpec,
    blow_up,
    blowup_density,
    build_g,
    build_h_k,
)
from .detect import contains_clique, contains_near_clique, count_cliques, find_subgraph, near_clique
from .hypercore import format_fraction, parse_fraction
from .search import (
    InfeasibleScaleError,
    averaging_upper_bound,
    describe,
    exact_turan,
    search_digraphs,
)
from .textio import format_digraph, format_hypergraph, read_digraph, read_hypergraph
from .verify import VerifyConfig, verify_paper


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(x) for x in text.split(","))


def _fraction_list(text: str):
    return tuple(parse_fraction(x) for x in text.split(","))


def _emit(args, payload, text: str | None = None):
    """Write JSON (or ``text`` when --format text and a rendering exists)."""
    if args.format == "text" and text is not None:
        out = text
    else:
        out = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)


def _base(spec: str):
    if spec.lower() == "h3":
        return build_h_k(3)
    if spec.lower().startswith("h") and spec[1:].isdigit():
        return build_h_k(int(spec[1:]))
    return read_hypergraph(spec)


def _forbid(spec: str):
    if spec.lower() == "k5minus":
        return near_clique(5, 3)
    return read_hypergraph(spec)


def cmd_hk(args):
    H = build_h_k(args.k)
    _emit(args, {"n": H.n, "k": H.k, "edges": H.num_edges, "hypergraph": format_hypergraph(H)},
          format_hypergraph(H))
    return 0


def cmd_blowup(args):
    H = read_hypergraph(args.hypergraph)
    spec = BlowupSpec(multiplicities=_int_list(args.mult))
    G = build_g(H, read_digraph(args.digraph), spec) if args.digraph else blow_up(H, spec)
    _emit(args, {"n": G.n, "edges": G.num_edges, "hypergraph": format_hypergraph(G)},
          format_hypergraph(G))
    return 0


def cmd_density(args):
    H = read_hypergraph(args.hypergraph)
    D = read_digraph(args.digraph) if args.digraph else None
    d = blowup_density(H, D, BlowupSpec(weights=_fraction_list(args.weights)))
    _emit(args, {"density": format_fraction(d)}, format_fraction(d) + "\n")
    return 0


def cmd_check(args):
    H = read_hypergraph(args.hypergraph)
    if args.clique is not None:
        res = contains_clique(H, args.clique)
        payload = {"query": f"clique {args.clique}", "found": res.found, "witness": res.witness}
    elif args.near_clique is not None:
        res = contains_near_clique(H, args.near_clique)
        payload = {"query": f"near-clique {args.near_clique}", "found": res.found, "witness": res.witness}
    elif args.count_cliques is not None:
        c = count_cliques(H, args.count_cliques)
        payload = {"query": f"count-cliques {args.count_cliques}", "found": c > 0, "count": c}
    else:
        F = read_hypergraph(args.subgraph)
        res = find_subgraph(H, F)
        payload = {"query": f"subgraph {describe(F)}", "found": res.found, "witness": res.witness}
    payload["witness"] = list(payload["witness"]) if payload.get("witness") else payload.get("witness")
    _emit(args, payload)
    return 0 if payload["found"] else 1


def cmd_turan(args):
    try:
        res = exact_turan(args.n, args.k, args.s, witnesses=args.witnesses, workers=args.threads,
                          node_limit=args.node_limit)
    except InfeasibleScaleError as exc:
        _emit(args, {"error": str(exc)})
        return 2
    payload = {
        "n": res.n, "k": res.k, "forbidden": [describe(F) for F in res.forbidden],
        "value": res.value,
        "witnesses": [format_hypergraph(W) for W in res.witness_hypergraphs()],
        "stats": res.stats,
    }
    _emit(args, payload, f"t({args.n},{args.s},{args.k}) = {res.value}\n")
    return 0


def cmd_bound(args):
    b = averaging_upper_bound(args.n, args.s, args.k)
    payload = {"bound": format_fraction(b), "floor": math.floor(b)}
    _emit(args, payload, f"t({args.n},{args.s},{args.k}) <= {format_fraction(b)}, floor {math.floor(b)}\n")
    return 0


def cmd_find_digraph(args):
    H = _base(args.base)
    F = _forbid(args.forbid)
    res = search_digraphs(H, _fraction_list(args.weights), F)
    payload = {
        "max_density": format_fraction(res.max_density) if res.max_density is not None else None,
        "multiplicity": res.multiplicity,
        "labelled_count": len(res.orbit),
        "symmetry_group_order": len(res.group),
        "digraphs": [
            {"digraph": format_digraph(D), "density": format_fraction(d), "freeness_verified": ok}
            for D, d, ok in res.digraphs
        ],
        "stats": res.stats,
    }
    text = "".join(f"# density {format_fraction(d)}, verified {ok}\n" + format_digraph(D)
                   for D, d, ok in res.digraphs)
    _emit(args, payload, text)
    return 0


def cmd_verify_paper(args):
    report = verify_paper(VerifyConfig(digraph_path=args.digraph, turan_max_edges=args.turan_max_edges))
    _emit(args, report.to_dict(), report.to_text())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--threads", type=int, default=1, help="worker processes for exact search")
    common.add_argument("--seed", type=int, default=0, help="accepted for reproducible tooling; results do not depend on it")

    parser = argparse.ArgumentParser(prog="hyperturan", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hk", parents=[common], help="emit H_k")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=cmd_hk)

    p = sub.add_parser("blowup", parents=[common], help="blow up a hypergraph (optionally with a digraph layer)")
    p.add_argument("hypergraph")
    p.add_argument("--mult", required=True, help="comma-separated class sizes, e.g. 1,2,2,2,2")
    p.add_argument("--digraph")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("density", parents=[common], help="exact limit density of a weighted blow-up")
    p.add_argument("hypergraph")
    p.add_argument("--weights", required=True, help="comma-separated fractions, e.g. 1/9,2/9,2/9,2/9,2/9")
    p.add_argument("--digraph")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("check", parents=[common], help="clique / near-clique / subgraph queries")
    p.add_argument("hypergraph")
    q = p.add_mutually_exclusive_group(required=True)
    q.add_argument("--clique", type=int)
    q.add_argument("--near-clique", type=int)
    q.add_argument("--count-cliques", type=int)
    q.add_argument("--subgraph")
    p.set_defaults(func=cmd_check)

    for name, func, help_ in (("turan", cmd_turan, "exact Turán number t(n,s,k)"),
                              ("bound", cmd_bound, "averaging upper bound on t(n,s,k)")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("-n", type=int, required=True)
        p.add_argument("-s", type=int, required=True)
        p.add_argument("-k", type=int, required=True)
        if name == "turan":
            p.add_argument("--witnesses", action="store_true")
            p.add_argument("--node-limit", type=int)
        p.set_defaults(func=func)

    p = sub.add_parser("find-digraph", parents=[common], help="search auxiliary digraphs for a blow-up")
    p.add_argument("--base", default="h3", help="h3, hK, or a hypergraph file")
    p.add_argument("--weights", default="1/9,2/9,2/9,2/9,2/9")
    p.add_argument("--forbid", default="k5minus", help="k5minus or a hypergraph file")
    p.set_defaults(func=cmd_find_digraph)

    p = sub.add_parser("verify-paper", parents=[common], help="check every finite claim and emit a report")
    p.add_argument("--digraph", help="digraph file (default: the bundled recovered digraph)")
    p.add_argument("--turan-max-edges", type=int, default=84)
    p.set_defaults(func=cmd_verify_paper)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
