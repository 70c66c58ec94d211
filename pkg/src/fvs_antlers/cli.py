"""Command-line entry point.

Exit codes: 0 success, 1 verification failed, 2 parse or input error,
3 refusal (a size cap was hit), 4 nothing found / grid exhausted.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .antler_finder import reduce_all, solve_by_antler_complexity
from .errors import (FamilyConstructionError, GraphDomainError, GraphParseError, NotFoundError,
                     RefusalError)
from .generators import gen_chain, gen_planted, gen_union
from .io import parse_coloring, read_graph, serialize_coloring, serialize_graph, to_dot
from .structures import Certificate, Fvc, verify_antler, verify_certificate, verify_fvc

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_REFUSED, EXIT_NOT_FOUND = 0, 1, 2, 3, 4


def _ids(values):
    return " ".join(str(v) for v in sorted(values))


def _load_sets(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or "cut" not in data or "forest" not in data:
        raise GraphParseError("sets file needs 'cut' and 'forest' lists", 1)
    return data


def cmd_reduce(args, out):
    G = read_graph(args.input)
    colorings = []
    if args.coloring:
        with open(args.coloring, encoding="utf-8") as fh:
            colorings.append(parse_coloring(fh.read(), G))
    t0 = time.perf_counter()
    G_final, S, trace = reduce_all(
        G, args.k, args.z, fvc_backend=args.universal, colorings=colorings,
        antler_search=args.antler_search, max_trials=args.max_trials, seed=args.seed)
    elapsed = time.perf_counter() - t0
    residual = serialize_graph(G_final)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write(trace.to_json(indent=1) + "\n")
    if args.residual:
        with open(args.residual, "w", encoding="utf-8") as fh:
            fh.write(residual)
    if args.json:
        json.dump({"S": sorted(S), "residual": residual,
                   "trace": json.loads(trace.to_json()),
                   "timings": {"reduce_seconds": elapsed}}, out, indent=1)
        out.write("\n")
    else:
        out.write(f"S ({len(S)}): {_ids(S)}\n")
        out.write(f"steps: {len(trace)}\n")
        out.write("residual:\n" + residual)
        out.write("trace:\n" + trace.to_json() + "\n")
    return EXIT_OK


def cmd_solve(args, out):
    G = read_graph(args.input)
    t0 = time.perf_counter()
    S = solve_by_antler_complexity(G, cap=args.cap)
    elapsed = time.perf_counter() - t0
    if args.json:
        json.dump({"S": sorted(S), "size": len(S), "timings": {"solve_seconds": elapsed}},
                  out)
        out.write("\n")
    else:
        out.write(f"S ({len(S)}): {_ids(S)}\n")
    return EXIT_OK


def cmd_verify(args, out):
    G = read_graph(args.input)
    data = _load_sets(args.sets)
    f = Fvc(data["cut"], data["forest"])
    if args.what == "fvc":
        ok = verify_fvc(G, f)
    elif args.what == "antler":
        ok = verify_antler(G, f)
    else:
        cert = data.get("certificate")
        if cert is None:
            raise GraphParseError("sets file has no 'certificate' entry", 1)
        z = int(data.get("z", cert.get("order", 1)))
        H = Certificate(cert["vertices"], cert["edges"], z)
        ok = verify_certificate(G, f.cut, H, z, f.forest)
    if args.json:
        json.dump({"what": args.what, "ok": ok}, out)
        out.write("\n")
    else:
        out.write("OK\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_gen(args, out):
    if args.shape == "planted":
        inst = gen_planted(args.k, args.z, args.t, args.r, args.seed)
    else:
        widths = [int(w) for w in args.widths.split(",") if w]
        make = gen_chain if args.shape == "chain" else gen_union
        inst = make(widths, args.t, args.seed)
    text = serialize_graph(inst.graph)
    if args.out:
        with open(args.out + ".fvs", "w", encoding="utf-8") as fh:
            fh.write(text)
        with open(args.out + ".json", "w", encoding="utf-8") as fh:
            json.dump(inst.sidecar(), fh, indent=1)
            fh.write("\n")
        with open(args.out + ".coloring", "w", encoding="utf-8") as fh:
            fh.write(serialize_coloring(inst.coloring()))
        out.write(f"wrote {args.out}.fvs, {args.out}.json, {args.out}.coloring\n")
    else:
        out.write(text)
    return EXIT_OK


def cmd_export_dot(args, out):
    G = read_graph(args.input)
    cut, forest = (), ()
    if args.sets:
        data = _load_sets(args.sets)
        cut, forest = data["cut"], data["forest"]
    out.write(to_dot(G, cut, forest))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fvs-antlers",
                                description="Antler-based preprocessing for Feedback Vertex Set.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reduce", help="shrink an instance, emitting S, the residual graph and a trace")
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--z", type=int, required=True)
    r.add_argument("--universal", default="structured",
                   choices=["structured", "exhaustive", "random", "random_verified"],
                   help="colouring source for reducible-cut detection")
    r.add_argument("--antler-search", default="structured",
                   choices=["structured", "families", "none"])
    r.add_argument("--max-trials", type=int, default=2000)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--coloring", help="colouring file injected into antler extraction")
    r.add_argument("--trace", help="also write the JSON trace here")
    r.add_argument("--residual", help="also write the residual graph here")
    r.add_argument("--json", action="store_true")
    r.add_argument("input")
    r.set_defaults(func=cmd_reduce)

    s = sub.add_parser("solve", help="optimal FVS for bounded antler complexity")
    s.add_argument("--cap", type=int, default=3)
    s.add_argument("--json", action="store_true")
    s.add_argument("input")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a cut, antler or certificate given as JSON")
    v.add_argument("--what", choices=["fvc", "antler", "certificate"], required=True)
    v.add_argument("--json", action="store_true")
    v.add_argument("input")
    v.add_argument("sets")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("gen", help="write a planted instance with its ground truth")
    g.add_argument("--shape", choices=["planted", "chain", "union"], default="planted")
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--z", type=int, default=1)
    g.add_argument("--t", type=int, default=1)
    g.add_argument("--r", type=int, default=0)
    g.add_argument("--widths", default="1,1", help="comma-separated widths for chain/union")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="path prefix for .fvs/.json/.coloring files")
    g.set_defaults(func=cmd_gen)

    d = sub.add_parser("export-dot", help="render an instance as Graphviz DOT")
    d.add_argument("--sets", help="JSON file whose cut/forest get highlighted")
    d.add_argument("input")
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args, out)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (GraphDomainError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (RefusalError, FamilyConstructionError) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except NotFoundError as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND


cli_main = main

if __name__ == "__main__":
    sys.exit(main())
