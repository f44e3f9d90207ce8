"""Command-line interface.

Exit codes: 0 success, 2 validation/parse error, 3 budget-inconclusive.
Structured output is deterministic JSON for fixed flags and inputs.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import documents as docs
from .catalog import catalog, catalog_names
from .classify import ClassifyBudgets, classify, find_invariant_vertex_sets, reduction
from .dynamics import PositivePoint, apply_word, max_abs_log
from .errors import ClusterError, ParseError, UnknownName
from .explore import explore
from .seeds import Seed, validate
from .tropical import TropicalPoint, apply_word_tropical

OK, EVALIDATION, EBUDGET = 0, 2, 3


def _load_seed(ref: str, check: bool = True) -> Seed:
    path = Path(ref)
    if path.exists():
        return docs.parse_seed(path.read_text(), check=check)
    try:
        return catalog(ref).seed
    except UnknownName:
        raise ParseError("no such file or catalog name: %r" % ref) from None


def _parse_coords(text, size, default=1):
    if text is None:
        return tuple(Fraction(default) for _ in range(size))
    parts = [p for p in text.replace(",", " ").split() if p]
    if len(parts) != size:
        raise ParseError("expected %d coordinates, got %d" % (size, len(parts)))
    return tuple(Fraction(p) for p in parts)


def _emit(args, text_line: str, doc):
    if args.format == "structured":
        print(docs.dumps(doc))
    else:
        print(text_line)


def cmd_validate(args) -> int:
    seed = _load_seed(args.seed, check=False)
    report = validate(seed)
    doc = {"ok": report.ok, "violations": list(report.violations)}
    _emit(args, "ok" if report.ok else "violations:\n  " + "\n  ".join(report.violations), doc)
    return OK if report.ok else EVALIDATION


def cmd_mutate(args) -> int:
    seed = _load_seed(args.seed)
    word = docs.parse_word(args.word, seed)
    from .seeds import apply_word_to_seed

    out = apply_word_to_seed(seed, word)
    doc = docs.emit_seed(out)
    _emit(args, docs.dumps(doc), doc)
    return OK


def cmd_orbit(args) -> int:
    seed = _load_seed(args.seed)
    word = docs.parse_word(args.word, seed)
    flavor = args.flavor.upper()
    size = seed.rank if flavor == "A" else seed.mutable_rank
    coords = _parse_coords(args.point, size)
    mode = args.mode
    p = PositivePoint(flavor, mode, tuple(float(c) if mode == "float" else c for c in coords))
    rows = []
    cur = p
    for step in range(args.steps + 1):
        rows.append(
            {"step": step, "coords": [docs.num_str(c) for c in cur.coords], "max_log": docs.float_str(max_abs_log(cur))}
        )
        if step < args.steps:
            cur = apply_word(seed, word, cur)
    text = "\n".join("%4d  %s" % (r["step"], "  ".join(r["coords"])) for r in rows)
    _emit(args, text, {"flavor": flavor, "mode": mode, "orbit": rows})
    return OK


def cmd_tropical_orbit(args) -> int:
    seed = _load_seed(args.seed)
    word = docs.parse_word(args.word, seed)
    flavor = args.flavor.upper()
    size = seed.rank if flavor == "A" else seed.mutable_rank
    coords = _parse_coords(args.point, size)
    cur = TropicalPoint(flavor, coords, ())
    rows = []
    for step in range(args.steps + 1):
        rows.append({"step": step, "coords": [docs.num_str(c) for c in cur.coords]})
        if step < args.steps:
            cur = apply_word_tropical(seed, word, cur)
    text = "\n".join("%4d  %s" % (r["step"], "  ".join(r["coords"])) for r in rows)
    _emit(args, text, {"flavor": flavor, "orbit": rows})
    return OK


def cmd_classify(args) -> int:
    seed = _load_seed(args.seed)
    word = docs.parse_word(args.word, seed)
    budgets = ClassifyBudgets(max_order=args.budget) if args.budget else ClassifyBudgets()
    report = classify(seed, word, budgets)
    _emit(args, docs.report_text(report), docs.report_doc(report))
    return EBUDGET if report.verdict == "inconclusive" else OK


def cmd_explore(args) -> int:
    seed = _load_seed(args.seed)
    graph = explore(seed, depth=args.depth, node_budget=args.budget or 100_000, strict=False)
    if graph.closed:
        text = "finite type: %d clusters" % len(graph.nodes)
    else:
        text = "not closed within budget (%d nodes, depth %d)" % (len(graph.nodes), graph.depth_reached)
    _emit(args, text, graph.export())
    return OK if graph.closed else EBUDGET


def cmd_reduce(args) -> int:
    seed = _load_seed(args.seed)
    word = docs.parse_word(args.word, seed)
    entries = find_invariant_vertex_sets(seed, word, max_power=args.budget or 64)
    pointwise = [e for e in entries if e.pointwise and (args.power is None or e.power == args.power)]
    if not pointwise:
        print("no pointwise-fixed vertex set found", file=sys.stderr)
        return EBUDGET
    best = pointwise[0]
    from .seeds import word_power

    data = reduction(seed, word_power(word, best.power), best.vertices)
    doc = {
        "power": best.power,
        "frozen_added": sorted(data.frozen_added, key=str),
        "seed": docs.emit_seed(data.reduced_seed),
        "word": docs.emit_word(data.reduced_word),
    }
    _emit(args, docs.dumps(doc), doc)
    return OK


def cmd_catalog(args) -> int:
    if not args.name:
        doc = {"names": list(catalog_names())}
        _emit(args, "\n".join(catalog_names()), doc)
        return OK
    entry = catalog(args.name)
    doc = {
        "name": entry.name,
        "seed": docs.emit_seed(entry.seed),
        "words": {name: docs.emit_word(w) for name, w in sorted(entry.words.items())},
        "triangulation": docs.emit_triangulation(entry.triangulation) if entry.triangulation else None,
    }
    _emit(args, docs.dumps(doc), doc)
    return OK


def cmd_serve(args) -> int:
    from .service import run

    run(host=args.host, port=args.port)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clustermod", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, word=False):
        p.add_argument("--seed", required=True, help="seed document file or catalog name")
        if word:
            p.add_argument("--word", required=True, help="word text, e.g. 'mu 0; perm (0 1)'")
        p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("validate", help="check seed invariants")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("mutate", help="apply a word to a seed and print the result")
    common(p, word=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("orbit", help="iterate a word on a positive point")
    common(p, word=True)
    p.add_argument("--flavor", choices=("a", "x"), default="x")
    p.add_argument("--point", help="comma-separated coordinates, default all ones")
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("tropical-orbit", help="iterate the tropical word map")
    common(p, word=True)
    p.add_argument("--flavor", choices=("a", "x"), default="x")
    p.add_argument("--point", help="comma-separated coordinates, default all ones")
    p.add_argument("--steps", type=int, default=10)
    p.set_defaults(func=cmd_tropical_orbit)

    p = sub.add_parser("classify", help="Nielsen-Thurston type of a word")
    common(p, word=True)
    p.add_argument("--budget", type=int, help="order budget (default 1024)")
    p.add_argument("--rng-seed", type=int, default=0)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("explore", help="breadth-first exchange graph exploration")
    common(p)
    p.add_argument("--depth", type=int, default=None)
    p.add_argument("--budget", type=int, help="node budget (default 100000)")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("reduce", help="freeze a pointwise-fixed vertex set of a word")
    common(p, word=True)
    p.add_argument("--budget", type=int, help="power budget (default 64)")
    p.add_argument("--power", type=int, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("catalog", help="list built-in seeds or print one")
    p.add_argument("name", nargs="?", default=None)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("serve", help="run the local HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8763)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ClusterError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EVALIDATION


if __name__ == "__main__":
    sys.exit(main())
