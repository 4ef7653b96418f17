"""Command line interface: ``altan <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import catalog
from .errors import AltanError, TheoremViolation
from .generators import DEFAULT_CAP
from .graph import AltanPair, Graph, altan, pair_from_json, to_dot
from .kernel import excess_nullity, iterated_nullities, special_vector
from .linalg import graph_kernel, nullity
from .patch import (
    PlanarPatch,
    altan_of_patch,
    face_census,
    parity_check,
    parse_bec,
    patch_from_json,
    patch_pair,
    patch_to_json,
)
from .planar_code import IngestStats, read_planar_code
from .survey import emit_table, find_extremal, run_survey

log = logging.getLogger("altan")


def parse_range(text: str) -> list[int]:
    """``8`` means 1..8; also ``5-8`` and ``5,7,9``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif "," not in text and part:
            out.extend(range(1, int(part) + 1))
        elif part:
            out.append(int(part))
    return out


def load_items(source: str) -> list:
    """Patches or pairs from a file (planar_code, JSON, BEC lines), a BEC string or a named example."""
    path = Path(source)
    if path.is_file():
        data = path.read_bytes()
        if data.startswith(b">>planar_code"):
            stats = IngestStats()
            items = list(read_planar_code(data, stats))
            if stats.rejected:
                log.warning("%d of %d records rejected", len(stats.rejected), stats.read)
            return items
        text = data.decode()
        if path.suffix == ".json" or text.lstrip().startswith(("{", "[")):
            doc = json.loads(text)
            docs = doc if isinstance(doc, list) else [doc]
            return [_from_json_doc(d) for d in docs]
        return [parse_bec(line) for line in text.split() if line.strip()]
    if source.isdigit():
        return [parse_bec(source)]
    item = catalog.named(source)
    return [item]


def _from_json_doc(d: dict):
    text = json.dumps(d)
    if "rotation" in d:
        return patch_from_json(text)
    return pair_from_json(text)


def as_pair(item) -> AltanPair:
    if isinstance(item, PlanarPatch):
        return patch_pair(item)
    if isinstance(item, Graph):
        raise ValueError("a bare graph needs an attachment set; pass a JSON pair")
    return item


def _graph(item) -> Graph:
    return item.graph if isinstance(item, (PlanarPatch, AltanPair)) else item


def cmd_nullity(args) -> int:
    for item in load_items(args.input):
        G = _graph(item)
        print(nullity(G))
        if args.kernel:
            for v in graph_kernel(G):
                print(json.dumps([str(x) for x in v]))
    return 0


def cmd_altan(args) -> int:
    for item in load_items(args.input):
        pair = as_pair(item)
        etas = iterated_nullities(pair, args.kmax)
        print(" ".join(f"k={k}:{e}" for k, e in enumerate(etas)))
        if args.dump:
            if isinstance(item, PlanarPatch):
                alt = altan_of_patch(item)
                text = to_dot(alt.graph, name="altan") if args.dump == "dot" else patch_to_json(alt)
            else:
                nxt = altan(pair)
                text = to_dot(nxt.graph, name="altan") if args.dump == "dot" else json.dumps(
                    {"n": nxt.graph.n, "edges": nxt.graph.edges(), "attachment": list(nxt.attachment.vertices),
                     "level": nxt.level})
            print(text, end="" if text.endswith("\n") else "\n")
    return 0


def cmd_verify(args) -> int:
    failures = 0
    for i, item in enumerate(load_items(args.input)):
        pair = as_pair(item)
        try:
            rep = excess_nullity(pair)
            etas = iterated_nullities(pair, args.kmax)
            if any(e != etas[1] for e in etas[2:]):
                raise TheoremViolation(f"iterated nullities not stable: {etas}")
            if pair.h % 2 == 0:
                special_vector(altan(pair))
            if isinstance(item, PlanarPatch):
                face_census(item, altan_of_patch(item))
                if item.graph.is_bipartite() and not parity_check(item, rep.parent_nullity):
                    raise TheoremViolation("parity of nullity and h differ")
            print(f"#{i} ok parent={rep.parent_nullity} altan={rep.altan_nullity} "
                  f"excess={rep.excess} h={pair.h} stable={etas[1:]}")
        except (TheoremViolation, AltanError) as exc:
            failures += 1
            print(f"#{i} VIOLATION {exc}", file=sys.stderr)
    return 1 if failures else 0


def cmd_survey(args) -> int:
    patches = load_items(args.input) if args.family == "ingested" else None
    table = run_survey(args.family, parse_range(args.eps), workers=args.workers,
                       shortcut=not args.no_shortcut, cache_dir=args.cache_dir, cap=args.cap,
                       patches=patches, group=args.group)
    if args.cumulative:
        table = table.cumulative()
    sys.stdout.write(emit_table(table, args.format))
    return 0


def cmd_extremal(args) -> int:
    kw = dict(workers=args.workers, shortcut=not args.no_shortcut, cache_dir=args.cache_dir, cap=args.cap)
    if args.family == "ingested":
        kw["patches"] = load_items(args.input)
        kw["group"] = args.group
    hits = find_extremal(args.family, args.predicate, parse_range(args.eps), **kw)
    for r in hits:
        print(json.dumps(r.to_dict(), sort_keys=True) if args.format == "json" else
              f"{r.instance_id}\tsize={','.join(map(str, r.size))}\th={r.h}\t"
              f"{r.parent_nullity}->{r.altan_nullity}\tbay={r.bay_number}")
    if not hits:
        print("no matches in range", file=sys.stderr)
    return 0


def cmd_ingest(args) -> int:
    data = Path(args.input).read_bytes()
    stats = IngestStats()
    if data.startswith(b">>planar_code"):
        patches = list(read_planar_code(data, stats))
    else:
        patches = load_items(args.input)
        stats.read = stats.accepted = len(patches)
    print(f"read {stats.read} accepted {stats.accepted} rejected {len(stats.rejected)}")
    if args.format and patches:
        table = run_survey("ingested", (), workers=args.workers, shortcut=not args.no_shortcut,
                           patches=patches, group=args.group)
        sys.stdout.write(emit_table(table, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="altan", description="Nullity of altans of graphs and patches.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, family=True):
        if family:
            sp.add_argument("--family", default="benzenoid",
                            choices=["benzenoid", "catafused", "convex", "ingested"])
            sp.add_argument("--eps", default="5", help="sizes: N (1..N), A-B or a comma list")
            sp.add_argument("--input", help="instances for --family ingested")
            sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest eps for full enumeration")
            sp.add_argument("--cache-dir", default=None, help="cache directory (or ALTAN_CACHE_DIR)")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--no-shortcut", action="store_true",
                        help="compute altan nullity for odd h too")
        sp.add_argument("--group", default="faces",
                        choices=["faces", "pentagons", "heptagons", "pent-hex", "pent-hept"],
                        help="row key for ingested patches")

    sp = sub.add_parser("survey", help="count (parent, altan) nullity pairs over a family")
    common(sp)
    sp.add_argument("--format", default="markdown", choices=["csv", "markdown", "json"])
    sp.add_argument("--cumulative", action="store_true", help="running totals over sizes")
    sp.set_defaults(func=cmd_survey)

    sp = sub.add_parser("extremal", help="smallest instances matching a predicate")
    common(sp)
    sp.add_argument("--predicate", default="excess=2", help='e.g. "excess=2" or "parent=2,excess=2"')
    sp.add_argument("--format", default="text", choices=["text", "json"])
    sp.set_defaults(func=cmd_extremal)

    sp = sub.add_parser("altan", help="nullities of iterated altans")
    sp.add_argument("input", help="file, BEC string or example name (P3:H1, pentalene, ...)")
    sp.add_argument("--kmax", type=int, default=2)
    sp.add_argument("--dump", choices=["dot", "json"], help="print the first altan")
    sp.set_defaults(func=cmd_altan)

    sp = sub.add_parser("nullity", help="exact nullity of a graph")
    sp.add_argument("input")
    sp.add_argument("--kernel", action="store_true", help="also print a primitive kernel basis")
    sp.set_defaults(func=cmd_nullity)

    sp = sub.add_parser("verify", help="check the excess window and stability on inputs")
    sp.add_argument("input")
    sp.add_argument("--kmax", type=int, default=3)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("ingest", help="read a planar_code, JSON or BEC file")
    sp.add_argument("input")
    common(sp, family=False)
    sp.add_argument("--format", choices=["csv", "markdown", "json"], help="also survey the patches")
    sp.set_defaults(func=cmd_ingest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return 1
    except (AltanError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
