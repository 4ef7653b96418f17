"""Batch survey of (parent nullity, altan nullity) over graph families.

A survey walks a family size by size, builds each patch with its natural
attachment set, checks the theorem windows on every instance and
aggregates counts into a :class:`SurveyTable`.  Tables merge by adding
counts, so the result does not depend on worker count or instance order.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import zlib
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import CacheCorrupt, EmptyFamily, IdentityViolation, TheoremViolation
from .generators import DEFAULT_CAP, enumerate_benzenoids, enumerate_catafused, enumerate_convex
from .graph import altan
from .kernel import ExcessReport, check_window
from .lattice import Polyhex
from .linalg import nullity
from .patch import (
    PlanarPatch,
    altan_of_patch,
    boundary_edge_code,
    boundary_profile,
    face_census,
    parity_check,
    patch_pair,
    patch_to_json,
)

log = logging.getLogger(__name__)

FAMILIES = ("benzenoid", "catafused", "convex", "ingested")
CACHE_ENV = "ALTAN_CACHE_DIR"
CACHE_VERSION = 1


@dataclass(frozen=True)
class SurveyRecord:
    family: str
    instance_id: str
    size: tuple[int, ...]
    faces: dict = field(compare=False)
    h: int
    h_parity: str
    parent_nullity: int
    altan_nullity: int
    excess: int
    bay_number: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["size"] = list(self.size)
        d["faces"] = {str(k): v for k, v in sorted(self.faces.items())}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SurveyRecord":
        d = dict(d)
        d["size"] = tuple(d["size"])
        d["faces"] = {int(k): v for k, v in d["faces"].items()}
        return cls(**d)


Cell = tuple[int, int, str]  # (parent nullity, altan nullity, "even"|"odd")


@dataclass
class SurveyTable:
    family: str
    rows: dict[tuple[int, ...], Counter] = field(default_factory=dict)

    def add(self, rec: SurveyRecord) -> None:
        key = (rec.parent_nullity, rec.altan_nullity, rec.h_parity)
        self.rows.setdefault(tuple(rec.size), Counter())[key] += 1

    def merge(self, other: "SurveyTable") -> "SurveyTable":
        out = SurveyTable(self.family, {k: Counter(v) for k, v in self.rows.items()})
        for k, v in other.rows.items():
            out.rows.setdefault(k, Counter()).update(v)
        return out

    def count(self, size, parent: int, alt: int, parity: str | None = None) -> int:
        row = self.rows.get(_size_key(size), Counter())
        return sum(c for (p, a, par), c in row.items()
                   if p == parent and a == alt and (parity is None or par == parity))

    def total(self, size) -> int:
        return sum(self.rows.get(_size_key(size), Counter()).values())

    def columns(self) -> list[Cell]:
        cols = {k for row in self.rows.values() for k in row}
        return sorted(cols, key=lambda c: (c[2] != "even", c[0], c[1]))

    def cumulative(self) -> "SurveyTable":
        """Running totals over sizes (single-integer sizes only)."""
        out = SurveyTable(self.family)
        acc: Counter = Counter()
        for k in sorted(self.rows):
            acc.update(self.rows[k])
            out.rows[k] = Counter(acc)
        return out

    def __eq__(self, other):
        if not isinstance(other, SurveyTable):
            return NotImplemented
        strip = lambda t: {k: {c: n for c, n in v.items() if n} for k, v in t.rows.items()}
        return self.family == other.family and strip(self) == strip(other)


def _size_key(size) -> tuple[int, ...]:
    return tuple(size) if isinstance(size, (tuple, list)) else (int(size),)


# -- per-instance analysis -------------------------------------------------

def _spot_checked(instance_id: str, rate: float) -> bool:
    return rate > 0 and (zlib.crc32(instance_id.encode()) % 10000) < rate * 10000


def analyze_patch(patch: PlanarPatch, family: str, instance_id: str | None = None,
                  size: Sequence[int] | None = None, shortcut: bool = True,
                  check_identities: bool = True, spot_rate: float = 0.01) -> SurveyRecord:
    """Nullities of a patch and its altan, with every theorem check applied.

    Raises :class:`TheoremViolation` (with the instance serialized in the
    message) if the excess window, parity or iterated-stability check fails.
    """
    pair = patch_pair(patch)
    h = pair.h
    benz = patch.is_benzenoid
    if instance_id is None:
        instance_id = boundary_edge_code(patch) if benz else patch_to_json(patch)
    faces = Counter(len(f) for f in patch.bounded_faces())
    if size is None:
        size = (sum(faces.values()),)
    try:
        eta0 = nullity(patch.graph)
        if check_identities or h % 2 == 0 or not shortcut:
            alt = altan_of_patch(patch)
            if check_identities:
                face_census(patch, alt, benzenoid=benz)
        if h % 2 == 1 and shortcut:
            eta1 = eta0
        else:
            eta1 = nullity(alt.graph)
        rep = ExcessReport(eta0, eta1, eta1 - eta0, "even" if h % 2 == 0 else "odd")
        check_window(rep)
        bay = None
        if patch.graph.is_bipartite() and not parity_check(patch, eta0):
            raise TheoremViolation("nullity and attachment-set size differ in parity")
        if benz:
            prof = boundary_profile(patch)
            if prof.n22 != 6 + prof.b:
                raise IdentityViolation(f"n22 = {prof.n22} but 6 + b = {6 + prof.b}")
            bay = prof.b
        if h % 2 == 0 and _spot_checked(instance_id, spot_rate):
            eta2 = nullity(altan(altan(pair)).graph)
            if eta2 != eta1:
                raise TheoremViolation(f"nullity of second altan {eta2} differs from first {eta1}")
    except (TheoremViolation, IdentityViolation) as exc:
        raise TheoremViolation(f"{family} instance {instance_id}: {exc}\n{patch_to_json(patch)}") from exc
    return SurveyRecord(family, instance_id, tuple(size), dict(faces), h,
                        rep.h_parity, eta0, eta1, rep.excess, bay)


def _analyze_cells(args) -> SurveyRecord:
    cells, family, shortcut, spot_rate = args
    patch = Polyhex(frozenset(cells)).to_patch()
    return analyze_patch(patch, family, size=(len(cells),), shortcut=shortcut, spot_rate=spot_rate)


def _analyze_ingested(args) -> SurveyRecord:
    patch, iid, group, shortcut, spot_rate = args
    faces = Counter(len(f) for f in patch.bounded_faces())
    return analyze_patch(patch, "ingested", iid, size=group_key(faces, group),
                         shortcut=shortcut, spot_rate=spot_rate)


def group_key(faces: dict, group: str) -> tuple[int, ...]:
    """Row key for ingested patches: total faces, or counts of chosen face sizes."""
    if group == "faces":
        return (sum(faces.values()),)
    sizes = {"pentagons": (5,), "heptagons": (7,), "pent-hex": (5, 6), "pent-hept": (5, 7)}[group]
    return tuple(faces.get(s, 0) for s in sizes)


# -- families ---------------------------------------------------------------

def family_cells(family: str, eps: int, cap: int | None = DEFAULT_CAP) -> list[tuple]:
    if family == "benzenoid":
        gen = enumerate_benzenoids(eps, cap)
    elif family == "catafused":
        gen = enumerate_catafused(eps, cap)
    elif family == "convex":
        gen = enumerate_convex(eps, eps_min=eps)
    else:
        raise ValueError(f"family {family!r} is not generated; use ingest")
    return [tuple(sorted(p.cells)) for p in gen]


def _map(fn, items, workers: int):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items, chunksize=chunk))


def survey_records(family: str, eps: int, workers: int = 1, shortcut: bool = True,
                   cache_dir: str | os.PathLike | None = None, cap: int | None = DEFAULT_CAP,
                   spot_rate: float = 0.01) -> list[SurveyRecord]:
    """All records for one generated family and size, sorted by instance id."""
    cdir = resolve_cache_dir(cache_dir)
    key = cache_key(family, eps, shortcut)
    if cdir is not None:
        try:
            hit = cache_load(cdir, key)
        except CacheCorrupt as exc:
            log.warning("%s; recomputing", exc)
            hit = None
        if hit is not None:
            return hit
    cells = family_cells(family, eps, cap)
    recs = _map(_analyze_cells, [(c, family, shortcut, spot_rate) for c in cells], workers)
    recs.sort(key=lambda r: r.instance_id)
    if cdir is not None:
        cache_store(cdir, key, recs)
    return recs


def run_survey(family: str, sizes: Iterable[int], workers: int = 1, shortcut: bool = True,
               cache_dir=None, cap: int | None = DEFAULT_CAP, spot_rate: float = 0.01,
               patches: Sequence[PlanarPatch] | None = None, group: str = "faces") -> SurveyTable:
    """Aggregate counts for a family over the given sizes.

    For ``family="ingested"`` the instances come from ``patches`` and
    ``sizes`` is ignored; rows are keyed by :func:`group_key`.
    """
    table = SurveyTable(family)
    for rec in iter_records(family, sizes, workers, shortcut, cache_dir, cap, spot_rate, patches, group):
        table.add(rec)
    if not table.rows:
        raise EmptyFamily(f"family {family!r} produced no instances")
    return table


def iter_records(family, sizes, workers=1, shortcut=True, cache_dir=None, cap=DEFAULT_CAP,
                 spot_rate=0.01, patches=None, group="faces"):
    if family == "ingested":
        if patches is None:
            raise ValueError("ingested family needs patches")
        items = [(p, f"#{i}", group, shortcut, spot_rate) for i, p in enumerate(patches)]
        yield from _map(_analyze_ingested, items, workers)
        return
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    for eps in sizes:
        yield from survey_records(family, eps, workers, shortcut, cache_dir, cap, spot_rate)


Predicate = Callable[[SurveyRecord], bool]


def parse_predicate(text: str) -> Predicate:
    """``"excess=2"``, ``"parent=2,excess=2"``, ``"altan=4"`` and similar."""
    fields = {"excess": "excess", "parent": "parent_nullity", "altan": "altan_nullity",
              "h": "h", "bay": "bay_number"}
    conds = []
    for part in text.split(","):
        name, _, val = part.partition("=")
        name = name.strip()
        if name not in fields or not val.strip():
            raise ValueError(f"bad predicate term {part!r}")
        conds.append((fields[name], int(val)))
    return lambda r: all(getattr(r, f) == v for f, v in conds)


def find_extremal(family: str, predicate: Predicate | str, sizes: Iterable[int], **kw) -> list[SurveyRecord]:
    """Matches at the smallest size that has any, in instance-id order; empty if none in range."""
    if isinstance(predicate, str):
        predicate = parse_predicate(predicate)
    if family == "ingested":
        by_size: dict = {}
        for r in iter_records(family, (), **kw):
            if predicate(r):
                by_size.setdefault(r.size, []).append(r)
        if not by_size:
            return []
        return sorted(by_size[min(by_size)], key=lambda r: r.instance_id)
    for eps in sizes:
        hits = [r for r in iter_records(family, [eps], **kw) if predicate(r)]
        if hits:
            return sorted(hits, key=lambda r: r.instance_id)
    return []


# -- table output -------------------------------------------------------------

def column_label(c: Cell) -> str:
    return f"{c[2]}:{c[0]}->{c[1]}"


def _parse_label(s: str) -> Cell:
    par, _, rest = s.partition(":")
    a, _, b = rest.partition("->")
    return (int(a), int(b), par)


def _size_label(k: tuple[int, ...]) -> str:
    return ",".join(map(str, k))


def emit_table(table: SurveyTable, fmt: str = "csv") -> str:
    """Render a table; even-h columns first, each block by parent then altan nullity."""
    if not table.rows or not any(sum(r.values()) for r in table.rows.values()):
        raise EmptyFamily(f"no instances in table for family {table.family!r}")
    cols = table.columns()
    sizes = sorted(table.rows)
    if fmt == "json":
        doc = {
            "family": table.family,
            "columns": [column_label(c) for c in cols],
            "rows": [{"size": list(k), "counts": {column_label(c): table.rows[k][c] for c in cols
                                                  if table.rows[k][c]}}
                     for k in sizes],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    header = ["size"] + [column_label(c) for c in cols] + ["total"]
    body = []
    for k in sizes:
        row = table.rows[k]
        body.append([_size_label(k)] + [str(row[c]) if row[c] else "" for c in cols]
                    + [str(sum(row.values()))])
    if fmt == "csv":
        return "\n".join(",".join(f'"{x}"' if "," in x else x for x in r) for r in [header] + body) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(r) + " |" for r in body]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_table_json(text: str) -> SurveyTable:
    doc = json.loads(text)
    t = SurveyTable(doc["family"])
    for row in doc["rows"]:
        t.rows[tuple(row["size"])] = Counter({_parse_label(k): v for k, v in row["counts"].items()})
    return t


# -- cache --------------------------------------------------------------------

def resolve_cache_dir(cache_dir=None) -> Path | None:
    d = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def code_hash() -> str:
    """Digest of the package sources; any code change invalidates cached batches."""
    h = hashlib.sha256()
    root = Path(__file__).parent
    for p in sorted(root.glob("*.py")):
        h.update(p.name.encode())
        h.update(p.read_bytes())
    return h.hexdigest()[:16]


def cache_key(family: str, size, shortcut: bool = True, code: str | None = None) -> str:
    code = code or code_hash()
    raw = f"v{CACHE_VERSION}|{family}|{_size_label(_size_key(size))}|{int(shortcut)}|{code}"
    return hashlib.sha256(raw.encode()).hexdigest()[:32]


def _checksum(payload: list) -> str:
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def cache_store(cache_dir, key: str, records: Sequence[SurveyRecord]) -> Path:
    """Write one complete batch atomically (temp file then rename)."""
    d = Path(cache_dir)
    d.mkdir(parents=True, exist_ok=True)
    payload = [r.to_dict() for r in records]
    doc = {"key": key, "count": len(payload), "checksum": _checksum(payload), "records": payload}
    path = d / f"{key}.json"
    tmp = d / f".{key}.tmp"
    tmp.write_text(json.dumps(doc, sort_keys=True))
    os.replace(tmp, path)
    return path


def cache_load(cache_dir, key: str) -> list[SurveyRecord] | None:
    """Stored batch, or None on a miss.  A corrupt entry is deleted and reported."""
    path = Path(cache_dir) / f"{key}.json"
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text())
        payload = doc["records"]
        ok = doc["key"] == key and doc["count"] == len(payload) and doc["checksum"] == _checksum(payload)
    except (ValueError, KeyError, TypeError):
        ok = False
    if not ok:
        path.unlink(missing_ok=True)
        raise CacheCorrupt(f"cache entry {path.name} failed its checksum")
    return [SurveyRecord.from_dict(d) for d in payload]
