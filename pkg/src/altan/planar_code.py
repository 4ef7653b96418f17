"""Reader and writer for the planar_code binary format.

Layout: the ASCII header ``>>planar_code<<`` (or ``>>planar_code le<<`` /
``>>planar_code be<<``), then one record per graph.  A record starts with
the vertex count as one byte; each vertex follows as its 1-based neighbour
labels in rotation order, terminated by 0.  If the count byte is 0 the
record uses 16-bit labels instead: the next two bytes hold the count and
every label (and terminator) is two bytes, little-endian unless the header
says ``be``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from .errors import AltanError, MalformedHeader, TruncatedRecord
from .graph import make_graph
from .patch import PlanarPatch, make_patch

log = logging.getLogger(__name__)

HEADERS = {b">>planar_code<<": "little", b">>planar_code le<<": "little", b">>planar_code be<<": "big"}


def _split_header(data: bytes) -> tuple[str, int]:
    for h, order in HEADERS.items():
        if data.startswith(h):
            return order, len(h)
    raise MalformedHeader(f"missing planar_code header, got {data[:16]!r}")


def read_rotations(data: bytes) -> Iterator[list[list[int]]]:
    """Raw 0-based rotation systems, one per record."""
    order, pos = _split_header(data)
    end = len(data)
    while pos < end:
        start = pos
        width = 1
        n = data[pos]
        pos += 1
        if n == 0:
            width = 2
            if pos + 2 > end:
                raise TruncatedRecord(f"record at byte {start}: missing 16-bit vertex count")
            n = int.from_bytes(data[pos:pos + 2], order)
            pos += 2
        rot: list[list[int]] = []
        for v in range(n):
            nbrs = []
            while True:
                if pos + width > end:
                    raise TruncatedRecord(f"record at byte {start}: vertex {v + 1} of {n} cut off")
                x = int.from_bytes(data[pos:pos + width], order)
                pos += width
                if x == 0:
                    break
                if x > n:
                    raise TruncatedRecord(f"record at byte {start}: label {x} exceeds vertex count {n}")
                nbrs.append(x - 1)
            rot.append(nbrs)
        yield rot


@dataclass
class IngestStats:
    read: int = 0
    accepted: int = 0
    rejected: list = field(default_factory=list)


def read_planar_code(data: bytes, stats: IngestStats | None = None) -> Iterator[PlanarPatch]:
    """Patches from a planar_code byte string; records failing the patch checks are skipped."""
    stats = stats if stats is not None else IngestStats()
    for i, rot in enumerate(read_rotations(data)):
        stats.read += 1
        try:
            G = make_graph(len(rot), [(v, u) for v, r in enumerate(rot) for u in r])
            patch = make_patch(G, rot)
        except AltanError as exc:
            log.warning("record %d skipped: %s", i, exc)
            stats.rejected.append((i, str(exc)))
            continue
        stats.accepted += 1
        yield patch


def write_planar_code(rotations, header: bool = True) -> bytes:
    """Encode rotation systems (0-based neighbour lists); 16-bit records when n > 255."""
    out = bytearray(b">>planar_code<<" if header else b"")
    for rot in rotations:
        if isinstance(rot, PlanarPatch):
            rot = rot.rotation
        n = len(rot)
        if n < 256:
            out.append(n)
            for r in rot:
                out.extend(u + 1 for u in r)
                out.append(0)
        else:
            out.append(0)
            out += n.to_bytes(2, "little")
            for r in rot:
                for u in r:
                    out += (u + 1).to_bytes(2, "little")
                out += b"\x00\x00"
    return bytes(out)

