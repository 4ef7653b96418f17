"""Hexagonal lattice geometry: polyhex cells, symmetries, canonical forms.

Cells use axial coordinates ``(q, r)``.  The six neighbour offsets in
``DIRS`` are listed counterclockwise starting at angle 0.  Corners of a cell
are stored as integer keys ``3*c + d_k + d_{k+1}`` (three times the corner
position in axial units), so shared corners of adjacent cells coincide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import InvalidCode

Cell = tuple[int, int]

DIRS: tuple[Cell, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

# perimeter edge directions (corner-key units) at angles 30 + 60*j degrees
EDGE_DIRS: tuple[Cell, ...] = ((1, 1), (-1, 2), (-2, 1), (-1, -1), (1, -2), (2, -1))


def _rot60(c: Cell) -> Cell:
    q, r = c
    return (-r, q + r)


def _reflect(c: Cell) -> Cell:
    return (c[1], c[0])


def _transforms():
    """The 12 point symmetries of the lattice as functions on cells."""
    out = []
    for refl in (False, True):
        for k in range(6):
            def f(c, k=k, refl=refl):
                if refl:
                    c = _reflect(c)
                for _ in range(k):
                    c = _rot60(c)
                return c
            out.append(f)
    return out


TRANSFORMS = _transforms()


def corners(c: Cell) -> list[Cell]:
    """Corner keys of cell ``c`` in counterclockwise order starting at 30 degrees."""
    q, r = c
    return [(3 * q + DIRS[k][0] + DIRS[(k + 1) % 6][0], 3 * r + DIRS[k][1] + DIRS[(k + 1) % 6][1])
            for k in range(6)]


def cartesian(key: Cell) -> tuple[float, float]:
    """Euclidean position of an axial point (cells or corner keys, same scale)."""
    q, r = key
    return (q + r / 2.0, r * math.sqrt(3) / 2.0)


def _normalize(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    cells = list(cells)
    mq = min(c[0] for c in cells)
    mr = min(c[1] for c in cells)
    return tuple(sorted((q - mq, r - mr) for q, r in cells))


def canonical_cells(cells: Iterable[Cell]) -> tuple[Cell, ...]:
    cells = list(cells)
    return min(_normalize(f(c) for c in cells) for f in TRANSFORMS)


@dataclass(frozen=True)
class Polyhex:
    """A finite set of hexagonal cells; a benzenoid when connected and hole-free."""

    cells: frozenset

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset(tuple(c) for c in self.cells))

    @property
    def eps(self) -> int:
        return len(self.cells)

    def canonical(self) -> tuple[Cell, ...]:
        return canonical_cells(self.cells)

    def is_connected(self) -> bool:
        return _connected(self.cells)

    def has_hole(self) -> bool:
        return has_hole(self.cells)

    def is_benzenoid(self) -> bool:
        return bool(self.cells) and self.is_connected() and not self.has_hole()

    def internal_vertices(self) -> int:
        return internal_vertex_count(self.cells)

    def is_catafused(self) -> bool:
        return self.internal_vertices() == 0

    def to_patch(self):
        return to_patch(self.cells)


def neighbours(c: Cell) -> list[Cell]:
    return [(c[0] + d[0], c[1] + d[1]) for d in DIRS]


def _connected(cells, skip=None) -> bool:
    rest = [c for c in cells if c != skip]
    if not rest:
        return True
    pool = set(rest)
    stack = [rest[0]]
    pool.discard(rest[0])
    while stack:
        c = stack.pop()
        for u in neighbours(c):
            if u in pool:
                pool.discard(u)
                stack.append(u)
    return not pool


def has_hole(cells) -> bool:
    """True when some empty cell is enclosed (flood fill of the complement)."""
    cells = set(cells)
    qs = [c[0] for c in cells]
    rs = [c[1] for c in cells]
    q0, q1, r0, r1 = min(qs) - 1, max(qs) + 1, min(rs) - 1, max(rs) + 1
    empty = {(q, r) for q in range(q0, q1 + 1) for r in range(r0, r1 + 1)} - cells
    start = (q0, r0)
    empty.discard(start)
    stack = [start]
    while stack:
        c = stack.pop()
        for u in neighbours(c):
            if u in empty:
                empty.discard(u)
                stack.append(u)
    return bool(empty)


def internal_vertex_count(cells) -> int:
    """Corners shared by three cells of the set."""
    cells = set(cells)
    seen = set()
    for c in cells:
        for k in range(6):
            a = (c[0] + DIRS[k][0], c[1] + DIRS[k][1])
            b = (c[0] + DIRS[(k + 1) % 6][0], c[1] + DIRS[(k + 1) % 6][1])
            if a in cells and b in cells:
                seen.add(corners(c)[k])
    return len(seen)


def to_patch(cells):
    """Vertex/edge graph of a benzenoid with its lattice rotation system."""
    from .patch import patch_from_coordinates

    cells = sorted(set(tuple(c) for c in cells))
    if not cells:
        raise ValueError("empty polyhex")
    keys = set()
    edges = set()
    for c in cells:
        cs = corners(c)
        keys.update(cs)
        for k in range(6):
            a, b = cs[k], cs[(k + 1) % 6]
            edges.add((min(a, b), max(a, b)))
    order = sorted(keys, key=lambda k: (k[1], 2 * k[0] + k[1]))
    index = {k: i for i, k in enumerate(order)}
    return patch_from_coordinates([cartesian(k) for k in order],
                                  [(index[a], index[b]) for a, b in edges], cells=cells)


def cells_from_bec(code: str) -> frozenset:
    """Cells enclosed by the perimeter walk described by a boundary edge code.

    The walk starts at a degree-3 perimeter corner and keeps the interior on
    its left: each digit ``d`` is ``d`` edges with left turns at the ``d - 1``
    degree-2 corners and a right turn at the closing degree-3 corner.
    """
    code = code.strip()
    if not code or not code.isdigit():
        raise InvalidCode(f"not a digit string: {code!r}")
    digits = [int(ch) for ch in code]
    if digits == [6]:
        return frozenset({(0, 0)})
    if 0 in digits:
        raise InvalidCode("zero-length run")
    if sum(d - 2 for d in digits) != 6:
        raise InvalidCode(f"turning number of {code!r} is not one full turn")
    a = (1, 1)
    j = 2
    walk = [a]
    left = []
    for d in digits:
        for i in range(d):
            e = EDGE_DIRS[j]
            dl = DIRS[(j - 2) % 6]
            dm = DIRS[(j - 1) % 6]
            left.append(((a[0] - dl[0] - dm[0]) // 3, (a[1] - dl[1] - dm[1]) // 3))
            a = (a[0] + e[0], a[1] + e[1])
            walk.append(a)
            j = (j + 1) % 6 if i < d - 1 else (j - 1) % 6
    if a != walk[0] or j != 2:
        raise InvalidCode(f"walk for {code!r} does not close")
    if len(set(walk[:-1])) != len(walk) - 1:
        raise InvalidCode(f"walk for {code!r} intersects itself")
    perim = {(min(walk[i], walk[i + 1]), max(walk[i], walk[i + 1])) for i in range(len(walk) - 1)}
    cells = set(left)
    stack = list(cells)
    while stack:
        c = stack.pop()
        cs = corners(c)
        for k in range(6):
            u, v = cs[(k - 1) % 6], cs[k]
            if (min(u, v), max(u, v)) in perim:
                continue
            nb = (c[0] + DIRS[k][0], c[1] + DIRS[k][1])
            if nb not in cells:
                if len(cells) > 4 * len(walk) ** 2:
                    raise InvalidCode(f"walk for {code!r} does not enclose a bounded region")
                cells.add(nb)
                stack.append(nb)
    return frozenset(cells)
