"""Isomorph-free enumeration of benzenoids, catafused benzenoids and convex benzenoids.

General and catafused benzenoids come from canonical augmentation over
connected polyhexes: a polyhex is grown one cell at a time and a child is
kept only when the added cell lies in the orbit of the child's canonical
deletion cell.  Polyhexes with holes stay in the tree as intermediates
(a hole can be filled later) but are never emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceeded
from .lattice import (
    TRANSFORMS,
    Polyhex,
    _connected,
    has_hole,
    internal_vertex_count,
    neighbours,
)

DEFAULT_CAP = 10


def _images(cells):
    """Normalized images of ``cells`` under all 12 symmetries, with the transform used."""
    out = []
    for f in TRANSFORMS:
        img = [f(c) for c in cells]
        mq = min(c[0] for c in img)
        mr = min(c[1] for c in img)
        out.append((tuple(sorted((q - mq, r - mr) for q, r in img)), f, mq, mr))
    return out


def _accept(child: tuple, added) -> tuple | None:
    """Canonical form of ``child`` if ``added`` is in the orbit of its canonical deletion cell."""
    imgs = _images(child)
    best = min(i[0] for i in imgs)
    cells = set(best)
    m = None
    for c in sorted(best, reverse=True):
        if _connected(cells, skip=c):
            m = c
            break
    for img, f, mq, mr in imgs:
        if img != best:
            continue
        a = f(added)
        if (a[0] - mq, a[1] - mr) == m:
            return best
    return None


def _grow(eps: int, keep) -> Iterator[tuple]:
    """Depth-first canonical augmentation; ``keep`` prunes subtrees."""
    root = ((0, 0),)

    def rec(cells):
        if len(cells) == eps:
            yield cells
            return
        present = set(cells)
        seen = set()
        for c in sorted({u for c in cells for u in neighbours(c)} - present):
            child = tuple(sorted(cells + (c,)))
            canon = _accept(child, c)
            if canon is None or canon in seen:
                continue
            seen.add(canon)
            if not keep(child):
                continue
            yield from rec(canon)

    yield from rec(root)


def _check_cap(eps: int, cap: int | None):
    if eps < 1:
        raise ValueError("eps must be at least 1")
    if cap is not None and eps > cap:
        raise CapExceeded(f"eps = {eps} exceeds the enumeration cap {cap}")


def enumerate_polyhexes(eps: int, cap: int | None = DEFAULT_CAP) -> Iterator[Polyhex]:
    """All connected polyhexes with ``eps`` cells, holes included."""
    _check_cap(eps, cap)
    for cells in _grow(eps, lambda c: True):
        yield Polyhex(frozenset(cells))


def enumerate_benzenoids(eps: int, cap: int | None = DEFAULT_CAP) -> Iterator[Polyhex]:
    """One representative per class of simply connected polyhexes with ``eps`` cells."""
    _check_cap(eps, cap)
    for cells in _grow(eps, lambda c: True):
        if not has_hole(cells):
            yield Polyhex(frozenset(cells))


def enumerate_catafused(eps: int, cap: int | None = DEFAULT_CAP) -> Iterator[Polyhex]:
    """Benzenoids without internal vertices.

    Removing a cell never creates an internal vertex, and a ring of cells
    around a hole keeps that hole unless the hole is filled, which creates
    internal vertices.  So the search tree can be pruned to catafused,
    hole-free nodes.  Benzene (``eps = 1``) is emitted.
    """
    _check_cap(eps, cap)
    for cells in _grow(eps, lambda c: internal_vertex_count(c) == 0 and not has_hole(c)):
        yield Polyhex(frozenset(cells))


# -- convex benzenoids --------------------------------------------------------

@dataclass(frozen=True)
class ConvexSpec:
    """Cells along each of the six sides, counterclockwise; canonical up to dihedral symmetry."""

    sides: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.sides) != 6 or min(self.sides) < 1:
            raise ValueError(f"six positive side lengths required, got {self.sides}")

    def canonical(self) -> "ConvexSpec":
        s = list(self.sides)
        cands = []
        for seq in (s, s[::-1]):
            for i in range(6):
                cands.append(tuple(seq[i:] + seq[:i]))
        return ConvexSpec(max(cands))

    @property
    def closes(self) -> bool:
        # opposite sides of a lattice hexagon: a1 + a2 = a4 + a5, a2 + a3 = a5 + a6
        a = self.sides
        return a[0] + a[1] == a[3] + a[4] and a[1] + a[2] == a[4] + a[5]


def convex_region(Q: int, R: int, lo: int, s: int) -> frozenset:
    """Cells with 0 <= q <= Q, 0 <= r <= R and lo <= q + r <= Q + R - s."""
    hi = Q + R - s
    return frozenset((q, r) for q in range(Q + 1) for r in range(R + 1) if lo <= q + r <= hi)


def convex_spec(cells) -> ConvexSpec:
    """Side lengths: cells attaining the maximum of q, q+r, r, -q, -q-r, -r."""
    funcs = (lambda c: c[0], lambda c: c[0] + c[1], lambda c: c[1],
             lambda c: -c[0], lambda c: -c[0] - c[1], lambda c: -c[1])
    out = []
    for f in funcs:
        m = max(f(c) for c in cells)
        out.append(sum(1 for c in cells if f(c) == m))
    return ConvexSpec(tuple(out))


def _tri(t: int) -> int:
    return t * (t + 1) // 2


def enumerate_convex(eps_max: int, eps_min: int = 1) -> Iterator[Polyhex]:
    """All convex benzenoids with ``eps_min`` to ``eps_max`` cells, smallest first.

    A convex benzenoid is the set of cells inside a lattice hexagon, the
    intersection of three strips.  Tight strip bounds are enumerated by
    their box ``Q x R`` and the two corner cuts ``lo`` and ``s``; the cell
    count is ``(Q+1)(R+1) - T(lo) - T(s)``.
    """
    if eps_max < 1:
        raise ValueError("eps_max must be at least 1")
    found: dict[tuple, tuple[int, frozenset]] = {}
    for Q in range(eps_max):
        for R in range(Q + 1):
            m = min(Q, R)
            box = (Q + 1) * (R + 1)
            if box - 2 * _tri(m) > eps_max:
                continue
            for lo in range(m + 1):
                for s in range(lo, m + 1):
                    if lo + s > Q + R:
                        break
                    size = box - _tri(lo) - _tri(s)
                    if size > eps_max or size < max(eps_min, 1):
                        continue
                    cells = convex_region(Q, R, lo, s)
                    key = Polyhex(cells).canonical()
                    if key not in found:
                        found[key] = (size, frozenset(key))
    for key in sorted(found, key=lambda k: (found[k][0], k)):
        yield Polyhex(found[key][1])


def convex_counts_by_size(eps_max: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in enumerate_convex(eps_max):
        out[p.eps] = out.get(p.eps, 0) + 1
    return out

