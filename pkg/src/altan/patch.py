"""Planar patches: rotation systems, faces, boundary features and parity.

Orientation convention: ``rotation[v]`` lists the neighbours of ``v`` in
counterclockwise order.  Faces are traced with the rule "leave ``v`` along
the neighbour that precedes the arrival vertex in ``rotation[v]``", which
walks bounded faces counterclockwise and the outer face clockwise around
the patch.  The outer walk therefore gives the clockwise perimeter order
used for the natural attachment set.  Mirror images have the same nullity
and face counts, so the choice is harmless.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    AmbiguousOuterFace,
    IdentityViolation,
    InconsistentEmbedding,
    NoDegreeTwoVertices,
    NotAPatch,
    NotBipartite,
)
from .graph import AltanPair, AttachmentSet, Graph, altan, canonical_rotation, make_graph, make_pair
from .linalg import nullity

Dart = tuple[int, int]


def trace_faces(rotation: Sequence[Sequence[int]]) -> list[list[int]]:
    """All faces of a rotation system as vertex walks, in a deterministic order."""
    pos = [{u: i for i, u in enumerate(r)} for r in rotation]
    darts = sorted((u, v) for u in range(len(rotation)) for v in rotation[u])
    seen = set()
    faces = []
    for d in darts:
        if d in seen:
            continue
        walk = []
        u, v = d
        while (u, v) not in seen:
            seen.add((u, v))
            walk.append(u)
            rv = rotation[v]
            w = rv[(pos[v][u] - 1) % len(rv)]
            u, v = v, w
        if (u, v) != d:
            raise InconsistentEmbedding("face walk did not close on its starting dart")
        faces.append(walk)
    return faces


def _face_of(faces: list[list[int]], dart: Dart) -> int:
    u, v = dart
    for i, f in enumerate(faces):
        k = len(f)
        for j in range(k):
            if f[j] == u and f[(j + 1) % k] == v:
                return i
    raise InconsistentEmbedding(f"dart {dart} not on any face")


def _biconnected(G: Graph) -> bool:
    """Connected with no articulation point (iterative Tarjan)."""
    n = G.n
    if n < 3:
        return False
    disc = [-1] * n
    low = [0] * n
    t = 0
    disc[0] = low[0] = 0
    t = 1
    root_children = 0
    stack = [(0, -1, iter(G.adjacency[0]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for u in it:
            if disc[u] < 0:
                disc[u] = low[u] = t
                t += 1
                if v == 0:
                    root_children += 1
                stack.append((u, v, iter(G.adjacency[u])))
                advanced = True
                break
            elif u != parent:
                low[v] = min(low[v], disc[u])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[v])
            if p != 0 and low[v] >= disc[p]:
                return False
    return t == n and root_children == 1


@dataclass(frozen=True)
class PlanarPatch:
    """A 2-connected subcubic plane graph with every degree-2 vertex on the outer face.

    ``outer`` is a dart lying on the outer face; ``cells`` is set for
    patches built from the hexagonal lattice (benzenoids).
    """

    graph: Graph
    rotation: tuple[tuple[int, ...], ...]
    outer: Dart
    cells: frozenset | None = field(default=None, compare=False)

    def faces(self) -> list[list[int]]:
        return faces(self)

    @property
    def outer_face(self) -> int:
        return _face_of(self.faces(), self.outer)

    def outer_walk(self) -> list[int]:
        fs = self.faces()
        return fs[_face_of(fs, self.outer)]

    def bounded_faces(self) -> list[list[int]]:
        fs = self.faces()
        k = _face_of(fs, self.outer)
        return [f for i, f in enumerate(fs) if i != k]

    @property
    def is_benzenoid(self) -> bool:
        return self.cells is not None


def faces(patch: PlanarPatch) -> list[list[int]]:
    fs = trace_faces(patch.rotation)
    G = patch.graph
    if G.n - G.m + len(fs) != 2:
        raise InconsistentEmbedding(f"Euler check failed: V - E + F = {G.n - G.m + len(fs)}")
    return fs


def outer_face_detect(graph: Graph, fs: list[list[int]]) -> int:
    """Index of the unique face carrying every degree-2 vertex.

    A bare cycle has two such faces that are mirror images of each other;
    the first one is returned.
    """
    deg2 = {v for v in range(graph.n) if graph.degree(v) == 2}
    cands = [i for i, f in enumerate(fs) if deg2 <= set(f)]
    if len(cands) == 1:
        return cands[0]
    if len(cands) == 2 and len(deg2) == graph.n:
        return cands[0]
    raise AmbiguousOuterFace(f"{len(cands)} faces contain all degree-2 vertices")


def make_patch(graph: Graph, rotation: Sequence[Sequence[int]], outer: Dart | None = None,
               cells=None) -> PlanarPatch:
    """Validate and build a :class:`PlanarPatch`; detects the outer face if not given."""
    rotation = tuple(tuple(r) for r in rotation)
    if len(rotation) != graph.n:
        raise InconsistentEmbedding("rotation system size does not match graph")
    for v in range(graph.n):
        if sorted(rotation[v]) != list(graph.adjacency[v]):
            raise InconsistentEmbedding(f"rotation at {v} does not list its neighbours")
    degs = graph.degrees()
    if graph.n == 0 or min(degs) < 2 or max(degs) > 3:
        raise NotAPatch("degrees must lie in {2, 3}")
    if not _biconnected(graph):
        raise NotAPatch("graph is not 2-connected")
    fs = trace_faces(rotation)
    if graph.n - graph.m + len(fs) != 2:
        raise InconsistentEmbedding(f"Euler check failed: V - E + F = {graph.n - graph.m + len(fs)}")
    if outer is None:
        k = outer_face_detect(graph, fs)
        outer = (fs[k][0], fs[k][1])
    else:
        k = _face_of(fs, outer)
        deg2 = {v for v in range(graph.n) if degs[v] == 2}
        if not deg2 <= set(fs[k]):
            raise NotAPatch("a degree-2 vertex is not on the outer face")
    return PlanarPatch(graph, rotation, tuple(outer), frozenset(cells) if cells is not None else None)


def natural_attachment_set(patch: PlanarPatch, canonical: bool = True) -> AttachmentSet:
    walk = patch.outer_walk()
    H = tuple(v for v in walk if patch.graph.degree(v) == 2)
    if not H:
        raise NoDegreeTwoVertices("patch has no degree-2 vertices")
    H = AttachmentSet(H)
    return canonical_rotation(H) if canonical else H


def patch_pair(patch: PlanarPatch) -> AltanPair:
    return make_pair(patch.graph, natural_attachment_set(patch))


def altan_of_patch(patch: PlanarPatch) -> PlanarPatch:
    """Altan with the natural attachment set, drawn in the outer face."""
    H = natural_attachment_set(patch)
    pair = altan(make_pair(patch.graph, H))
    n, h = patch.graph.n, H.h
    walk = patch.outer_walk()
    pred = {walk[i]: walk[i - 1] for i in range(len(walk))}
    rot = [list(r) for r in patch.rotation] + [[] for _ in range(2 * h)]
    for i, v in enumerate(H):
        x = n + i
        r = rot[v]
        r.insert(r.index(pred[v]), x)
        y_prev = n + h + (i - 1) % h
        rot[x] = [n + h + i, y_prev, v]
        rot[n + h + i] = [x, n + (i + 1) % h]
    outer = (n + 2 * h - 1, n)
    return make_patch(pair.graph, rot, outer)


# -- face census -------------------------------------------------------------

@dataclass(frozen=True)
class FaceCensus:
    f: dict[int, int]
    f_tilde: dict[int, int]
    n2: int
    n3b: int


def degree_classes(patch: PlanarPatch) -> dict[str, int]:
    G = patch.graph
    walk = patch.outer_walk()
    on_perim = set(walk)
    n2 = sum(1 for v in range(G.n) if G.degree(v) == 2)
    n3 = G.n - n2
    n3b = sum(1 for v in on_perim if G.degree(v) == 3)
    return {"n": G.n, "n2": n2, "n3": n3, "n3b": n3b, "n3i": n3 - n3b, "p": len(walk), "h": n2}


def face_census(parent: PlanarPatch, alt: PlanarPatch, benzenoid: bool | None = None) -> FaceCensus:
    """Face counts of the altan and of its new ring, checked against the Euler identities."""
    n0 = parent.graph.n
    bounded = alt.bounded_faces()
    f = Counter(len(fc) for fc in bounded)
    ft = Counter(len(fc) for fc in bounded if any(v >= n0 for v in fc))
    cls = degree_classes(parent)
    n2, n3b = cls["n2"], cls["n3b"]
    lhs2 = sum((6 - r) * c for r, c in f.items())
    if lhs2 != 6:
        raise IdentityViolation(f"sum (6-r) f_r = {lhs2}, expected 6")
    lhs3 = sum((6 - r) * c for r, c in ft.items())
    if lhs3 != n2 - n3b:
        raise IdentityViolation(f"sum (6-r) f~_r = {lhs3}, expected n2 - n3b = {n2 - n3b}")
    if ft.get(3, 0) or ft.get(4, 0):
        raise IdentityViolation("new ring contains a triangle or square")
    if benzenoid is None:
        benzenoid = parent.is_benzenoid
    if benzenoid:
        lhs6 = ft.get(5, 0) - ft.get(7, 0) - 2 * ft.get(8, 0) - 3 * ft.get(9, 0)
        if lhs6 != 6 or any(r > 9 for r in ft):
            raise IdentityViolation(f"f~5 - f~7 - 2 f~8 - 3 f~9 = {lhs6}, expected 6")
    return FaceCensus(dict(sorted(f.items())), dict(sorted(ft.items())), n2, n3b)


# -- boundary features --------------------------------------------------------

@dataclass(frozen=True)
class BoundaryProfile:
    code: tuple[int, ...]
    b1: int = 0
    b2: int = 0
    b3: int = 0
    b4: int = 0
    b: int = 0
    n22: int = 0
    runs: dict[int, int] = field(default_factory=dict, compare=False)


def perimeter_degrees(patch: PlanarPatch) -> tuple[int, ...]:
    return tuple(patch.graph.degree(v) for v in patch.outer_walk())


def bay_features(profile: BoundaryProfile | Sequence[int]) -> BoundaryProfile:
    """Count runs 2 3^k 2 on the cyclic perimeter degree sequence.

    k = 0 gives a 22 adjacency; k = 1..4 are fissures, bays, coves and
    fjords.  The bay number weights a run of k threes by k - 1.
    """
    code = tuple(profile.code if isinstance(profile, BoundaryProfile) else profile)
    if 2 not in code:
        return BoundaryProfile(code)
    start = code.index(2)
    seq = code[start:] + code[:start]
    runs: Counter = Counter()
    k = 0
    for d in seq[1:] + (2,):
        if d == 2:
            runs[k] += 1
            k = 0
        else:
            k += 1
    b = sum((k - 1) * c for k, c in runs.items() if k >= 2)
    return BoundaryProfile(
        code, runs.get(1, 0), runs.get(2, 0), runs.get(3, 0), runs.get(4, 0), b, runs.get(0, 0), dict(runs)
    )


def boundary_profile(patch: PlanarPatch) -> BoundaryProfile:
    return bay_features(perimeter_degrees(patch))


def parity_check(patch: PlanarPatch, eta: int | None = None) -> bool:
    """Nullity and attachment-set size agree mod 2 (bipartite patches only).

    Also checks the intermediate congruences h = n3i = n3b = n (mod 2).
    """
    if not patch.graph.is_bipartite():
        raise NotBipartite("parity theorem needs a bipartite patch")
    cls = degree_classes(patch)
    if eta is None:
        eta = nullity(patch.graph)
    vals = [cls["h"], cls["n3i"], cls["n3b"], cls["n"], eta]
    return len({v % 2 for v in vals}) == 1


# -- boundary edge code ------------------------------------------------------

def canonical_bec(digits: Sequence[int]) -> str:
    """Lexicographically largest rotation of the digit cycle or its reverse."""
    d = list(digits)
    if len(d) <= 1:
        return "".join(map(str, d))
    cands = []
    for seq in (d, d[::-1]):
        for i in range(len(seq)):
            cands.append(seq[i:] + seq[:i])
    best = max(cands)
    if any(x > 9 for x in best):
        raise ValueError("run length above 9 cannot be written as a digit")
    return "".join(map(str, best))


def boundary_edge_code(patch: PlanarPatch) -> str:
    degs = perimeter_degrees(patch)
    k = len(degs)
    threes = [i for i, d in enumerate(degs) if d == 3]
    if not threes:
        return str(k)
    digits = [((threes[(j + 1) % len(threes)] - threes[j]) % k) or k for j in range(len(threes))]
    return canonical_bec(digits)


def parse_bec(code: str) -> PlanarPatch:
    from .lattice import cells_from_bec, to_patch

    return to_patch(cells_from_bec(code))


# -- export -------------------------------------------------------------------

def patch_to_json(patch: PlanarPatch) -> str:
    doc = {
        "n": patch.graph.n,
        "edges": [list(e) for e in patch.graph.edges()],
        "rotation": [list(r) for r in patch.rotation],
        "outer": list(patch.outer),
        "attachment": list(natural_attachment_set(patch).vertices),
    }
    if patch.cells is not None:
        doc["cells"] = sorted(list(c) for c in patch.cells)
    return json.dumps(doc, sort_keys=True)


def patch_from_json(text: str) -> PlanarPatch:
    doc = json.loads(text)
    G = make_graph(doc["n"], [tuple(e) for e in doc["edges"]])
    cells = doc.get("cells")
    return make_patch(G, doc["rotation"], tuple(doc["outer"]) if doc.get("outer") else None,
                      cells=[tuple(c) for c in cells] if cells else None)


def patch_from_rotation(rotation: Sequence[Iterable[int]], outer: Dart | None = None) -> PlanarPatch:
    rotation = [list(r) for r in rotation]
    G = make_graph(len(rotation), [(u, v) for u, r in enumerate(rotation) for v in r])
    return make_patch(G, rotation, outer)


def patch_from_coordinates(points: Sequence[tuple[float, float]], edges: Iterable[Sequence[int]],
                           cells=None) -> PlanarPatch:
    """Patch from a straight-line drawing; the outer face is the one walked clockwise."""
    G = make_graph(len(points), edges)
    rotation = []
    for v in range(G.n):
        x0, y0 = points[v]
        rotation.append(sorted(G.adjacency[v],
                               key=lambda u: math.atan2(points[u][1] - y0, points[u][0] - x0)))
    outer = None
    for f in trace_faces(rotation):
        k = len(f)
        area = sum(points[f[i]][0] * points[f[(i + 1) % k]][1] - points[f[(i + 1) % k]][0] * points[f[i]][1]
                   for i in range(k))
        if area < 0:
            outer = (f[0], f[1])
            break
    return make_patch(G, rotation, outer, cells=cells)
