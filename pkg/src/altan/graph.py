"""Graphs, attachment sets and the altan construction."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, InvalidAttachment, SelfLoop


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency length does not match n")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise IndexOutOfRange(f"neighbour {u} of {v} outside [0, {self.n})")
                if u == v:
                    raise SelfLoop(f"self-loop at {v}")
            if len(set(nbrs)) != len(nbrs):
                raise ValueError(f"duplicate neighbour entries at {v}")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if v not in self.adjacency[u]:
                    raise ValueError(f"asymmetric adjacency {v}->{u}")

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def bipartition(self) -> list[int] | None:
        """Return a 0/1 colouring, or None when the graph has an odd cycle."""
        colour = [-1] * self.n
        for s in range(self.n):
            if colour[s] >= 0:
                continue
            colour[s] = 0
            stack = [s]
            while stack:
                v = stack.pop()
                for u in self.adjacency[v]:
                    if colour[u] < 0:
                        colour[u] = 1 - colour[v]
                        stack.append(u)
                    elif colour[u] == colour[v]:
                        return None
        return colour

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None


def make_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a :class:`Graph`; duplicate edges are dropped, self-loops rejected."""
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


@dataclass(frozen=True, eq=False)
class AttachmentSet:
    """Cyclic h-tuple of vertices; repeats allowed, equality up to rotation."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def h(self) -> int:
        return len(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def __eq__(self, other):
        if not isinstance(other, AttachmentSet):
            return NotImplemented
        return canonical_rotation(self).vertices == canonical_rotation(other).vertices

    def __hash__(self):
        return hash(canonical_rotation(self).vertices)

    def shift(self, j: int) -> "AttachmentSet":
        if not self.vertices:
            return self
        j %= len(self.vertices)
        return AttachmentSet(self.vertices[j:] + self.vertices[:j])

    def validate(self, graph: Graph) -> None:
        if self.h < 2:
            raise InvalidAttachment(f"attachment set needs h >= 2, got {self.h}")
        for v in self.vertices:
            if not 0 <= v < graph.n:
                raise InvalidAttachment(f"attachment vertex {v} outside [0, {graph.n})")


def canonical_rotation(H: AttachmentSet) -> AttachmentSet:
    """Lexicographically smallest circular shift of ``H`` (no reflection)."""
    t = H.vertices
    if not t:
        return H
    best = min(t[i:] + t[:i] for i in range(len(t)))
    return H if best == t else AttachmentSet(best)


@dataclass(frozen=True)
class AltanPair:
    graph: Graph
    attachment: AttachmentSet
    level: int = 0
    x_range: range = field(default=range(0))
    y_range: range = field(default=range(0))

    @property
    def h(self) -> int:
        return self.attachment.h

    @property
    def x_vertices(self) -> list[int]:
        return list(self.x_range)

    @property
    def y_vertices(self) -> list[int]:
        return list(self.y_range)


def make_pair(graph: Graph, attachment: Iterable[int] | AttachmentSet) -> AltanPair:
    if not isinstance(attachment, AttachmentSet):
        attachment = AttachmentSet(tuple(attachment))
    attachment.validate(graph)
    return AltanPair(graph, attachment)


def altan(pair: AltanPair) -> AltanPair:
    """One altan step.

    New vertices: ``x_i`` get indices ``n..n+h-1`` and ``y_i`` get
    ``n+h..n+2h-1``, both in tuple order.  The returned attachment set is
    ``(y_1, ..., y_h)``.
    """
    G, H = pair.graph, pair.attachment
    H.validate(G)
    n, h = G.n, H.h
    adj = [list(a) for a in G.adjacency] + [[] for _ in range(2 * h)]

    def link(a, b):
        adj[a].append(b)
        adj[b].append(a)

    for i, v in enumerate(H.vertices):
        x, y = n + i, n + h + i
        link(v, x)
        link(x, y)
        link(y, n + (i + 1) % h)
    new = Graph(n + 2 * h, tuple(tuple(sorted(a)) for a in adj))
    return AltanPair(
        new,
        AttachmentSet(tuple(range(n + h, n + 2 * h))),
        pair.level + 1,
        range(n, n + h),
        range(n + h, n + 2 * h),
    )


def iterated_altan(pair: AltanPair, k: int) -> AltanPair:
    if k < 0:
        raise ValueError("k must be non-negative")
    for _ in range(k):
        pair = altan(pair)
    return pair


# -- serialization -----------------------------------------------------------

def pair_to_json(pair: AltanPair) -> str:
    doc = {
        "n": pair.graph.n,
        "edges": [list(e) for e in pair.graph.edges()],
        "attachment": list(pair.attachment.vertices),
        "level": pair.level,
    }
    return json.dumps(doc, sort_keys=True)


def pair_from_json(text: str) -> AltanPair:
    doc = json.loads(text)
    G = make_graph(doc["n"], [tuple(e) for e in doc["edges"]])
    H = AttachmentSet(tuple(doc.get("attachment", [])))
    level = int(doc.get("level", 0))
    if H.h:
        H.validate(G)
    if level >= 1 and H.h:
        # an ingested pair at level >= 1 keeps its induced y-block as attachment
        ys = sorted(H.vertices)
        y_range = range(ys[0], ys[-1] + 1) if ys == list(range(ys[0], ys[-1] + 1)) else range(0)
        x_range = range(y_range.start - H.h, y_range.start) if len(y_range) else range(0)
        return AltanPair(G, H, level, x_range, y_range)
    return AltanPair(G, H, level)


def to_dot(graph: Graph, labels: dict[int, str] | Sequence | None = None, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in range(graph.n):
        if labels is not None and (isinstance(labels, dict) and v in labels or not isinstance(labels, dict)):
            lines.append(f'  {v} [label="{labels[v]}"];')
        else:
            lines.append(f"  {v};")
    for u, v in graph.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
