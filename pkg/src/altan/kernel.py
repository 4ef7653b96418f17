"""Kernel vectors of altans: extension, contraction and excess nullity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    NotAKernelVector,
    NotContractible,
    NotExtendable,
    OddAttachment,
    TheoremViolation,
)
from .graph import AltanPair, AttachmentSet, Graph, altan
from .linalg import nullity


@dataclass(frozen=True)
class VertexWeighting:
    host: Graph
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if len(vals) != self.host.n:
            raise ValueError(f"weighting has {len(vals)} entries, host has {self.host.n} vertices")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, v):
        return self.values[v]

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def as_ints(self) -> list[int]:
        if any(v.denominator != 1 for v in self.values):
            raise ValueError("weighting is not integral")
        return [int(v) for v in self.values]


@dataclass(frozen=True)
class ExcessReport:
    parent_nullity: int
    altan_nullity: int
    excess: int
    h_parity: str


def weighting(G: Graph, values: Sequence) -> VertexWeighting:
    return VertexWeighting(G, tuple(values))


def check_local_condition(G: Graph, q: VertexWeighting | Sequence, lam=0) -> bool:
    vals = q.values if isinstance(q, VertexWeighting) else [Fraction(x) for x in q]
    if len(vals) != G.n:
        raise ValueError("weighting length does not match graph")
    lam = Fraction(lam)
    return all(lam * vals[v] == sum(vals[u] for u in G.adjacency[v]) for v in range(G.n))


def special_vector(pair: AltanPair) -> VertexWeighting:
    """+1 on y_i for even i, -1 for odd i (1-based), 0 elsewhere."""
    if pair.level < 1:
        raise ValueError("special vector needs an altan (level >= 1)")
    h = len(pair.y_range)
    if h % 2:
        raise OddAttachment(f"no special vector for odd h = {h}")
    vals = [0] * pair.graph.n
    for i, y in enumerate(pair.y_range, start=1):
        vals[y] = 1 if i % 2 == 0 else -1
    s = VertexWeighting(pair.graph, tuple(vals))
    if not check_local_condition(pair.graph, s, 0):
        raise TheoremViolation("special vector failed the local condition")
    return s


def _alt_sum(values, indices) -> Fraction:
    return sum(((-1) ** i) * Fraction(values[v]) for i, v in enumerate(indices, start=1))


def functional_C(q: VertexWeighting | Sequence, H: AttachmentSet | Sequence[int]) -> Fraction:
    vals = q.values if isinstance(q, VertexWeighting) else q
    return Fraction(_alt_sum(vals, tuple(H)))


def functional_D(q: VertexWeighting | Sequence, y_block: Sequence[int]) -> Fraction:
    vals = q.values if isinstance(q, VertexWeighting) else q
    return Fraction(_alt_sum(vals, tuple(y_block)))


def extend_kernel_vector(pair: AltanPair, q: VertexWeighting | Sequence, t=None) -> VertexWeighting:
    """Extend a kernel vector of ``pair.graph`` to one of ``altan(pair).graph``.

    For odd h the free value on ``y_h`` is forced to ``C(q)/2``; for even h
    the extension exists only when ``C(q) == 0`` and ``t`` (default 0) picks
    a member of the affine family.
    """
    G, H = pair.graph, pair.attachment
    vals = q.values if isinstance(q, VertexWeighting) else tuple(Fraction(x) for x in q)
    if len(vals) != G.n or not check_local_condition(G, vals, 0):
        raise NotAKernelVector("q is not in the kernel of the parent graph")
    h = H.h
    C = functional_C(vals, H)
    if h % 2:
        t = C / 2
    else:
        if C != 0:
            raise NotExtendable(C)
        t = Fraction(0) if t is None else Fraction(t)
    nxt = altan(pair)
    out = list(vals) + [Fraction(0)] * (2 * h)
    ys = list(nxt.y_range)
    out[ys[-1]] = t
    prev = t
    for i in range(h - 1):
        cur = -prev - vals[H[i]]
        out[ys[i]] = cur
        prev = cur
    ext = VertexWeighting(nxt.graph, tuple(out))
    if not check_local_condition(nxt.graph, ext, 0):
        raise TheoremViolation("extended vector is not in the altan kernel")
    return ext


def parent_graph(pair: AltanPair) -> Graph:
    """The graph the last altan step was applied to (vertices below x_1)."""
    n0 = pair.x_range.start
    return Graph(n0, tuple(tuple(u for u in pair.graph.adjacency[v] if u < n0) for v in range(n0)))


def contract_kernel_vector(pair: AltanPair, q: VertexWeighting | Sequence) -> VertexWeighting:
    if pair.level < 1:
        raise ValueError("contraction needs an altan (level >= 1)")
    vals = q.values if isinstance(q, VertexWeighting) else tuple(Fraction(x) for x in q)
    if len(vals) != pair.graph.n or not check_local_condition(pair.graph, vals, 0):
        raise NotAKernelVector("vector is not in the kernel of the altan")
    xs = [vals[x] for x in pair.x_range]
    if any(xs):
        raise NotContractible(xs)
    P = parent_graph(pair)
    res = VertexWeighting(P, vals[:P.n])
    if not check_local_condition(P, res, 0):
        raise TheoremViolation("contraction is not in the parent kernel")
    return res


def rebase_basis(basis: Sequence[Sequence], H: AttachmentSet | Sequence[int]) -> list[list[Fraction]]:
    """Replace a kernel basis by one in which every vector but the first has C = 0.

    The first vector with non-zero C becomes the pivot ``q1``; each other
    ``q_k`` becomes ``q_k - C(q_k)/C(q1) * q1``.  Unchanged if all C vanish.
    """
    vecs = [[Fraction(x) for x in v] for v in basis]
    cs = [functional_C(v, H) for v in vecs]
    k1 = next((i for i, c in enumerate(cs) if c != 0), None)
    if k1 is None:
        return vecs
    q1, c1 = vecs[k1], cs[k1]
    out = [q1]
    for i, (v, c) in enumerate(zip(vecs, cs)):
        if i == k1:
            continue
        lam = -c / c1
        out.append([a + lam * b for a, b in zip(v, q1)])
    return out


def excess_nullity(pair: AltanPair, parent: int | None = None, method: str = "auto") -> ExcessReport:
    h = pair.h
    eta0 = nullity(pair.graph, method) if parent is None else parent
    eta1 = nullity(altan(pair).graph, method)
    rep = ExcessReport(eta0, eta1, eta1 - eta0, "even" if h % 2 == 0 else "odd")
    check_window(rep)
    return rep


def check_window(rep: ExcessReport) -> None:
    ok = rep.excess in (0, 1, 2) if rep.h_parity == "even" else rep.excess == 0
    if not ok:
        raise TheoremViolation(
            f"excess {rep.excess} outside the allowed window for {rep.h_parity} h "
            f"(parent {rep.parent_nullity}, altan {rep.altan_nullity})"
        )


def iterated_nullities(pair: AltanPair, k_max: int, method: str = "auto") -> list[int]:
    """Nullities of altan^k for k = 0..k_max."""
    out = [nullity(pair.graph, method)]
    cur = pair
    for _ in range(k_max):
        cur = altan(cur)
        out.append(nullity(cur.graph, method))
    return out


def verify_iterated_stability(pair: AltanPair, k_max: int, method: str = "auto") -> bool:
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    etas = iterated_nullities(pair, k_max, method)
    return all(e == etas[1] for e in etas[2:])

