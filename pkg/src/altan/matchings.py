"""Perfect matching (Kekule structure) counts."""

from __future__ import annotations

from functools import lru_cache

from .graph import Graph


def count_perfect_matchings(G: Graph) -> int:
    """Exact number of perfect matchings.

    Branches on the lowest-numbered unmatched vertex, trying each of its
    unmatched neighbours; the remaining vertex set (a bitmask) is memoized.
    Vertices of planar patches are numbered along the lattice, which keeps
    the frontier and therefore the cache small.
    """
    n = G.n
    if n % 2:
        return 0
    if n == 0:
        return 1
    nbr_masks = [sum(1 << u for u in G.adjacency[v]) for v in range(n)]

    @lru_cache(maxsize=None)
    def count(rest: int) -> int:
        if rest == 0:
            return 1
        v = (rest & -rest).bit_length() - 1
        rest ^= 1 << v
        cand = nbr_masks[v] & rest
        total = 0
        while cand:
            low = cand & -cand
            total += count(rest ^ low)
            cand ^= low
        return total

    return count((1 << n) - 1)
