"""Exact rank, kernel bases and nullity over the rationals.

Two exact routes are provided:

* fraction-free Bareiss elimination on Python integers, used for small
  matrices and as the reference implementation;
* a multi-modular route for large matrices: reduced echelon form modulo
  word-sized primes, rational reconstruction of the kernel basis and an
  exact integer check ``M v == 0``.  A verified basis of size ``n - r_p``
  bounds the rank from above while ``r_p`` bounds it from below, so the
  result is exact, not probabilistic.  If the kernel never lifts, the
  Hadamard bound on the minors decides how many primes are enough.

No floating point is used by either route; :func:`nullity_float_oracle`
exists only to cross-check them in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import ConvergenceFailure
from .graph import Graph

# primes below 2**31 so that products of residues fit in int64
_PRIMES = (
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549,
    2147483543, 2147483497, 2147483489, 2147483477, 2147483423, 2147483399,
    2147483353, 2147483323, 2147483269, 2147483249, 2147483237, 2147483179,
    2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059,
    2147483053, 2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
    2147482937, 2147482921, 2147482877, 2147482873, 2147482867, 2147482859,
    2147482819, 2147482817, 2147482811, 2147482801, 2147482763, 2147482739,
    2147482697, 2147482693, 2147482681, 2147482663, 2147482661, 2147482621,
)

BAREISS_MAX_DIM = 48


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entries length must equal rows * cols")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(map(int, r)) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def matvec(self, v: Sequence) -> list:
        return [sum(a * b for a, b in zip(self.row(i), v) if a) for i in range(self.rows)]

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "IntMatrix":
        rows = self.to_rows()
        return IntMatrix.from_rows([[rows[i][j] for j in col_perm] for i in row_perm])


def adjacency_matrix(G: Graph) -> IntMatrix:
    ent = [0] * (G.n * G.n)
    for u in range(G.n):
        for v in G.adjacency[u]:
            ent[u * G.n + v] = 1
    return IntMatrix(G.n, G.n, tuple(ent))


# -- Bareiss ------------------------------------------------------------------

def rank_bareiss(rows: Sequence[Sequence[int]]) -> int:
    """Rank by fraction-free elimination with partial pivoting on |entry|."""
    M = [list(r) for r in rows]
    m = len(M)
    if m == 0:
        return 0
    ncols = len(M[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == m:
            break
        best, piv_row = 0, -1
        for i in range(r, m):
            a = abs(M[i][c])
            if a > best:
                best, piv_row = a, i
        if piv_row < 0:
            continue
        M[r], M[piv_row] = M[piv_row], M[r]
        pr = M[r]
        piv = pr[c]
        tail = range(c + 1, ncols)
        for i in range(r + 1, m):
            row = M[i]
            a = row[c]
            if a:
                M[i] = [0] * (c + 1) + [(piv * row[j] - a * pr[j]) // prev for j in tail]
            elif prev != piv:
                M[i] = [0] * (c + 1) + [(piv * row[j]) // prev for j in tail]
        prev = piv
        r += 1
    return r


def _kernel_gauss_jordan(rows: Sequence[Sequence[int]], ncols: int) -> tuple[int, list[list[int]]]:
    """Exact reduced echelon form on integer rows (gcd-normalised).

    Returns ``(rank, basis)`` with the basis in primitive integer form.
    """
    M = [list(r) for r in rows]
    m = len(M)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        piv_row, best = -1, 0
        for i in range(r, m):
            a = abs(M[i][c])
            if a and (best == 0 or a < best):
                best, piv_row = a, i
        if piv_row < 0:
            continue
        M[r], M[piv_row] = M[piv_row], M[r]
        pr = M[r]
        p = pr[c]
        for i in range(m):
            if i == r:
                continue
            row = M[i]
            a = row[c]
            if not a:
                continue
            g = math.gcd(a, p)
            fa, fp = p // g, a // g
            new = [fa * x - fp * y for x, y in zip(row, pr)]
            g = reduce(math.gcd, new, 0)
            if g > 1:
                new = [x // g for x in new]
            M[i] = new
        pivots.append(c)
        r += 1
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            if M[i][f]:
                vec[pc] = Fraction(-M[i][f], M[i][pc])
        basis.append(primitive(vec))
    return r, basis


# -- modular route ------------------------------------------------------------

def _rref_mod(A: np.ndarray, p: int) -> tuple[list[int], np.ndarray]:
    A = A % p
    m, ncols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            A[[r, pr]] = A[[pr, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        hit = np.flatnonzero(A[:, c])
        hit = hit[hit != r]
        if hit.size:
            f = A[hit, c][:, None]
            A[np.ix_(hit, np.arange(c, ncols))] = (A[hit, c:] - f * A[r, c:]) % p
        pivots.append(c)
        r += 1
    return pivots, A


def _kernel_mod(pivots: list[int], R: np.ndarray, p: int) -> list[list[int]]:
    ncols = R.shape[1]
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(pivots):
            if pc > f:
                break
            a = int(R[i, f])
            if a:
                v[pc] = (-a) % p
        out.append(v)
    return out


def _rational_reconstruct(a: int, m: int) -> Fraction | None:
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _lift(residues: list[list[int]], modulus: int) -> list[list[int]] | None:
    out = []
    for v in residues:
        fr = []
        for a in v:
            if a == 0:
                fr.append(Fraction(0))
                continue
            q = _rational_reconstruct(a, modulus)
            if q is None:
                return None
            fr.append(q)
        out.append(primitive(fr))
    return out


def _sparse_rows(rows: Sequence[Sequence[int]]) -> list[list[tuple[int, int]]]:
    return [[(j, a) for j, a in enumerate(r) if a] for r in rows]


def _in_kernel(sparse: list[list[tuple[int, int]]], v: Sequence[int]) -> bool:
    return all(sum(a * v[j] for j, a in row) == 0 for row in sparse)


def _log2_hadamard(rows: Sequence[Sequence[int]]) -> float:
    total = 0.0
    for r in rows:
        s = sum(a * a for a in r)
        if s > 1:
            total += 0.5 * math.log2(s)
    return total


def _modular_kernel(rows: Sequence[Sequence[int]], ncols: int, want_basis: bool = True):
    """Certified ``(rank, basis-or-None)`` via the multi-modular route.

    Returns ``None`` when the basis was requested but could not be lifted
    within the prime budget.
    """
    m = len(rows)
    if m == 0 or ncols == 0:
        return 0, ([[int(i == j) for j in range(ncols)] for i in range(ncols)] if want_basis else None)
    big = max((abs(a) for r in rows for a in r), default=0)
    if big >= 2**62:
        return None
    A = np.array(rows, dtype=np.int64)
    sparse = _sparse_rows(rows)
    hadamard = _log2_hadamard(rows)

    best_piv: list[int] | None = None
    residues: list[list[int]] = []
    modulus = 1
    log_all = 0.0
    for p in _PRIMES:
        pivots, R = _rref_mod(A.copy(), p)
        log_all += math.log2(p)
        if best_piv is None or len(pivots) > len(best_piv) or (
            len(pivots) == len(best_piv) and pivots < best_piv
        ):
            best_piv, residues, modulus = pivots, _kernel_mod(pivots, R, p), p
        elif pivots == best_piv:
            new = _kernel_mod(pivots, R, p)
            # Chinese remaindering, entry by entry
            inv = pow(modulus, -1, p)
            combined = []
            for va, vb in zip(residues, new):
                combined.append([a + modulus * (((b - a) * inv) % p) for a, b in zip(va, vb)])
            residues = combined
            modulus *= p
        else:
            continue
        rank = len(best_piv)
        if rank == ncols:
            return rank, []
        lifted = _lift(residues, modulus)
        if lifted is not None and all(_in_kernel(sparse, v) for v in lifted):
            return rank, lifted
        if not want_basis and log_all > hadamard + 1:
            return rank, None
    if not want_basis:
        return len(best_piv), None
    return None


# -- public API ---------------------------------------------------------------

def _as_rows(M) -> tuple[list[list[int]], int]:
    if isinstance(M, IntMatrix):
        return M.to_rows(), M.cols
    rows = [list(map(int, r)) for r in M]
    return rows, (len(rows[0]) if rows else 0)


def rank_exact(M, method: str = "auto") -> int:
    """Rank of an integer matrix over the rationals.

    ``method`` is ``"bareiss"``, ``"modular"`` or ``"auto"`` (Bareiss up to
    :data:`BAREISS_MAX_DIM`, modular above).
    """
    rows, ncols = _as_rows(M)
    if method not in ("auto", "bareiss", "modular"):
        raise ValueError(f"unknown method {method!r}")
    if method == "bareiss" or (method == "auto" and max(len(rows), ncols) <= BAREISS_MAX_DIM):
        return rank_bareiss(rows)
    res = _modular_kernel(rows, ncols, want_basis=False)
    if res is None:
        return rank_bareiss(rows)
    return res[0]


def kernel_basis(M, method: str = "auto") -> list[list[int]]:
    """Reduced-echelon kernel basis, each vector primitive with first non-zero > 0."""
    rows, ncols = _as_rows(M)
    if method == "exact" or (method == "auto" and max(len(rows), ncols) <= BAREISS_MAX_DIM):
        return _kernel_gauss_jordan(rows, ncols)[1]
    res = _modular_kernel(rows, ncols, want_basis=True)
    if res is None:
        return _kernel_gauss_jordan(rows, ncols)[1]
    return res[1]


def _graph_rows(G: Graph) -> list[list[int]]:
    rows = [[0] * G.n for _ in range(G.n)]
    for u in range(G.n):
        r = rows[u]
        for v in G.adjacency[u]:
            r[v] = 1
    return rows


def biadjacency_rows(G: Graph, colour: Sequence[int]) -> list[list[int]]:
    left = [v for v in range(G.n) if colour[v] == 0]
    right = [v for v in range(G.n) if colour[v] == 1]
    pos = {v: j for j, v in enumerate(right)}
    rows = []
    for u in left:
        r = [0] * len(right)
        for v in G.adjacency[u]:
            r[pos[v]] = 1
        rows.append(r)
    return rows


def nullity(G: Graph, method: str = "auto") -> int:
    """Multiplicity of 0 in the spectrum of A(G), computed exactly.

    For bipartite graphs ``rank A = 2 rank B`` with ``B`` the biadjacency
    block, which is used to shrink the elimination.
    """
    if G.n == 0:
        return 0
    colour = G.bipartition()
    if colour is not None:
        B = biadjacency_rows(G, colour)
        if not B or not B[0]:
            return G.n
        return G.n - 2 * rank_exact(B, method)
    return G.n - rank_exact(_graph_rows(G), method)


def graph_kernel(G: Graph, method: str = "auto") -> list[list[int]]:
    return kernel_basis(_graph_rows(G), method)


def nullity_float_oracle(G: Graph, tol: float = 1e-8) -> int:
    """Count eigenvalues of A(G) with |lambda| < tol (symmetric eigensolver)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if G.n == 0:
        return 0
    A = np.zeros((G.n, G.n))
    for u, v in G.edges():
        A[u, v] = A[v, u] = 1.0
    try:
        w = np.linalg.eigvalsh(A)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return int(np.sum(np.abs(w) < tol))


# -- vectors -----------------------------------------------------------------

def primitive(vec: Sequence) -> list[int]:
    """Scale a rational vector to coprime integers, first non-zero positive."""
    fr = [Fraction(x) for x in vec]
    den = reduce(math.lcm, (f.denominator for f in fr), 1)
    ints = [int(f * den) for f in fr]
    g = reduce(math.gcd, ints, 0)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def rank_of_vectors(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    den_rows = [primitive(v) for v in vectors]
    return rank_bareiss(den_rows)
