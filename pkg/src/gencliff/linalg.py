"""Exact linear algebra kernels.

Two hot loops live here: dense Gaussian elimination mod p (rank and
span-membership over prime fields) and the transfer-matrix count of normal
words.  Each has a numba ``@njit`` version and a pure-numpy version.  The
numpy path is used when numba is missing or ``GENCLIFF_NO_NUMBA=1`` is set.

Rational matrices go through a sparse ``Fraction`` elimination in plain
Python; numba has no arbitrary-precision type.
"""

from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from .coeffs import PRIME_FIELD
from .errors import NotAField

_DISABLED = os.environ.get("GENCLIFF_NO_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError("numba disabled by GENCLIFF_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


# dense rank mod p -----------------------------------------------------------


def _rank_mod_p_py(mat, p):
    rows, cols = mat.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivot = -1
        for r in range(rank, rows):
            if mat[r, col] != 0:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            for c in range(col, cols):
                tmp = mat[rank, c]
                mat[rank, c] = mat[pivot, c]
                mat[pivot, c] = tmp
        inv = 1
        base = mat[rank, col]
        e = p - 2
        while e > 0:
            if e & 1:
                inv = inv * base % p
            base = base * base % p
            e >>= 1
        for c in range(col, cols):
            mat[rank, c] = mat[rank, c] * inv % p
        for r in range(rank + 1, rows):
            f = mat[r, col]
            if f != 0:
                for c in range(col, cols):
                    mat[r, c] = (mat[r, c] - f * mat[rank, c]) % p
        rank += 1
    return rank


rank_mod_p_numba = njit(cache=False)(_rank_mod_p_py) if HAVE_NUMBA else None


def rank_mod_p_numpy(mat, p):
    """Row reduction with whole-row numpy updates; ``mat`` is modified."""
    rows, cols = mat.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(mat[rank:, col])[0]
        if nz.size == 0:
            continue
        pivot = rank + int(nz[0])
        if pivot != rank:
            mat[[rank, pivot]] = mat[[pivot, rank]]
        inv = pow(int(mat[rank, col]), p - 2, p)
        mat[rank, col:] = mat[rank, col:] * inv % p
        below = mat[rank + 1:, col]
        hit = np.nonzero(below)[0] + rank + 1
        if hit.size:
            mat[hit, col:] = (mat[hit, col:] - np.outer(mat[hit, col], mat[rank, col:])) % p
        rank += 1
    return rank


def rank_mod_p(mat, p: int, backend: str | None = None) -> int:
    """Rank of an integer matrix over GF(p); the input array is not modified."""
    work = np.array(mat, dtype=np.int64, copy=True) % p
    if work.ndim != 2 or work.size == 0:
        return 0
    if backend is None:
        backend = "numba" if HAVE_NUMBA else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend unavailable")
        return int(rank_mod_p_numba(work, p))
    return int(rank_mod_p_numpy(work, p))


# sparse elimination (any field) -----------------------------------------------


class SparseEchelon:
    """Incrementally maintained row echelon form over a field.

    Rows are dicts ``{column: nonzero value}``; each stored row is monic at its
    pivot (its smallest column).
    """

    def __init__(self, ring):
        if not ring.is_field:
            raise NotAField(f"elimination over {ring} needs a field")
        self.ring = ring
        self.pivots = {}

    def reduce(self, row):
        ring = self.ring
        row = {c: v for c, v in row.items() if v != 0}
        while row:
            col = min(row)
            prow = self.pivots.get(col)
            if prow is None:
                return row
            f = row[col]
            for c, v in prow.items():
                nv = ring.sub(row.get(c, ring.zero()), ring.mul(f, v))
                if nv == 0:
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row) -> bool:
        """Insert a row; True when it increased the rank."""
        row = self.reduce(row)
        if not row:
            return False
        col = min(row)
        inv = self.ring.inv(row[col])
        self.pivots[col] = {c: self.ring.mul(v, inv) for c, v in row.items()}
        return True

    @property
    def rank(self) -> int:
        return len(self.pivots)


def _dense_ok(nrows, ncols, ring):
    return ring.kind == PRIME_FIELD and nrows * ncols <= 4_000_000


def matrix_rank(rows, ncols: int, ring) -> int:
    """Rank of sparse rows (``{col: raw value}``) over a field."""
    rows = [r for r in rows if r]
    if not rows:
        return 0
    if _dense_ok(len(rows), ncols, ring):
        mat = np.zeros((len(rows), ncols), dtype=np.int64)
        for i, r in enumerate(rows):
            for c, v in r.items():
                mat[i, c] = v
        return rank_mod_p(mat, ring.characteristic)
    ech = SparseEchelon(ring)
    for r in rows:
        ech.add(r)
    return ech.rank


def in_row_span(rows, target, ncols: int, ring) -> bool:
    rows = [r for r in rows if r]
    target = {c: v for c, v in target.items() if v != 0}
    if not target:
        return True
    if _dense_ok(len(rows) + 1, ncols, ring):
        return matrix_rank(rows + [target], ncols, ring) == matrix_rank(rows, ncols, ring)
    ech = SparseEchelon(ring)
    for r in rows:
        ech.add(r)
    return not ech.reduce(target)


def rational_rank(rows) -> int:
    """Rank over QQ of rows given as ``{col: int|Fraction}``."""
    from .coeffs import QQ

    ech = SparseEchelon(QQ)
    for r in rows:
        ech.add({c: Fraction(v) for c, v in r.items()})
    return ech.rank


# normal-word counting ---------------------------------------------------------


def _count_walks_py(delta, max_len):
    nstates, nletters = delta.shape
    counts = np.zeros(max_len + 1, dtype=np.int64)
    cur = np.zeros(nstates, dtype=np.int64)
    cur[0] = 1
    counts[0] = 1
    for k in range(1, max_len + 1):
        nxt = np.zeros(nstates, dtype=np.int64)
        for s in range(nstates):
            c = cur[s]
            if c == 0:
                continue
            for letter in range(nletters):
                t = delta[s, letter]
                if t >= 0:
                    nxt[t] += c
        cur = nxt
        total = 0
        for s in range(nstates):
            total += cur[s]
        counts[k] = total
    return counts


count_walks_numba = njit(cache=False)(_count_walks_py) if HAVE_NUMBA else None


def count_walks_numpy(delta, max_len):
    nstates = delta.shape[0]
    counts = np.zeros(max_len + 1, dtype=np.int64)
    cur = np.zeros(nstates, dtype=np.int64)
    cur[0] = 1
    counts[0] = 1
    src = np.repeat(np.arange(nstates), delta.shape[1])
    dst = delta.ravel()
    live = dst >= 0
    src, dst = src[live], dst[live]
    for k in range(1, max_len + 1):
        nxt = np.zeros(nstates, dtype=np.int64)
        np.add.at(nxt, dst, cur[src])
        cur = nxt
        counts[k] = cur.sum()
    return counts


def count_walks_exact(delta, max_len):
    """Arbitrary-precision version for counts that could overflow int64."""
    nstates, nletters = delta.shape
    table = delta.tolist()
    cur = [0] * nstates
    cur[0] = 1
    counts = [1]
    for _ in range(max_len):
        nxt = [0] * nstates
        for s, c in enumerate(cur):
            if c:
                for t in table[s]:
                    if t >= 0:
                        nxt[t] += c
        cur = nxt
        counts.append(sum(cur))
    return counts


def count_walks(delta, max_len: int, backend: str | None = None):
    """Number of length-k walks from state 0 in a partial DFA, k = 0..max_len.

    ``delta[s, letter]`` is the next state or -1 for a dead transition.
    """
    delta = np.asarray(delta, dtype=np.int64)
    nletters = max(delta.shape[1], 1)
    if nletters ** max_len >= 2**62:
        return count_walks_exact(delta, max_len)
    if backend is None:
        backend = "numba" if HAVE_NUMBA else "numpy"
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend unavailable")
        out = count_walks_numba(delta, max_len)
    else:
        out = count_walks_numpy(delta, max_len)
    return [int(v) for v in out]
