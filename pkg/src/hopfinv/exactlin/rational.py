"""Certified exact row reduction over Q for large integer matrices.

Elimination runs modulo word-size primes in numpy; the rational RREF is
lifted by CRT and rational reconstruction, then certified exactly:

* rank_p(A) <= rank_Q(A) always (a minor nonzero mod p is nonzero in Z);
* the lifted kernel vectors are checked to satisfy ``A @ Y == 0`` in exact
  integer arithmetic, so rank_Q(A) <= n - #Y.

Both bounds together pin the rank and make the lifted RREF the true one.
If lifting fails after a few primes we fall back to Fraction elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt, lcm

import numpy as np

from .fields import rref_fraction

# primes below 2**31, so products of two residues fit in int64
PRIMES = (2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
          2147483549, 2147483543, 2147483497)
_MAX_PRIMES = 6


def modp_rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """RREF of an int64 array with entries in [0, p). Returns (rows, pivots)."""
    a = np.array(a, dtype=np.int64, copy=True)
    m, n = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        f = a[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            upd = (f[rows, None] * a[r, None, c:]) % p
            a[rows, c:] = (a[rows, c:] - upd) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _to_residues(A, p: int) -> np.ndarray:
    if isinstance(A, np.ndarray) and A.dtype == np.int64:
        return A % p
    arr = np.asarray(A, dtype=object)
    if arr.size == 0:
        return np.zeros(arr.shape, dtype=np.int64)
    return (arr % p).astype(np.int64)


def matmul_mod(X: np.ndarray, Y: np.ndarray, p: int) -> np.ndarray:
    """(X @ Y) mod p for residues below 2**31 without int64 overflow."""
    if X.shape[1] >= 2**15:
        raise ValueError("inner dimension too large for split product")
    lo = X & 0xFFFF
    hi = X >> 16
    return (((hi @ Y) % p) * 65536 + (lo @ Y)) % p


def rational_reconstruct(x: int, M: int) -> Fraction | None:
    """a/b with a = b*x mod M and |a|, b <= sqrt(M/2), or None."""
    x %= M
    bound = isqrt(M // 2)
    r0, r1 = M, x
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _int_matmul_is_zero(A, Y: list[list[int]]) -> bool:
    """Exact test of ``A @ Y == 0`` for integer A and integer columns Y."""
    if not Y:
        return True
    Ym = np.array(Y, dtype=object).T  # n x k
    Aarr = np.asarray(A, dtype=object) if not isinstance(A, np.ndarray) else A
    n = Ym.shape[0]
    amax = int(np.abs(Aarr).max()) if Aarr.size else 0
    ymax = max(abs(int(v)) for col in Y for v in col)
    if amax * ymax * max(n, 1) < 2**62:
        prod = np.asarray(Aarr, dtype=np.int64) @ Ym.astype(np.int64)
    else:
        prod = np.asarray(Aarr, dtype=object).dot(Ym)
    return not np.any(prod != 0)


@dataclass
class RationalRREF:
    """Reduced row echelon form over Q.

    Only the entries in free (non-pivot) columns are stored: pivot columns
    form an identity block.
    """

    ncols: int
    pivots: list[int]
    free: list[int]
    free_part: list[list[Fraction]]  # rank x len(free)
    method: str = "multimodular"
    primes_used: int = 0
    _pivot_index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._pivot_index = {c: i for i, c in enumerate(self.pivots)}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def row(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.ncols
        v[self.pivots[i]] = Fraction(1)
        for k, f in enumerate(self.free):
            v[f] = self.free_part[i][k]
        return v

    def rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rank)]

    def kernel_basis(self) -> list[list[Fraction]]:
        """Right kernel, one vector per free column (1 at that column)."""
        out = []
        for k, f in enumerate(self.free):
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for i, pc in enumerate(self.pivots):
                v[pc] = -self.free_part[i][k]
            out.append(v)
        return out

    def normal_form(self, vec) -> list[Fraction]:
        """Coordinates of ``vec`` modulo the row space, on the free columns."""
        out = [Fraction(vec[f]) for f in self.free]
        for i, pc in enumerate(self.pivots):
            c = vec[pc]
            if c:
                fp = self.free_part[i]
                for k in range(len(self.free)):
                    if fp[k]:
                        out[k] -= c * fp[k]
        return out

    def contains(self, vec) -> bool:
        return not any(self.normal_form(vec))


def _integer_kernel_columns(pivots, free, free_part, n) -> list[list[int]]:
    cols = []
    for k, f in enumerate(free):
        den = 1
        for i in range(len(pivots)):
            den = lcm(den, free_part[i][k].denominator)
        v = [0] * n
        v[f] = den
        for i, pc in enumerate(pivots):
            x = free_part[i][k]
            if x:
                v[pc] = -int(x * den)
        cols.append(v)
    return cols


def _lift(residue_rows: list[np.ndarray], primes: list[int], pivots, free):
    M = 1
    for p in primes:
        M *= p
    out = []
    for i in range(len(pivots)):
        row = []
        for f in free:
            # CRT
            x = 0
            for res, p in zip(residue_rows, primes):
                ri = int(res[i, f])
                Mi = M // p
                x += ri * Mi * pow(Mi, -1, p)
            x %= M
            if x == 0:
                row.append(Fraction(0))
                continue
            q = rational_reconstruct(x, M)
            if q is None:
                return None
            row.append(q)
        out.append(row)
    return out


def certified_rref(A, hint: tuple[np.ndarray, list[int]] | None = None) -> RationalRREF:
    """Exact RREF over Q of an integer matrix (list of lists or ndarray).

    ``hint`` may carry an already-computed RREF modulo ``PRIMES[0]``.
    """
    if isinstance(A, np.ndarray):
        m, n = A.shape
    else:
        m = len(A)
        n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return RationalRREF(n, [], list(range(n)), [], "trivial", 0)

    best_rank = -1
    residues: list[np.ndarray] = []
    used: list[int] = []
    pivots: list[int] = []
    for k, p in enumerate(PRIMES[:_MAX_PRIMES]):
        if k == 0 and hint is not None:
            R, piv = hint
        else:
            R, piv = modp_rref(_to_residues(A, p), p)
        if len(piv) < best_rank:
            continue  # unlucky prime
        if len(piv) > best_rank or piv != pivots:
            best_rank = len(piv)
            residues, used, pivots = [], [], piv
        residues.append(R)
        used.append(p)
        free = [c for c in range(n) if c not in set(pivots)]
        free_part = _lift(residues, used, pivots, free)
        if free_part is None:
            continue
        Y = _integer_kernel_columns(pivots, free, free_part, n)
        if _int_matmul_is_zero(A, Y):
            return RationalRREF(n, list(pivots), free, free_part, "multimodular", len(used))

    rows = A.tolist() if isinstance(A, np.ndarray) else A
    rref, piv = rref_fraction(rows)
    free = [c for c in range(n) if c not in set(piv)]
    free_part = [[r[f] for f in free] for r in rref]
    return RationalRREF(n, piv, free, free_part, "fraction", 0)


def rational_rank(A) -> int:
    return certified_rref(A).rank


class ModpEchelon:
    """Incremental row echelon form modulo ``PRIMES[0]``.

    Used for sampling loops: a batch of new rows changes the rank iff some
    mod-p kernel vector pairs nontrivially with it.
    """

    def __init__(self, ncols: int):
        self.p = PRIMES[0]
        self.ncols = ncols
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []
        self._kernel: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _kernel_mod(self) -> np.ndarray:
        if self._kernel is None:
            p = self.p
            piv = set(self.pivots)
            free = [c for c in range(self.ncols) if c not in piv]
            K = np.zeros((len(free), self.ncols), dtype=np.int64)
            for k, f in enumerate(free):
                K[k, f] = 1
                for i, pc in enumerate(self.pivots):
                    K[k, pc] = (-self.rows[i, f]) % p
            self._kernel = K
        return self._kernel

    def add_rows(self, new: np.ndarray) -> int:
        """Add rows (integers, any size); returns the new rank."""
        p = self.p
        res = _to_residues(new, p)
        if self.rank:
            K = self._kernel_mod()
            if K.shape[0] == 0:
                return self.rank
            test = matmul_mod(res, K.T.copy(), p) if res.size else res
            if not np.any(test):
                return self.rank
        stacked = np.vstack([self.rows, res])
        self.rows, self.pivots = modp_rref(stacked, p)
        self._kernel = None
        return self.rank

    def hint(self) -> tuple[np.ndarray, list[int]]:
        return self.rows, self.pivots
