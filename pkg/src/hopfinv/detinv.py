"""Polynomials over Q, determinantal loci and their graded pieces.

Y_v is the set of g x f matrices of rank <= v; its ideal is generated by the
(v+1)-minors. Degree-d pieces of K[Y_v] are handled two ways:

* exactly, by row reducing the span of {monomial * minor} inside the space of
  degree-d monomials (feasible for small shapes);
* by evaluation: the rank of the matrix of degree-d monomials evaluated at
  random points P @ Q of rank <= v equals dim K[Y_v]_d once enough points are
  drawn (a lower bound always, exact with high probability).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import lcm

import numpy as np

from .exactlin import (IntMatrix, ModpEchelon, RationalRREF, certified_rref, rank_over)
from .exactlin.rational import _int_matmul_is_zero, _integer_kernel_columns


class ConstraintViolation(ValueError):
    pass


class OracleDisagreement(RuntimeError):
    """Two independent decision procedures gave different answers: a bug."""


# ---------------------------------------------------------------- polynomials


@dataclass(frozen=True)
class PolyRing:
    names: tuple[str, ...]

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def gen(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def var(self, name: str) -> "Poly":
        return self.gen(self.index(name))

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {(0,) * self.nvars: 1})

    def monomials(self, d: int, subset=None) -> list[tuple[int, ...]]:
        """Degree-d monomials in the variables ``subset`` (default all), grlex-descending."""
        idx = sorted(subset) if subset is not None else range(self.nvars)
        out = []
        for c in combinations_with_replacement(idx, d):
            e = [0] * self.nvars
            for i in c:
                e[i] += 1
            out.append(tuple(e))
        return out


def grlex_key(e: tuple[int, ...]):
    return (sum(e), e)


class Poly:
    """Sparse polynomial with rational coefficients; treat as immutable."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        t = {}
        for e, c in (terms or {}).items():
            if len(e) != ring.nvars:
                raise ValueError("exponent length does not match ring")
            c = Fraction(c)
            if c:
                t[tuple(e)] = c
        self.terms: dict[tuple[int, ...], Fraction] = t
        self._hash = None

    # -- structure
    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        return len(degs) == 1 and (d is None or degs == {d})

    def coefficient(self, e) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    # -- arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return Poly(self.ring, {(0,) * self.ring.nvars: other})

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = t.get(e, 0) + c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = Fraction(other)
            return Poly(self.ring, {e: c * v for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Poly(self.ring, t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution
    def diff(self, i: int) -> "Poly":
        t = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return Poly(self.ring, t)

    def evaluate(self, values) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(values, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, images: list["Poly"], target: PolyRing) -> "Poly":
        """Algebra map sending variable i to ``images[i]``."""
        powers: dict = {}

        def pw(i, k):
            if (i, k) not in powers:
                powers[(i, k)] = images[i] ** k
            return powers[(i, k)]

        out = Poly(target, {})
        for e, c in self.terms.items():
            term = Poly(target, {(0,) * target.nvars: c})
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            out = out + term
        return out

    # -- coordinates
    def vector(self, monomials: list[tuple[int, ...]], index: dict | None = None) -> list[Fraction]:
        index = index if index is not None else {m: k for k, m in enumerate(monomials)}
        v = [Fraction(0)] * len(monomials)
        for e, c in self.terms.items():
            if e not in index:
                raise ValueError(f"monomial {e} outside the given basis")
            v[index[e]] = c
        return v

    @classmethod
    def from_vector(cls, ring: PolyRing, monomials, vec) -> "Poly":
        return cls(ring, {m: c for m, c in zip(monomials, vec) if c})

    # -- I/O
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(self.ring.names[i] + (f"^{k}" if k > 1 else "")
                            for i, k in enumerate(e) if k)
            if not mono:
                s = str(c)
            elif c == 1:
                s = mono
            elif c == -1:
                s = "-" + mono
            else:
                s = f"{c}*{mono}"
            parts.append(s)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self})"

    def to_json(self) -> dict:
        return {"vars": list(self.ring.names),
                "terms": [[list(e), str(c)] for e, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        ring = PolyRing(tuple(obj["vars"]))
        return cls(ring, {tuple(e): Fraction(c) for e, c in obj["terms"]})


def matrix_ring(prefix: str, rows: int, cols: int) -> PolyRing:
    """Variables ``prefix[i][j]`` (1-based), row-major."""
    return PolyRing(tuple(f"{prefix}[{i + 1}][{j + 1}]" for i in range(rows) for j in range(cols)))


def determinant(entries: list[list[Poly]]) -> Poly:
    """Cofactor expansion along the first row."""
    k = len(entries)
    if k == 1:
        return entries[0][0]
    ring = entries[0][0].ring
    out = ring.zero()
    for j in range(k):
        minor = [row[:j] + row[j + 1:] for row in entries[1:]]
        term = entries[0][j] * determinant(minor)
        out = out + term if j % 2 == 0 else out - term
    return out


# ------------------------------------------------------------- minor ideals


@dataclass(frozen=True)
class MinorIdealSpec:
    """Ideal of (v+1)-minors of a generic g x f matrix."""

    shape: tuple[int, int]
    v: int
    ring: PolyRing
    generators: tuple[Poly, ...]

    @property
    def size(self) -> int:
        return self.v + 1


def minors(shape: tuple[int, int], v_plus_1: int, prefix: str = "x") -> MinorIdealSpec:
    if v_plus_1 < 1:
        raise ValueError("minor size must be >= 1")
    g, f = shape
    ring = matrix_ring(prefix, g, f)
    X = [[ring.gen(i * f + j) for j in range(f)] for i in range(g)]
    gens = []
    for R in combinations(range(g), v_plus_1):
        for C in combinations(range(f), v_plus_1):
            gens.append(determinant([[X[i][j] for j in C] for i in R]))
    return MinorIdealSpec((g, f), v_plus_1 - 1, ring, tuple(gens))


@dataclass
class GradedPiece:
    """Degree-d monomials together with the ideal's degree-d slice.

    ``ideal`` is the RREF of the slice in monomial coordinates; its pivots
    are leading monomials and the remaining (standard) monomials form the
    complement basis of the quotient.
    """

    degree: int
    ring: PolyRing
    monomials: list[tuple[int, ...]]
    ideal: RationalRREF

    def __post_init__(self):
        self.index = {m: k for k, m in enumerate(self.monomials)}

    @property
    def full_dim(self) -> int:
        return len(self.monomials)

    @property
    def ideal_dim(self) -> int:
        return self.ideal.rank

    @property
    def quotient_dim(self) -> int:
        return self.full_dim - self.ideal_dim

    @property
    def complement(self) -> list[tuple[int, ...]]:
        return [self.monomials[c] for c in self.ideal.free]

    def ideal_basis(self) -> list[Poly]:
        return [Poly.from_vector(self.ring, self.monomials, row) for row in self.ideal.rows()]

    def normal_form(self, p) -> list[Fraction]:
        """Coordinates modulo the ideal slice in the complement basis."""
        vec = p.vector(self.monomials, self.index) if isinstance(p, Poly) else p
        return self.ideal.normal_form(vec)

    def contains(self, p) -> bool:
        return not any(self.normal_form(p))


def ideal_degree_span(spec: MinorIdealSpec, d: int) -> GradedPiece:
    ring = spec.ring
    mons = ring.monomials(d)
    k = spec.size
    if d < k or not spec.generators:
        rr = RationalRREF(len(mons), [], list(range(len(mons))), [], "trivial", 0)
        return GradedPiece(d, ring, mons, rr)
    index = {m: i for i, m in enumerate(mons)}
    rows = []
    for mono in ring.monomials(d - k):
        for gen in spec.generators:
            row = [0] * len(mons)
            for e, c in gen.terms.items():
                row[index[tuple(a + b for a, b in zip(e, mono))]] = int(c)
            rows.append(row)
    rr = certified_rref(np.array(rows, dtype=np.int64))
    return GradedPiece(d, ring, mons, rr)


def hilbert_dim_exact(shape: tuple[int, int], v: int, d: int) -> int:
    """Monomial count minus the dimension of the ideal's degree-d slice."""
    return ideal_degree_span(minors(shape, v + 1), d).quotient_dim


# ----------------------------------------------------------- sampling points


@dataclass(frozen=True)
class RankPoint:
    """A g x f integer matrix P @ Q of rank <= v with its factors."""

    P: IntMatrix
    Q: IntMatrix

    def __post_init__(self):
        if self.P.cols != self.Q.rows:
            raise ValueError("factor shapes do not compose")

    @property
    def matrix(self) -> IntMatrix:
        return self.P @ self.Q

    def values(self) -> list[int]:
        """Entries in row-major order (the variable order of matrix_ring)."""
        return [x for row in self.matrix.to_dense() for x in row]


POINT_BOUND = 5


def _rng(seed: int, *context: int) -> np.random.Generator:
    return np.random.default_rng([seed & (2**64 - 1), *context])


def _random_factors(rng, count: int, g: int, f: int, v: int):
    P = rng.integers(-POINT_BOUND, POINT_BOUND + 1, size=(count, g, v))
    Q = rng.integers(-POINT_BOUND, POINT_BOUND + 1, size=(count, v, f))
    return P, Q


def sample_rank_points(shape, v: int, count: int, seed: int = 0) -> list[RankPoint]:
    g, f = shape
    rng = _rng(seed, g, f, v, 7)
    P, Q = _random_factors(rng, count, g, f, v)
    return [RankPoint(IntMatrix.from_dense(P[k].tolist(), g, v), IntMatrix.from_dense(Q[k].tolist(), v, f))
            for k in range(count)]


def _evaluate_monomials(X: np.ndarray, mons: np.ndarray, d: int) -> np.ndarray:
    """Rows: points (rows of X); columns: monomials given as index tuples."""
    npts = X.shape[0]
    if d == 0:
        return np.ones((npts, 1), dtype=np.int64)
    bound = int(np.abs(X).max()) if X.size else 0
    dtype = np.int64 if bound ** d < 2**62 else object
    Xd = X.astype(dtype)
    out = np.ones((npts, mons.shape[0]), dtype=dtype)
    for k in range(d):
        out = out * Xd[:, mons[:, k]]
    return out


@dataclass
class HilbertResult:
    dim: int
    samples_used: int
    method: str  # "evaluation" or "exact"
    batches: int = 0

    def to_json(self) -> dict:
        return {"dim": self.dim, "samples_used": self.samples_used, "method": self.method}


STABLE_BATCHES = 3


def hilbert_evaluation(shape: tuple[int, int], v: int, d: int, seed: int = 0) -> HilbertResult:
    """dim K[Y_v]_d as the exact rank of a monomial evaluation matrix.

    Batches of max(2 * #monomials, 50) points are added until the rank has
    not moved for three consecutive batches (or is already full). The mod-p
    rank steers the loop; the final rank is certified over Q.
    """
    if d < 0:
        raise ValueError("degree must be >= 0")
    g, f = shape
    N = g * f
    combos = list(combinations_with_replacement(range(N), d))
    mons = np.array(combos, dtype=np.int64).reshape(len(combos), d)
    nmon = len(combos)
    batch = max(2 * nmon, 50)
    rng = _rng(seed, g, f, v, d)
    ech = ModpEchelon(nmon)
    blocks = []
    stable = 0
    last_rank = -1
    reached_at = 0
    while True:
        P, Q = _random_factors(rng, batch, g, f, v)
        X = np.einsum("kic,kcj->kij", P, Q).reshape(batch, N)
        E = _evaluate_monomials(X, mons, d)
        blocks.append(E)
        rank = ech.add_rows(E)
        if rank > last_rank:
            last_rank = rank
            reached_at = len(blocks)
            stable = 0
        else:
            stable += 1
        if rank == nmon or stable >= STABLE_BATCHES:
            break
    head = np.vstack(blocks[:reached_at])
    rr = certified_rref(head, hint=ech.hint())
    if len(blocks) > reached_at:
        full = np.vstack(blocks)
        Y = _integer_kernel_columns(rr.pivots, rr.free, rr.free_part, nmon)
        if not _int_matmul_is_zero(full, Y):
            rr = certified_rref(full)
    return HilbertResult(rr.rank, batch * len(blocks), "evaluation", len(blocks))


def hilbert_dim(shape: tuple[int, int], v: int, d: int, seed: int = 0) -> int:
    return hilbert_evaluation(shape, v, d, seed).dim


def hilbert_exact_result(shape, v: int, d: int) -> HilbertResult:
    return HilbertResult(hilbert_dim_exact(shape, v, d), 0, "exact")


# --------------------------------------------------------------- comorphism


@dataclass(frozen=True)
class PiSharp:
    """x_ij -> sum_c a_ic b_cj, from K[Hom(V, W)] to K[Hom(E, W) x Hom(V, E)]."""

    m: int
    n: int
    r: int

    @property
    def source(self) -> PolyRing:
        return matrix_ring("x", self.m, self.n)

    @property
    def target(self) -> PolyRing:
        return product_ring(self.m, self.n, self.r)

    def images(self) -> list[Poly]:
        T = self.target
        m, n, r = self.m, self.n, self.r
        out = []
        for i in range(m):
            for j in range(n):
                p = T.zero()
                for c in range(r):
                    p = p + T.gen(i * r + c) * T.gen(m * r + c * n + j)
                out.append(p)
        return out

    def __call__(self, p: Poly) -> Poly:
        if p.ring != self.source:
            raise ValueError("polynomial is not in the x-variables of the right shape")
        return p.substitute(self.images(), self.target)


def product_ring(m: int, n: int, r: int) -> PolyRing:
    """a[i][c] (m x r) followed by b[c][j] (r x n)."""
    return PolyRing(matrix_ring("a", m, r).names + matrix_ring("b", r, n).names)


def pi_sharp(m: int, n: int, r: int) -> PiSharp:
    if min(m, n, r) < 1:
        raise ValueError("m, n, r must be >= 1")
    return PiSharp(m, n, r)


def rank_witness(m: int, n: int, r: int, s: int, t: int) -> tuple[IntMatrix, IntMatrix]:
    """Block identities A (m x r, rank s) and B (r x n, rank t); rank AB = min(s, t)."""
    if min(m, n, r, s, t) < 0 or s > min(m, r) or t > min(n, r):
        raise ConstraintViolation(f"need s <= m, r and t <= n, r; got {(m, n, r, s, t)}")
    A = IntMatrix(m, r, [(i, i, 1) for i in range(s)])
    B = IntMatrix(r, n, [(i, i, 1) for i in range(t)])
    u = min(s, t)
    if rank_over(A) != s or rank_over(B) != t or rank_over(A @ B) != u:
        raise AssertionError("block identity ranks are off")
    return A, B


# --------------------------------------------------------------- membership


MEMBERSHIP_POINTS = 30


def membership_modulo_ideal(p: Poly, spec: MinorIdealSpec, d: int, seed: int = 0) -> bool:
    """Is p in the degree-d slice of the ideal? Decided by row reduction and
    cross-checked by vanishing at random points of Y_v."""
    if p.ring != spec.ring:
        raise ValueError("polynomial ring does not match the ideal")
    if not p.is_homogeneous(d):
        raise ValueError(f"polynomial is not homogeneous of degree {d}")
    exact = ideal_degree_span(spec, d).contains(p)
    pts = sample_rank_points(spec.shape, spec.v, MEMBERSHIP_POINTS, seed)
    vanishes = all(p.evaluate(pt.values()) == 0 for pt in pts)
    if exact != vanishes:
        raise OracleDisagreement(f"row reduction says {exact}, evaluation says {vanishes}")
    return exact


def integer_rows(vectors: list[list[Fraction]]) -> np.ndarray:
    """Clear denominators row by row (row space unchanged)."""
    out = []
    for v in vectors:
        den = 1
        for x in v:
            if x:
                den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in v])
    arr = np.array(out, dtype=object)
    if arr.size and max(abs(int(x)) for x in arr.ravel()) < 2**62:
        arr = arr.astype(np.int64)
    return arr


__all__ = [
    "ConstraintViolation", "GradedPiece", "HilbertResult", "MinorIdealSpec", "OracleDisagreement",
    "PiSharp", "Poly", "PolyRing", "RankPoint", "determinant", "grlex_key", "hilbert_dim",
    "hilbert_dim_exact", "hilbert_evaluation", "hilbert_exact_result", "ideal_degree_span",
    "integer_rows", "matrix_ring", "membership_modulo_ideal", "minors", "pi_sharp",
    "product_ring", "rank_witness", "sample_rank_points",
]
