"""GL_r-invariants on products of determinantal varieties, over Q.

X = Y_s(E, W) x Y_t(V, E) with A = (a_ic) an m x r matrix of rank <= s and
B = (b_cj) an r x n matrix of rank <= t. GL_r acts by (A, B) -> (A g^-1, g B).
Its Lie algebra acts by the polarization operators

    D_ab f = - sum_i a_ia df/da_ib + sum_j b_bj df/db_aj

and in characteristic 0 the invariants of the connected group GL_r are the
joint kernel of these derivations. Everything is computed one bidegree at a
time: K[X]_(d1,d2) = K[Y_s]_d1 (x) K[Y_t]_d2, each factor represented by the
standard monomials left over after row reducing the minor ideal.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np
import sympy

from .detinv import (ConstraintViolation, GradedPiece, OracleDisagreement, Poly, PolyRing,
                     hilbert_dim, ideal_degree_span, integer_rows, matrix_ring, minors, pi_sharp,
                     product_ring)
from .exactlin import certified_rref
from .exactlin.rational import _int_matmul_is_zero

SIZE_LIMIT = 5000


class IdealNotStable(RuntimeError):
    """A polarization operator moved the minor ideal outside itself: a bug."""


class SizeGuard(ValueError):
    pass


@dataclass(frozen=True)
class ActionSpec:
    m: int
    n: int
    r: int
    s: int
    t: int

    def __post_init__(self):
        if min(self.m, self.n, self.r, self.s, self.t) < 0:
            raise ConstraintViolation("all of m, n, r, s, t must be >= 0")
        if self.s > min(self.m, self.r) or self.t > min(self.n, self.r):
            raise ConstraintViolation(f"need s <= m, r and t <= n, r; got {self.as_tuple()}")

    @property
    def u(self) -> int:
        return min(self.s, self.t)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.m, self.n, self.r, self.s, self.t)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "r": self.r, "s": self.s, "t": self.t, "u": self.u}


# ------------------------------------------------------------ the two sides


@lru_cache(maxsize=None)
def _side_piece(spec: ActionSpec, side: str, d: int) -> GradedPiece:
    if side == "A":
        ideal = minors((spec.m, spec.r), spec.s + 1, prefix="a")
    else:
        ideal = minors((spec.r, spec.n), spec.t + 1, prefix="b")
    return ideal_degree_span(ideal, d)


def _derive(spec: ActionSpec, side: str, a: int, b: int, p: Poly) -> Poly:
    """The A-part or the B-part of D_ab (0-based a, b) on a one-sided polynomial."""
    ring = p.ring
    out = ring.zero()
    if side == "A":
        r = spec.r
        for i in range(spec.m):
            dp = p.diff(i * r + b)
            if not dp.is_zero():
                out = out - ring.gen(i * r + a) * dp
    else:
        n = spec.n
        for j in range(n):
            dp = p.diff(a * n + j)
            if not dp.is_zero():
                out = out + ring.gen(b * n + j) * dp
    return out


@lru_cache(maxsize=None)
def _side_operator(spec: ActionSpec, side: str, a: int, b: int, d: int) -> np.ndarray:
    """Matrix of one side of D_ab on the quotient piece, complement coordinates.

    Checks that the ideal slice is mapped into itself first.
    """
    piece = _side_piece(spec, side, d)
    for g in piece.ideal_basis():
        if not piece.contains(_derive(spec, side, a, b, g)):
            raise IdealNotStable(f"D_{a + 1}{b + 1} leaves the {side}-side ideal in degree {d}")
    comp = piece.complement
    q = len(comp)
    M = np.empty((q, q), dtype=object)
    M[:] = Fraction(0)
    for k, mono in enumerate(comp):
        col = piece.normal_form(_derive(spec, side, a, b, Poly(piece.ring, {mono: 1})))
        for i, x in enumerate(col):
            M[i, k] = x
    return M


@dataclass
class BidegreePiece:
    """K[X]_(d1,d2) in the basis (standard A-monomial) x (standard B-monomial)."""

    spec: ActionSpec
    d1: int
    d2: int

    def __post_init__(self):
        full = self.full_dim
        if full > SIZE_LIMIT:
            raise SizeGuard(f"bidegree ({self.d1},{self.d2}) has {full} monomials > {SIZE_LIMIT}")
        self.A = _side_piece(self.spec, "A", self.d1)
        self.B = _side_piece(self.spec, "B", self.d2)
        self.ring = product_ring(self.spec.m, self.spec.n, self.spec.r)
        self._nf_a: dict = {}
        self._nf_b: dict = {}

    @property
    def full_dim(self) -> int:
        s = self.spec
        return comb(self.d1 + s.m * s.r - 1, self.d1) * comb(self.d2 + s.r * s.n - 1, self.d2)

    @property
    def dim(self) -> int:
        return self.A.quotient_dim * self.B.quotient_dim

    def basis(self) -> list[tuple[int, ...]]:
        return [ea + eb for ea in self.A.complement for eb in self.B.complement]

    def lift(self, vec) -> Poly:
        return Poly.from_vector(self.ring, self.basis(), vec)

    def _nf(self, piece: GradedPiece, cache: dict, e) -> list[Fraction]:
        if e not in cache:
            unit = [0] * piece.full_dim
            unit[piece.index[e]] = 1
            cache[e] = piece.normal_form(unit)
        return cache[e]

    def reduce(self, p: Poly) -> list[Fraction]:
        """Coordinates of p modulo the ideal of X; p must be of bidegree (d1, d2)."""
        if p.ring != self.ring:
            raise ValueError("polynomial is not in the a, b variables of this spec")
        k = self.spec.m * self.spec.r
        qa, qb = self.A.quotient_dim, self.B.quotient_dim
        grouped: dict = {}
        for e, c in p.terms.items():
            ea, eb = e[:k], e[k:]
            if sum(ea) != self.d1 or sum(eb) != self.d2:
                raise ValueError(f"term of bidegree {(sum(ea), sum(eb))} in piece {(self.d1, self.d2)}")
            nb = self._nf(self.B, self._nf_b, eb)
            acc = grouped.setdefault(ea, [Fraction(0)] * qb)
            for j, x in enumerate(nb):
                if x:
                    acc[j] += c * x
        out = [Fraction(0)] * (qa * qb)
        for ea, vb in grouped.items():
            na = self._nf(self.A, self._nf_a, ea)
            for i, xa in enumerate(na):
                if xa:
                    for j, xb in enumerate(vb):
                        if xb:
                            out[i * qb + j] += xa * xb
        return out


@dataclass
class PolarizationOperator:
    indices: tuple[int, int]  # 1-based (a, b)
    bidegree: tuple[int, int]
    matrix: np.ndarray  # object array of Fractions, complement coordinates
    basis: list[tuple[int, ...]]


def _check_indices(spec: ActionSpec, a: int, b: int):
    if not (1 <= a <= spec.r and 1 <= b <= spec.r):
        raise ValueError(f"operator indices must lie in 1..{spec.r}")


def polarization_matrix(spec: ActionSpec, ab: tuple[int, int], bidegree: tuple[int, int]) -> PolarizationOperator:
    a, b = ab
    _check_indices(spec, a, b)
    d1, d2 = bidegree
    piece = BidegreePiece(spec, d1, d2)
    DA = _side_operator(spec, "A", a - 1, b - 1, d1)
    DB = _side_operator(spec, "B", a - 1, b - 1, d2)
    IA = np.eye(DA.shape[0], dtype=int).astype(object)
    IB = np.eye(DB.shape[0], dtype=int).astype(object)
    M = np.kron(DA, IB) + np.kron(IA, DB)
    return PolarizationOperator((a, b), (d1, d2), M, piece.basis())


def apply_derivation(spec: ActionSpec, ab: tuple[int, int], p: Poly) -> Poly:
    """D_ab on a polynomial of the product ring, straight from the formula."""
    a, b = ab
    _check_indices(spec, a, b)
    a -= 1
    b -= 1
    m, n, r = spec.m, spec.n, spec.r
    ring = p.ring
    out = ring.zero()
    for i in range(m):
        dp = p.diff(i * r + b)
        if not dp.is_zero():
            out = out - ring.gen(i * r + a) * dp
    off = m * r
    for j in range(n):
        dp = p.diff(off + a * n + j)
        if not dp.is_zero():
            out = out + ring.gen(off + b * n + j) * dp
    return out


def trace_identity_holds(spec: ActionSpec, bidegree: tuple[int, int]) -> bool:
    """sum_a D_aa acts as (d2 - d1) on the quotient piece."""
    d1, d2 = bidegree
    ops = [polarization_matrix(spec, (a, a), bidegree).matrix for a in range(1, spec.r + 1)]
    q = ops[0].shape[0]
    total = sum(ops[1:], ops[0]) if ops else np.zeros((0, 0), dtype=object)
    target = np.eye(q, dtype=int).astype(object) * (d2 - d1)
    return bool(np.all(total == target))


@dataclass
class InvariantSpace:
    spec: ActionSpec
    bidegree: tuple[int, int]
    piece: BidegreePiece
    vectors: list[list[Fraction]]
    stacked: np.ndarray  # integer rows spanning all operator rows

    @property
    def dimension(self) -> int:
        return len(self.vectors)

    def polys(self) -> list[Poly]:
        return [self.piece.lift(v) for v in self.vectors]

    def annihilates(self, vec) -> bool:
        """Is the tensor-coordinate vector killed by every D_ab?"""
        if not self.stacked.size:
            return True
        col = integer_rows([list(vec)])
        return _int_matmul_is_zero(self.stacked, [list(col[0])])


@lru_cache(maxsize=None)
def invariant_space(spec: ActionSpec, bidegree: tuple[int, int]) -> InvariantSpace:
    d1, d2 = bidegree
    piece = BidegreePiece(spec, d1, d2)
    q = piece.dim
    rows = []
    for a in range(1, spec.r + 1):
        for b in range(1, spec.r + 1):
            M = polarization_matrix(spec, (a, b), bidegree).matrix
            rows.extend(list(M[i]) for i in range(q) if any(M[i]))
    if q == 0:
        return InvariantSpace(spec, bidegree, piece, [], np.zeros((0, 0), dtype=np.int64))
    if not rows:
        vecs = [[Fraction(int(i == j)) for i in range(q)] for j in range(q)]
        return InvariantSpace(spec, bidegree, piece, vecs, np.zeros((0, q), dtype=np.int64))
    S = integer_rows(rows)
    rr = certified_rref(S)
    return InvariantSpace(spec, bidegree, piece, rr.kernel_basis(), S)


# ------------------------------------------------------ group-element check


def default_group_elements(r: int) -> list[tuple[str, list[list[int]]]]:
    """I + E_ab for a != b and diag(1, .., 2, .., 1)."""
    out = []
    for a in range(r):
        for b in range(r):
            if a != b:
                g = [[int(i == j) for j in range(r)] for i in range(r)]
                g[a][b] = 1
                out.append((f"I+E{a + 1}{b + 1}", g))
    for a in range(r):
        g = [[int(i == j) for j in range(r)] for i in range(r)]
        g[a][a] = 2
        out.append((f"diag2@{a + 1}", g))
    return out


def act(spec: ActionSpec, g, p: Poly) -> Poly:
    """f(A g^-1, g B), by substitution."""
    m, n, r = spec.m, spec.n, spec.r
    ginv = sympy.Matrix(g).inv()
    G = [[Fraction(int(x)) for x in row] for row in g]
    Gi = [[Fraction(int(ginv[i, j].p), int(ginv[i, j].q)) for j in range(r)] for i in range(r)]
    ring = p.ring
    images = []
    for i in range(m):
        for c in range(r):
            images.append(sum((ring.gen(i * r + k) * Gi[k][c] for k in range(r)), ring.zero()))
    off = m * r
    for c in range(r):
        for j in range(n):
            images.append(sum((ring.gen(off + k * n + j) * G[c][k] for k in range(r)), ring.zero()))
    return p.substitute(images, ring)


@dataclass
class CrossCheckVerdict:
    passed: bool
    checked: int
    failures: list[tuple[int, str]] = field(default_factory=list)  # (basis index, element)

    def to_json(self) -> dict:
        return {"pass": self.passed, "checked": self.checked,
                "failures": [[i, g] for i, g in self.failures]}


def finite_group_cross_check(spec: ActionSpec, bidegree: tuple[int, int], basis: list[Poly],
                             elements=None) -> CrossCheckVerdict:
    """Is every f in ``basis`` fixed by each g, modulo the ideal of X?"""
    piece = BidegreePiece(spec, *bidegree)
    elements = elements if elements is not None else default_group_elements(spec.r)
    failures = []
    for k, f in enumerate(basis):
        for label, g in elements:
            if any(piece.reduce(act(spec, g, f) - f)):
                failures.append((k, label))
    return CrossCheckVerdict(not failures, len(basis) * len(elements), failures)


# ----------------------------------------------------------------- FFT check


@dataclass
class DegreeResult:
    d: int
    dim_Y: int
    dim_Y_exact: int
    dim_inv: int
    injective: bool
    image_invariant: bool

    @property
    def passed(self) -> bool:
        return self.dim_Y == self.dim_inv and self.injective and self.image_invariant

    def to_json(self) -> dict:
        return {"d": self.d, "dim_Y": self.dim_Y, "dim_Y_exact": self.dim_Y_exact,
                "dim_inv": self.dim_inv, "injective": self.injective,
                "image_invariant": self.image_invariant, "pass": self.passed}


@dataclass
class FFTReport:
    spec: ActionSpec
    d_max: int
    per_degree: list[DegreeResult]

    @property
    def overall(self) -> bool:
        return all(r.passed for r in self.per_degree)

    def dims(self) -> tuple[list[int], list[int]]:
        return [r.dim_Y for r in self.per_degree], [r.dim_inv for r in self.per_degree]

    def to_json(self) -> dict:
        return {"spec": self.spec.to_json(), "d_max": self.d_max,
                "per_degree": [r.to_json() for r in self.per_degree], "overall": self.overall}


def _image_ring(spec: ActionSpec) -> PolyRing:
    return matrix_ring("x", spec.m, spec.n)


def degree_check(spec: ActionSpec, d: int, seed: int = 0) -> DegreeResult:
    m, n, u = spec.m, spec.n, spec.u
    BidegreePiece(spec, d, d)  # size guard before any work
    dim_Y = hilbert_dim((m, n), u, d, seed)
    ypiece = ideal_degree_span(minors((m, n), u + 1), d)
    if ypiece.quotient_dim != dim_Y:
        raise OracleDisagreement(
            f"dim K[Y_{u}]_{d}: evaluation {dim_Y}, row reduction {ypiece.quotient_dim}")
    inv = invariant_space(spec, (d, d))
    pis = pi_sharp(m, n, spec.r)
    ring = _image_ring(spec)
    images = [inv.piece.reduce(pis(Poly(ring, {mono: 1}))) for mono in ypiece.complement]
    if images:
        injective = certified_rref(integer_rows(images)).rank == len(images)
    else:
        injective = True
    image_invariant = all(inv.annihilates(v) for v in images)
    return DegreeResult(d, dim_Y, ypiece.quotient_dim, inv.dimension, injective, image_invariant)


def _degree_task(args):
    spec, d, seed = args
    return degree_check(spec, d, seed)


def fft_check(spec: ActionSpec, d_max: int, seed: int = 0, jobs: int = 1) -> FFTReport:
    """Degree by degree: dim K[Y_u]_d = dim K[X]^G_(d,d) and pi# injective."""
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    for d in range(d_max + 1):
        BidegreePiece(spec, d, d)
    tasks = [(spec, d, seed) for d in range(d_max + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_degree_task, tasks))
    else:
        results = [_degree_task(t) for t in tasks]
    return FFTReport(spec, d_max, results)


__all__ = [
    "ActionSpec", "BidegreePiece", "CrossCheckVerdict", "DegreeResult", "FFTReport",
    "IdealNotStable", "InvariantSpace", "PolarizationOperator", "SIZE_LIMIT", "SizeGuard", "act",
    "apply_derivation", "default_group_elements", "degree_check", "fft_check",
    "finite_group_cross_check", "invariant_space", "polarization_matrix", "trace_identity_holds",
]
