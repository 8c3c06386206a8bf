"""Right comodules over finite Hopf algebras, their invariants and cohomology.

A comodule M of rank m over C of rank c stores its coaction ω: M -> M ⊗ C as
an (m*c) x m matrix Ω, column k = ω(e_k) in the basis e_i ⊗ c_j -> i*c + j.
M ⊗ C^{⊗n} is ordered lexicographically, matching ``np.kron``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .exactlin import (ZZ, BaseScalar, FpModule, IntMatrix, complex_cohomology, free_module,
                       integer_kernel, kernel_basis, kernel_lattice_mod, lattice_quotient, rank_over,
                       tensor_module, tor1)
from .hopf import HopfAlgebra, _eye, _zeros, base_change_hopf, check_group_table, constant_group, kron


class NotARepresentation(ValueError):
    pass


class TooLarge(ValueError):
    pass


class ExactnessFailure(RuntimeError):
    """The three computed terms of the universal coefficient sequence disagree."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


COBAR_SIZE_GUARD = 10_000


@dataclass(frozen=True, eq=False)
class Comodule:
    hopf: HopfAlgebra
    rank: int
    coaction: np.ndarray

    def __post_init__(self):
        c, m = self.hopf.rank, self.rank
        a = np.asarray(self.coaction, dtype=object)
        if a.shape != (m * c, m):
            raise ValueError(f"coaction has shape {a.shape}, expected {(m * c, m)}")
        object.__setattr__(self, "coaction", self.hopf.scalar.reduce_array(a))

    @property
    def scalar(self) -> BaseScalar:
        return self.hopf.scalar

    @property
    def coaction_matrix(self) -> IntMatrix:
        return IntMatrix.from_array(self.coaction)

    def trivial_embedding(self) -> np.ndarray:
        """ι(m) = m ⊗ 1."""
        return kron(_eye(self.rank), self.hopf.unit)

    def to_json(self) -> dict:
        return {"hopf": self.hopf.name, "rank": self.rank,
                "coaction": self.coaction_matrix.to_json()}


def trivial_comodule(H: HopfAlgebra, m: int = 1) -> Comodule:
    return Comodule(H, m, kron(_eye(m), H.unit))


def grouplike_comodule(H: HopfAlgebra, element: int) -> Comodule:
    """Rank 1, ω(e) = e ⊗ c_element (e.g. a character of mu_n)."""
    a = _zeros(H.rank, 1)
    a[element, 0] = 1
    return Comodule(H, 1, a)


@dataclass
class ComoduleReport:
    passed: bool
    failures: list[dict] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": self.failures}


def validate_comodule(M: Comodule) -> ComoduleReport:
    """Check coassociativity and counit as exact matrix identities."""
    H, m, c, s = M.hopf, M.rank, M.hopf.rank, M.scalar
    Om = M.coaction
    rep = ComoduleReport(True)
    lhs = kron(Om, _eye(c)).dot(Om)
    rhs = kron(_eye(m), H.comult).dot(Om)
    for name, a, b in (("coassociativity", lhs, rhs),
                       ("counit", kron(_eye(m), H.counit).dot(Om), _eye(m))):
        bad = np.argwhere(s.reduce_array(a - b) != 0)
        if bad.size:
            rep.failures.append({"axiom": name, "witness": int(bad[0][1])})
    rep.passed = not rep.failures
    return rep


# invariants -----------------------------------------------------------------


@dataclass(frozen=True)
class Invariants:
    """M^G with generators ``inclusion`` (columns in M) and its module type."""

    module: FpModule
    inclusion: IntMatrix


def invariance_matrix(M: Comodule) -> IntMatrix:
    """Ω - ι, whose kernel is M^G."""
    return IntMatrix.from_array(M.scalar.reduce_array(M.coaction - M.trivial_embedding()))


def invariants(M: Comodule) -> Invariants:
    """Elements with ω(m) = m ⊗ 1.

    Saturated lattice basis over Z, basis over a field, generating set (with
    the module's relations) over Z/n.
    """
    K = kernel_basis(invariance_matrix(M), M.scalar)
    return Invariants(K.module, K.basis)


def base_change_comodule(M: Comodule, scalar: BaseScalar) -> Comodule:
    if M.scalar.tag != "Int" and M.scalar != scalar:
        raise ValueError(f"cannot base change from {M.scalar} to {scalar}")
    return Comodule(base_change_hopf(M.hopf, scalar), M.rank, M.coaction)


# finite group representations -------------------------------------------------


def check_representation(table, reps) -> list[np.ndarray]:
    """Return reps as object arrays after checking ρ(g)ρ(h) = ρ(gh), ρ(e) = 1."""
    e = check_group_table(table)
    mats = [np.array(r, dtype=object) for r in reps]
    if len(mats) != len(table):
        raise NotARepresentation(f"{len(mats)} matrices for a group of order {len(table)}")
    m = mats[0].shape[0] if mats[0].ndim == 2 else 0
    for g, a in enumerate(mats):
        if a.shape != (m, m):
            raise NotARepresentation(f"matrix {g} has shape {a.shape}")
    if np.any(mats[e] != _eye(m)):
        raise NotARepresentation("identity does not act trivially")
    for g in range(len(table)):
        for h in range(len(table)):
            if np.any(mats[g].dot(mats[h]) != mats[table[g][h]]):
                raise NotARepresentation(f"rho({g}) rho({h}) != rho({g}*{h})")
    return mats


def action_to_coaction(table, reps, hopf: HopfAlgebra | None = None) -> Comodule:
    """ω(m) = Σ_g (g·m) ⊗ δ_g, a comodule over functions on the group."""
    mats = check_representation(table, reps)
    H = hopf if hopf is not None else constant_group(table)
    n, m = len(table), mats[0].shape[0]
    Om = _zeros(m * n, m)
    for g, a in enumerate(mats):
        for i in range(m):
            for k in range(m):
                Om[i * n + g, k] = a[i, k]
    return Comodule(H, m, Om)


# cobar complex ----------------------------------------------------------------


def cobar_differential(M: Comodule, n: int, convention: str = "literal") -> np.ndarray:
    """δ^n : M ⊗ C^{⊗n} -> M ⊗ C^{⊗(n+1)}.

    ``literal``: (-1)^{n+1} ω⊗1 + Σ_{i<n} (-1)^{n-i} 1⊗1^{⊗i}⊗Δ⊗1^{⊗(n-i-1)} + 1⊗1^{⊗n}⊗u.
    Coface k (k = 0 for ω, i+1 for Δ in slot i, n+1 for u) then carries
    (-1)^{n+1-k}, i.e. the alternating sum up to the global sign (-1)^{n+1},
    so δδ = 0 holds. ``cosimplicial`` is the plain Σ (-1)^k d^k.
    """
    H = M.hopf
    c, m = H.rank, M.rank
    terms = []  # (coface index, matrix)
    terms.append((0, kron(M.coaction, _eye(c ** n))))
    for i in range(n):
        terms.append((i + 1, kron(_eye(m * c ** i), H.comult, _eye(c ** (n - i - 1)))))
    terms.append((n + 1, kron(_eye(m * c ** n), H.unit)))
    out = _zeros(m * c ** (n + 1), m * c ** n)
    for k, mat in terms:
        sign = (-1) ** (n + 1 - k) if convention == "literal" else (-1) ** k
        out = out + sign * mat
    return M.scalar.reduce_array(out)


@dataclass
class CobarComplex:
    comodule: Comodule
    n_max: int
    ranks: list[int]
    differentials: list[IntMatrix]
    convention: str = "literal"

    def differential(self, n: int) -> IntMatrix:
        """δ^n, with δ^{-1} the zero map into M."""
        if n == -1:
            return IntMatrix.zeros(self.ranks[0], 0)
        return self.differentials[n]


def cobar_complex(M: Comodule, n_max: int = 2, convention: str = "literal") -> CobarComplex:
    from .exactlin import NotAComplex

    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    c, m = M.hopf.rank, M.rank
    if m * c ** n_max > COBAR_SIZE_GUARD:
        raise TooLarge(f"term of rank {m * c ** n_max} exceeds {COBAR_SIZE_GUARD}")
    ranks = [m * c ** n for n in range(n_max + 1)]
    mats = [cobar_differential(M, n, convention) for n in range(n_max)]
    for n in range(n_max - 1):
        comp = M.scalar.reduce_array(mats[n + 1].dot(mats[n]))
        if np.any(comp != 0):
            raise NotAComplex(f"delta^{n + 1} delta^{n} != 0 ({convention} convention)")
    diffs = [IntMatrix.from_array(a) for a in mats]
    return CobarComplex(M, n_max, ranks, diffs, convention)


def cohomology(C: CobarComplex, i: int) -> FpModule:
    """H^i = ker δ^i / im δ^{i-1}, over the comodule's scalar ring."""
    if not 0 <= i < C.n_max:
        raise ValueError(f"need 0 <= i < n_max = {C.n_max}")
    return complex_cohomology(C.differential(i - 1), C.differential(i), C.comodule.scalar)


# bar resolution oracle --------------------------------------------------------


def _bar_differential(table, mats, k: int) -> IntMatrix:
    """d^k : Map(G^k, M) -> Map(G^{k+1}, M) for the inhomogeneous bar complex."""
    G = len(table)
    m = mats[0].shape[0]
    src = {t: i for i, t in enumerate(itertools.product(range(G), repeat=k))}
    ents: dict[tuple[int, int], int] = {}

    def add(row_block, col_block, block):
        for a in range(m):
            for b in range(m):
                v = block[a][b]
                if v:
                    key = (row_block * m + a, col_block * m + b)
                    ents[key] = ents.get(key, 0) + v

    ident = [[int(a == b) for b in range(m)] for a in range(m)]
    for r, tup in enumerate(itertools.product(range(G), repeat=k + 1)):
        # g1 · f(g2..g_{k+1})
        add(r, src[tup[1:]], mats[tup[0]].tolist())
        for j in range(k):
            merged = tup[:j] + (table[tup[j]][tup[j + 1]],) + tup[j + 2:]
            add(r, src[merged], [[(-1) ** (j + 1) * x for x in row] for row in ident])
        add(r, src[tup[:k]], [[(-1) ** (k + 1) * x for x in row] for row in ident])
    return IntMatrix(m * G ** (k + 1), m * G ** k, ((i, j, v) for (i, j), v in ents.items()))


def group_cohomology_oracle(table, reps, i: int) -> FpModule:
    """H^i(G, M) for a finite group from explicit cochains G^i -> M."""
    if i not in (0, 1, 2):
        raise ValueError("oracle covers degrees 0, 1, 2")
    mats = check_representation(table, reps)
    m = mats[0].shape[0]
    d_out = _bar_differential(table, mats, i)
    d_in = _bar_differential(table, mats, i - 1) if i > 0 else IntMatrix.zeros(m, 0)
    return complex_cohomology(d_in, d_out, ZZ)


# maps into invariants and base change -----------------------------------------


class NotInvariant(ValueError):
    pass


@dataclass(frozen=True)
class LinearMapOnInvariants:
    """φ: V -> M^G, given on the generators of V = coker(P) by the m x b matrix Φ."""

    source: FpModule
    comodule: Comodule
    matrix: IntMatrix

    def __post_init__(self):
        if self.source.scalar != ZZ or self.comodule.scalar != ZZ:
            raise ValueError("φ is defined over Z")
        if self.matrix.shape != (self.comodule.rank, self.source.generators):
            raise ValueError(f"φ has shape {self.matrix.shape}, expected "
                             f"{(self.comodule.rank, self.source.generators)}")
        if not (self.matrix @ self.source.presentation).is_zero():
            raise ValueError("φ does not kill the relations of V")
        if not (invariance_matrix(self.comodule) @ self.matrix).is_zero():
            raise NotInvariant("image of φ is not in M^G")


def inclusion_of_invariants(M: Comodule) -> LinearMapOnInvariants:
    inv = invariants(M)
    return LinearMapOnInvariants(free_module(inv.inclusion.cols), M, inv.inclusion)


@dataclass
class MapVerdict:
    """φ_S: S ⊗ V -> (S ⊗ M)^G with its kernel and cokernel."""

    scalar: BaseScalar
    source: FpModule
    target: FpModule
    kernel: FpModule
    cokernel: FpModule

    @property
    def injective(self) -> bool:
        return self.kernel.is_zero()

    @property
    def surjective(self) -> bool:
        return self.cokernel.is_zero()

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective

    def to_json(self) -> dict:
        return {"scalar": self.scalar.to_json(), "source": self.source.to_json(),
                "target": self.target.to_json(), "kernel": self.kernel.to_json(),
                "cokernel": self.cokernel.to_json(), "injective": self.injective,
                "surjective": self.surjective}


def phi_over(phi: LinearMapOnInvariants, S: BaseScalar) -> MapVerdict:
    """The base-changed map φ_S = ρ_S ∘ (1 ⊗ φ), decided exactly."""
    M = phi.comodule
    P, Phi = phi.source.presentation, phi.matrix
    b, m = P.rows, M.rank
    MS = base_change_comodule(M, S)
    target = invariants(MS).module
    source = tensor_module(phi.source, S) if S != ZZ else phi.source
    if S.is_field:
        p = S.modulus
        r = rank_over(Phi, p)
        return MapVerdict(S, source, target, free_module(source.dimension - r, S),
                          free_module(target.dimension - r, S))
    n = S.modulus
    A = invariance_matrix(M)
    if n:
        R = kernel_lattice_mod(Phi, n)
        rel = P.hstack(IntMatrix.diag([n] * b))
        T = kernel_lattice_mod(A, n)
        img = Phi.hstack(IntMatrix.diag([n] * m))
    else:
        R = integer_kernel(Phi) if b else IntMatrix.zeros(0, 0)
        rel = P
        T = integer_kernel(A)
        img = Phi
    kernel = lattice_quotient(R, rel, S) if b else free_module(0, S)
    cokernel = lattice_quotient(T, img, S)
    return MapVerdict(S, source, target, kernel, cokernel)


def rho(S: BaseScalar, M: Comodule) -> MapVerdict:
    """ρ_S: S ⊗ M^G -> (S ⊗ M)^G, s ⊗ m -> s ⊗ m."""
    return phi_over(inclusion_of_invariants(M), S)


@dataclass
class UCSReport:
    scalar: BaseScalar
    invariants_tensored: FpModule  # S ⊗ M^G
    tensored_invariants: FpModule  # (S ⊗ M)^G
    tor: FpModule  # Tor_1(S, H^1(G, M))
    h1: FpModule
    rho: MapVerdict
    exact: bool

    def to_json(self) -> dict:
        return {"scalar": self.scalar.to_json(),
                "terms": [self.invariants_tensored.to_json(), self.tensored_invariants.to_json(),
                          self.tor.to_json()],
                "h1": self.h1.to_json(), "rho": self.rho.to_json(), "exact": self.exact,
                "sequence": f"0 -> {self.invariants_tensored} -> {self.tensored_invariants} "
                            f"-> {self.tor} -> 0"}


def _size(M: FpModule):
    """Dimension over a field, cardinality otherwise."""
    return M.dimension if M.scalar.is_field else M.order()


def universal_coefficient_check(M: Comodule, S: BaseScalar) -> UCSReport:
    """0 -> S⊗M^G -> (S⊗M)^G -> Tor_1(S, H^1(G,M)) -> 0, each term computed on its own.

    Exactness: ρ_S injective, coker ρ_S ≅ Tor_1, and the middle term has the
    size of the outer two together.
    """
    if M.scalar != ZZ:
        raise ValueError("the comodule must be defined over Z")
    inv = invariants(M)
    left = tensor_module(inv.module, S) if S != ZZ else inv.module
    middle = invariants(base_change_comodule(M, S)).module
    h1 = cohomology(cobar_complex(M, 2), 1)
    right = tor1(S, h1)
    r = rho(S, M)
    ok = r.injective and r.cokernel.isomorphic(right) and r.target.isomorphic(middle)
    if S != ZZ and ok:
        if S.is_field:
            ok = middle.dimension == left.dimension + right.dimension
        else:
            ok = middle.order() == left.order() * right.order()
    report = UCSReport(S, left, middle, right, h1, r, ok)
    if not ok:
        raise ExactnessFailure(f"sequence not exact over {S}: {report.to_json()['sequence']}", report)
    return report


__all__ = [
    "Comodule", "CobarComplex", "ComoduleReport", "ExactnessFailure", "Invariants",
    "LinearMapOnInvariants", "MapVerdict", "NotARepresentation", "NotInvariant", "TooLarge",
    "UCSReport", "action_to_coaction", "base_change_comodule", "cobar_complex",
    "cobar_differential", "cohomology", "group_cohomology_oracle", "grouplike_comodule",
    "inclusion_of_invariants", "invariance_matrix", "invariants", "phi_over", "rho",
    "trivial_comodule", "universal_coefficient_check", "validate_comodule",
]
