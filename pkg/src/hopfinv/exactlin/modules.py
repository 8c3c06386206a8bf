"""Finitely presented modules over Z and over the scalar rings Q, F_p, Z/n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .fields import fraction_columns_to_intmatrix, kernel_over_field, rank_over
from .matrix import QQ, ZZ, BaseScalar, IntMatrix, as_intmatrix
from .smith import column_hnf, integer_kernel, invariant_factors, lattice_coordinates


class NotAComplex(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FpModule:
    """coker(P: R^a -> R^b) over the scalar ring R.

    Over Z the structure is ``Z^free ⊕ ⊕ Z/d_i`` (d_i >= 2, d_i | d_{i+1});
    over Z/n it is ``⊕ Z/d_i`` with every d_i | n; over a field it is
    ``K^free``.
    """

    presentation: IntMatrix
    scalar: BaseScalar = ZZ

    @property
    def generators(self) -> int:
        return self.presentation.rows

    @cached_property
    def structure(self) -> tuple[int, tuple[int, ...]]:
        P = self.presentation
        b = P.rows
        s = self.scalar
        if s.is_field:
            return (b - rank_over(P, s.modulus), ())
        if s.tag == "IntMod":
            full = P.hstack(IntMatrix.diag([s.modulus] * b)) if b else P
            return (0, tuple(d for d in invariant_factors(full) if d != 1))
        fac = invariant_factors(P)
        return (b - len(fac), tuple(d for d in fac if d != 1))

    @property
    def free_rank(self) -> int:
        return self.structure[0]

    @property
    def torsion(self) -> tuple[int, ...]:
        return self.structure[1]

    @property
    def dimension(self) -> int:
        """Dimension over a field scalar."""
        if not self.scalar.is_field:
            raise TypeError(f"dimension undefined over {self.scalar}")
        return self.free_rank

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_free(self) -> bool:
        return not self.torsion

    def order(self) -> int | None:
        """Cardinality, or None for infinite modules."""
        s = self.scalar
        if s.tag in ("Int", "Rat") and self.free_rank:
            return None
        if s.tag == "Rat":
            return 1
        o = s.modulus ** self.free_rank if s.tag == "Fp" else 1
        for d in self.torsion:
            o *= d
        return o

    def isomorphic(self, other: "FpModule") -> bool:
        return self.scalar == other.scalar and self.structure == other.structure

    def __str__(self):
        s = self.scalar
        if s.is_field:
            return "0" if not self.free_rank else f"{s}^{self.free_rank}"
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"FpModule({self}, over {self.scalar})"

    def to_json(self) -> dict:
        return {"scalar": self.scalar.to_json(), "free_rank": self.free_rank,
                "torsion": list(self.torsion), "display": str(self)}


def free_module(k: int, scalar: BaseScalar = ZZ) -> FpModule:
    return FpModule(IntMatrix.zeros(k, 0), scalar)


def cokernel(A, scalar: BaseScalar = ZZ) -> FpModule:
    return FpModule(as_intmatrix(A), scalar)


def from_structure(free_rank: int, torsion=()) -> FpModule:
    """Z^f ⊕ ⊕ Z/d as an FpModule over Z."""
    t = list(torsion)
    P = IntMatrix.diag(t, free_rank + len(t), len(t))
    # put the free part after the torsion generators
    return FpModule(P, ZZ)


def tensor_module(M: FpModule, scalar: BaseScalar) -> FpModule:
    """S ⊗_Z M for a module over Z: same presentation, read over S."""
    if M.scalar != ZZ:
        raise TypeError("tensor_module expects a module over Z")
    return FpModule(M.presentation, scalar)


def tor1(scalar: BaseScalar, M: FpModule) -> FpModule:
    """Tor_1^Z(S, M) as an S-module, from the invariant factors of M.

    Tor_1(Z/n, Z/d) = Z/gcd(n, d); Tor_1(S, Z) = 0; Tor_1(Q, -) = 0.
    """
    if M.scalar != ZZ:
        raise TypeError("tor1 expects a module over Z")
    if scalar.tag == "Rat":
        return free_module(0, scalar)
    if scalar.tag == "Int":
        return free_module(0, ZZ)
    n = scalar.modulus
    parts = [gcd(n, d) for d in M.torsion]
    parts = [g for g in parts if g > 1]
    if scalar.tag == "Fp":
        return free_module(len(parts), scalar)
    return FpModule(IntMatrix.diag(parts), scalar)


def lattice_quotient(big, small, scalar: BaseScalar = ZZ) -> FpModule:
    """L_big / L_small for column lattices with L_small ⊆ L_big."""
    big = as_intmatrix(big)
    small = as_intmatrix(small)
    B = column_hnf(big)
    X = lattice_coordinates(B, small) if small.cols else IntMatrix.zeros(B.cols, 0)
    return FpModule(X, scalar)


def kernel_lattice_mod(A, n: int) -> IntMatrix:
    """{x in Z^k : A x ≡ 0 mod n} as a column lattice (contains n Z^k)."""
    A = as_intmatrix(A)
    r, k = A.shape
    if r == 0:
        return IntMatrix.identity(k)
    aug = A.hstack(IntMatrix.diag([n] * r))
    K = integer_kernel(aug)
    proj = K.submatrix(range(k), range(K.cols))
    return column_hnf(proj)


@dataclass(frozen=True)
class Kernel:
    """ker(A) over a scalar ring.

    ``basis`` columns generate it (a saturated lattice basis over Z, a basis
    over fields, generators over Z/n); ``module`` is its isomorphism type.
    """

    basis: IntMatrix
    module: FpModule


def kernel_basis(A, scalar: BaseScalar = ZZ) -> Kernel:
    A = as_intmatrix(A)
    k = A.cols
    if scalar.tag == "Int":
        K = integer_kernel(A)
        return Kernel(K, FpModule(IntMatrix.zeros(K.cols, 0), ZZ))
    if scalar.tag == "Rat":
        vecs = kernel_over_field(A, 0)
        K = fraction_columns_to_intmatrix(vecs, k)
        return Kernel(K, FpModule(IntMatrix.zeros(K.cols, 0), scalar))
    if scalar.tag == "Fp":
        vecs = kernel_over_field(A, scalar.modulus)
        K = IntMatrix.from_columns(vecs, k)
        return Kernel(K, FpModule(IntMatrix.zeros(K.cols, 0), scalar))
    n = scalar.modulus
    L = kernel_lattice_mod(A, n)
    module = lattice_quotient(L, IntMatrix.diag([n] * k), scalar)
    gens = [c for c in L.mod(n).columns() if any(c)]
    return Kernel(IntMatrix.from_columns(gens, k) if gens else IntMatrix.zeros(k, 0), module)


def complex_cohomology(d_in, d_out, scalar: BaseScalar = ZZ) -> FpModule:
    """ker(d_out) / im(d_in) for ``Z^a --d_in--> Z^b --d_out--> Z^c``.

    Over Z: take the saturated kernel lattice K of d_out, write the columns
    of d_in in K-coordinates, return the cokernel. Over Z/n the same is done
    with lattices containing n Z^b; over a field it is a dimension count.
    """
    d_in = as_intmatrix(d_in)
    d_out = as_intmatrix(d_out)
    if d_in.rows != d_out.cols:
        raise DimensionMismatch(f"d_in is {d_in.shape}, d_out is {d_out.shape}")
    if not (d_out @ d_in).mod(scalar.modulus).is_zero():
        raise NotAComplex("d_out @ d_in != 0")
    b = d_in.rows
    if scalar.is_field:
        p = scalar.modulus
        dim = b - rank_over(d_out, p) - rank_over(d_in, p)
        return free_module(dim, scalar)
    if scalar.tag == "Int":
        K = integer_kernel(d_out)
        X = lattice_coordinates(K, d_in) if d_in.cols else IntMatrix.zeros(K.cols, 0)
        return FpModule(X, ZZ)
    n = scalar.modulus
    K = kernel_lattice_mod(d_out, n)
    im = d_in.hstack(IntMatrix.diag([n] * b)) if b else d_in
    return lattice_quotient(K, im, scalar)


def tor1_via_resolution(scalar: BaseScalar, M: FpModule) -> FpModule:
    """Tor_1 recomputed from a complex of free Z-modules.

    With P injective presenting M and ``n`` the modulus of S, the total
    complex of (Z^a -P-> Z^b) ⊗ (Z -n-> Z) has H_1 = Tor_1(Z/n, M).
    """
    if scalar.tag in ("Rat", "Int"):
        return free_module(0, scalar)
    n = scalar.modulus
    P = column_hnf(M.presentation)  # injective, same image
    b, a = P.shape
    # degree 2: Z^a ; degree 1: Z^b ⊕ Z^a ; degree 0: Z^b
    d2 = P.vstack(IntMatrix.diag([-n] * a)) if a else IntMatrix.zeros(b, 0)
    d1 = IntMatrix.diag([n] * b).hstack(P) if b else IntMatrix.zeros(0, a)
    H = complex_cohomology(d2, d1, ZZ)
    if scalar.tag == "Fp":
        return free_module(len(H.torsion), scalar)
    return FpModule(IntMatrix.diag(list(H.torsion)), scalar)


__all__ = [
    "FpModule", "Kernel", "NotAComplex", "DimensionMismatch", "QQ", "ZZ",
    "cokernel", "complex_cohomology", "free_module", "from_structure",
    "kernel_basis", "kernel_lattice_mod", "lattice_quotient", "tensor_module",
    "tor1", "tor1_via_resolution",
]
