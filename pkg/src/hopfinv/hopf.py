"""Finite-rank-free commutative Hopf algebras given by structure constants.

All structure maps are dense object-dtype integer matrices in a fixed basis
``e_0 .. e_{c-1}``; tensor powers use the Kronecker (lexicographic) order,
``e_i ⊗ e_j -> i*c + j``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .exactlin import ZZ, BaseScalar, GF
from .exactlin.matrix import parse_scalar


class NotAGroup(ValueError):
    pass


class UnknownHopfAlgebra(KeyError):
    pass


def _eye(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=object)
    for i in range(n):
        a[i, i] = 1
    return a


def _zeros(r: int, c: int) -> np.ndarray:
    a = np.empty((r, c), dtype=object)
    a[:, :] = 0
    return a


def kron(*mats: np.ndarray) -> np.ndarray:
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def swap_matrix(a: int, b: int) -> np.ndarray:
    """The flip V_a ⊗ V_b -> V_b ⊗ V_a."""
    P = _zeros(a * b, a * b)
    for i in range(a):
        for j in range(b):
            P[j * a + i, i * b + j] = 1
    return P


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    """A commutative Hopf algebra C, free of rank c over ``scalar``.

    ``mult`` is c x c^2 (column i*c+j holds e_i e_j), ``unit`` is c x 1,
    ``comult`` is c^2 x c, ``counit`` is 1 x c, ``antipode`` is c x c.
    """

    scalar: BaseScalar
    rank: int
    mult: np.ndarray
    unit: np.ndarray
    comult: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    name: str = ""

    def __post_init__(self):
        c = self.rank
        shapes = {"mult": (c, c * c), "unit": (c, 1), "comult": (c * c, c),
                  "counit": (1, c), "antipode": (c, c)}
        for attr, shp in shapes.items():
            a = np.asarray(getattr(self, attr), dtype=object)
            if a.shape != shp:
                raise ValueError(f"{attr} has shape {a.shape}, expected {shp}")
            object.__setattr__(self, attr, self.scalar.reduce_array(a))

    def product(self, x, y) -> np.ndarray:
        """Multiply two coordinate vectors."""
        x = np.asarray(x, dtype=object).reshape(-1, 1)
        y = np.asarray(y, dtype=object).reshape(-1, 1)
        return self.scalar.reduce_array(self.mult.dot(np.kron(x, y))).ravel()

    def to_json(self) -> dict:
        def m(a):
            return [[str(v) for v in row] for row in a.tolist()]
        c = self.rank
        mult3 = [[[str(self.mult[k, i * c + j]) for k in range(c)] for j in range(c)] for i in range(c)]
        return {"scalar": self.scalar.to_json(), "rank": c, "mult": mult3,
                "unit": [str(v) for v in self.unit.ravel()], "comult": m(self.comult),
                "counit": [str(v) for v in self.counit.ravel()], "antipode": m(self.antipode),
                "name": self.name}

    @classmethod
    def from_json(cls, obj: dict) -> "HopfAlgebra":
        scalar = parse_scalar(obj["scalar"])
        c = int(obj["rank"])
        mult = _zeros(c, c * c)
        for i in range(c):
            for j in range(c):
                for k in range(c):
                    mult[k, i * c + j] = int(obj["mult"][i][j][k])

        def m(rows, r, cc):
            a = _zeros(r, cc)
            for i in range(r):
                for j in range(cc):
                    a[i, j] = int(rows[i][j])
            return a
        unit = np.array([[int(v)] for v in obj["unit"]], dtype=object)
        counit = np.array([[int(v) for v in obj["counit"]]], dtype=object)
        return cls(scalar, c, mult, unit, m(obj["comult"], c * c, c), counit,
                   m(obj["antipode"], c, c), obj.get("name", ""))


# axioms ---------------------------------------------------------------------


@dataclass
class AxiomReport:
    passed: bool
    checked: list[str] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    @property
    def first_failure(self) -> dict | None:
        return self.failures[0] if self.failures else None

    def failed(self, axiom: str) -> bool:
        return any(f["axiom"] == axiom for f in self.failures)

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "failures": self.failures}


def _basis_tuple(index: int, c: int, arity: int) -> list[int]:
    out = []
    for _ in range(arity):
        out.append(index % c)
        index //= c
    return out[::-1]


def _compare(report: AxiomReport, name: str, lhs, rhs, scalar: BaseScalar, c: int, arity: int):
    report.checked.append(name)
    diff = scalar.reduce_array(np.asarray(lhs, dtype=object) - np.asarray(rhs, dtype=object))
    bad = np.argwhere(diff != 0)
    if bad.size:
        col = int(bad[0][1])
        report.failures.append({"axiom": name, "witness": _basis_tuple(col, c, arity)})


def validate_axioms(H: HopfAlgebra) -> AxiomReport:
    """Check every Hopf algebra axiom as an exact matrix identity.

    Each failure carries the basis tuple (input column) where the two sides
    first differ.
    """
    c, s = H.rank, H.scalar
    I = _eye(c)
    mu, u, D, e, S = H.mult, H.unit, H.comult, H.counit, H.antipode
    one = np.array([[1]], dtype=object)
    rep = AxiomReport(True)
    _compare(rep, "associativity", mu.dot(kron(mu, I)), mu.dot(kron(I, mu)), s, c, 3)
    _compare(rep, "left_unit", mu.dot(kron(u, I)), I, s, c, 1)
    _compare(rep, "right_unit", mu.dot(kron(I, u)), I, s, c, 1)
    _compare(rep, "commutativity", mu.dot(swap_matrix(c, c)), mu, s, c, 2)
    _compare(rep, "coassociativity", kron(D, I).dot(D), kron(I, D).dot(D), s, c, 1)
    _compare(rep, "left_counit", kron(e, I).dot(D), I, s, c, 1)
    _compare(rep, "right_counit", kron(I, e).dot(D), I, s, c, 1)
    # Δ(xy) = Δ(x)Δ(y): (μ⊗μ)(1⊗τ⊗1)(Δ⊗Δ)
    mid = kron(I, swap_matrix(c, c), I)
    _compare(rep, "comult_multiplicative", D.dot(mu), kron(mu, mu).dot(mid).dot(kron(D, D)), s, c, 2)
    _compare(rep, "comult_unital", D.dot(u), kron(u, u), s, c, 0)
    _compare(rep, "counit_multiplicative", e.dot(mu), kron(e, e), s, c, 2)
    _compare(rep, "counit_unital", e.dot(u), one, s, c, 0)
    ue = u.dot(e)
    _compare(rep, "left_antipode", mu.dot(kron(S, I)).dot(D), ue, s, c, 1)
    _compare(rep, "right_antipode", mu.dot(kron(I, S)).dot(D), ue, s, c, 1)
    rep.passed = not rep.failures
    return rep


# built-ins ------------------------------------------------------------------


def mu_n(n: int) -> HopfAlgebra:
    """Z[x]/(x^n - 1) with x grouplike."""
    if n < 1:
        raise ValueError("mu_n needs n >= 1")
    mult = _zeros(n, n * n)
    comult = _zeros(n * n, n)
    S = _zeros(n, n)
    for i in range(n):
        for j in range(n):
            mult[(i + j) % n, i * n + j] = 1
        comult[i * n + i, i] = 1
        S[(-i) % n, i] = 1
    unit = _zeros(n, 1)
    unit[0, 0] = 1
    counit = _zeros(1, n)
    counit[0, :] = 1
    return HopfAlgebra(ZZ, n, mult, unit, comult, counit, S, f"mu_{n}")


def check_group_table(table) -> int:
    """Validate a multiplication table; returns the identity index."""
    t = [list(map(int, r)) for r in table]
    n = len(t)
    if n == 0 or any(len(r) != n for r in t):
        raise NotAGroup("table must be a nonempty square")
    for r in t:
        for v in r:
            if not 0 <= v < n:
                raise NotAGroup(f"entry {v} out of range")
    for g in range(n):
        for h in range(n):
            for k in range(n):
                if t[t[g][h]][k] != t[g][t[h][k]]:
                    raise NotAGroup(f"associativity fails at ({g}, {h}, {k})")
    ids = [e for e in range(n) if all(t[e][g] == g and t[g][e] == g for g in range(n))]
    if not ids:
        raise NotAGroup("no identity element")
    e = ids[0]
    for g in range(n):
        if not any(t[g][h] == e for h in range(n)):
            raise NotAGroup(f"element {g} has no inverse")
    return e


def group_inverse(table, g: int, e: int) -> int:
    return next(h for h in range(len(table)) if table[g][h] == e)


def constant_group(table, name: str = "") -> HopfAlgebra:
    """Functions on a finite group: basis δ_g, Δδ_g = Σ_{hk=g} δ_h ⊗ δ_k."""
    e = check_group_table(table)
    n = len(table)
    mult = _zeros(n, n * n)
    comult = _zeros(n * n, n)
    S = _zeros(n, n)
    for g in range(n):
        mult[g, g * n + g] = 1
        S[group_inverse(table, g, e), g] = 1
        for h in range(n):
            comult[h * n + _solve_right(table, h, g), g] = 1
    unit = _zeros(n, 1)
    unit[:, 0] = 1
    counit = _zeros(1, n)
    counit[0, e] = 1
    return HopfAlgebra(ZZ, n, mult, unit, comult, counit, S, name or f"const_{n}")


def _solve_right(table, h: int, g: int) -> int:
    """The k with h k = g."""
    return next(k for k in range(len(table)) if table[h][k] == g)


def alpha_p(p: int) -> HopfAlgebra:
    """F_p[x]/(x^p) with x primitive."""
    s = GF(p)
    mult = _zeros(p, p * p)
    comult = _zeros(p * p, p)
    S = _zeros(p, p)
    for i in range(p):
        for j in range(p):
            if i + j < p:
                mult[i + j, i * p + j] = 1
        for i2 in range(i + 1):
            comult[i2 * p + (i - i2), i] = comb(i, i2) % p
        S[i, i] = (-1) ** i
    unit = _zeros(p, 1)
    unit[0, 0] = 1
    counit = _zeros(1, p)
    counit[0, 0] = 1
    return HopfAlgebra(s, p, mult, unit, comult, counit, S, f"alpha_{p}")


def base_change_hopf(H: HopfAlgebra, scalar: BaseScalar) -> HopfAlgebra:
    """Reduce all structure constants into ``scalar``."""
    if H.scalar.tag != "Int" and H.scalar != scalar:
        raise ValueError(f"cannot base change from {H.scalar} to {scalar}")
    return HopfAlgebra(scalar, H.rank, H.mult, H.unit, H.comult, H.counit, H.antipode,
                       f"{H.name}@{scalar.short_name}" if H.name else "")


# named groups ---------------------------------------------------------------


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def klein_table() -> list[list[int]]:
    """Z/2 x Z/2 with (a, b) -> 2a + b."""
    return [[g ^ h for h in range(4)] for g in range(4)]


def s3_table() -> list[list[int]]:
    from itertools import permutations

    perms = list(permutations(range(3)))
    idx = {p: i for i, p in enumerate(perms)}
    # (g h)(x) = g(h(x))
    return [[idx[tuple(g[h[x]] for x in range(3))] for h in perms] for g in perms]


GROUP_TABLES = {
    "Z2": lambda: cyclic_table(2),
    "Z3": lambda: cyclic_table(3),
    "Z4": lambda: cyclic_table(4),
    "Z2xZ2": klein_table,
    "S3": s3_table,
}


def group_table(name: str) -> list[list[int]]:
    try:
        return GROUP_TABLES[name]()
    except KeyError:
        raise UnknownHopfAlgebra(name) from None


def builtin(name: str) -> HopfAlgebra:
    """Look up 'mu_N', 'alpha_P', 'const_<group>' (Z2, Z3, Z4, Z2xZ2, S3)."""
    m = re.fullmatch(r"mu_(\d+)", name)
    if m:
        return mu_n(int(m.group(1)))
    m = re.fullmatch(r"alpha_(\d+)", name)
    if m:
        return alpha_p(int(m.group(1)))
    m = re.fullmatch(r"const_(\w+)", name)
    if m:
        return constant_group(group_table(m.group(1)), name)
    raise UnknownHopfAlgebra(name)


BUILTIN_NAMES = ("mu_1", "mu_2", "mu_3", "mu_4", "const_Z2", "const_Z3", "const_Z4",
                 "const_Z2xZ2", "const_S3", "alpha_2", "alpha_3", "alpha_5")
