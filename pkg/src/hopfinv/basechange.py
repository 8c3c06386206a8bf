"""Checking the base-change theorem for invariants over Z at desk scale.

Setting: R = A = Z, a comodule M free over Z, a finitely generated abelian
group V and φ: V -> M^G. The hypothesis "φ_K is an isomorphism for every
algebraically closed K" is decided over Q and over F_p for the finitely
many primes where some relevant integer matrix changes rank. Away from those
primes every rank that enters φ_K is the rank over Q, so the verdict there
equals the characteristic-0 verdict; over a finite C, invariants commute
with the flat extension F_p -> algebraic closure, so the prime field decides.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import primefactors

from .comodule import (Comodule, LinearMapOnInvariants, MapVerdict, cobar_complex, cohomology,
                       phi_over, rho)
from .exactlin import GF, QQ, BaseScalar, FpModule, Zmod, invariant_factors, tor1

JUSTIFICATION = (
    "All algebraically closed fields are replaced by Q and F_p for p in the "
    "candidate bad primes. Outside those primes the cobar differentials, the "
    "matrix of phi and the relations of V have the same rank mod p as over Q, "
    "so phi_K is bijective iff it is over Q. For a finite Hopf algebra, "
    "invariants commute with the flat extension from the prime field to its "
    "algebraic closure, so checking the prime field suffices."
)

DEFAULT_ALGEBRAS = (QQ, GF(2), GF(3), GF(5), Zmod(4), Zmod(6))


class TheoremViolation(RuntimeError):
    """Hypothesis verified everywhere but some conclusion failed: a bug."""


@dataclass
class TheoremInstance:
    phi: LinearMapOnInvariants
    sample_algebras: tuple[BaseScalar, ...] = DEFAULT_ALGEBRAS

    def __post_init__(self):
        if not self.sample_algebras:
            raise ValueError("sample_algebras must be nonempty")

    @property
    def comodule(self) -> Comodule:
        return self.phi.comodule

    @property
    def V(self) -> FpModule:
        return self.phi.source


@dataclass
class BadPrimes:
    primes: list[int]
    justification: dict[str, list[int]]  # matrix name -> its invariant factors


def candidate_bad_primes(inst: TheoremInstance) -> BadPrimes:
    """Primes dividing a nonzero invariant factor of δ⁰, δ¹, Φ or the relations of V."""
    C = cobar_complex(inst.comodule, 2)
    mats = {"delta0": C.differential(0), "delta1": C.differential(1),
            "phi": inst.phi.matrix, "V_relations": inst.V.presentation}
    just = {}
    primes: set[int] = set()
    for name, A in mats.items():
        fac = invariant_factors(A)
        just[name] = fac
        for d in fac:
            primes.update(primefactors(d))
    return BadPrimes(sorted(primes), just)


@dataclass
class FieldVerdict:
    characteristic: int
    passed: bool
    source_dim: int
    target_dim: int
    rank: int

    def to_json(self) -> dict:
        return {"characteristic": self.characteristic, "pass": self.passed,
                "source_dim": self.source_dim, "target_dim": self.target_dim,
                "rank": self.rank}


def check_hypothesis_over_field(inst: TheoremInstance, p: int) -> FieldVerdict:
    """Is φ_K : K ⊗ V -> (K ⊗ M)^G bijective for K = F_p (p prime) or Q (p = 0)?"""
    K = GF(p) if p else QQ
    v = phi_over(inst.phi, K)
    rank = v.source.dimension - v.kernel.dimension
    return FieldVerdict(p, v.bijective, v.source.dimension, v.target.dimension, rank)


@dataclass
class FlatnessVerdict:
    flat: bool
    h1: FpModule
    certificates: dict[int, FpModule]  # p -> Tor_1(F_p, H^1)

    def to_json(self) -> dict:
        return {"flat": self.flat, "h1": self.h1.to_json(),
                "tor_certificates": {str(p): t.to_json() for p, t in self.certificates.items()}}


def check_h1_flat(M: Comodule, primes) -> FlatnessVerdict:
    """H¹(G, M) is Z-flat iff torsion-free; cross-checked by Tor_1(F_p, H¹) = 0."""
    h1 = cohomology(cobar_complex(M, 2), 1)
    certs = {p: tor1(GF(p), h1) for p in sorted(primes)}
    flat = h1.is_free()
    if flat and any(not t.is_zero() for t in certs.values()):
        raise TheoremViolation("free H^1 with nonzero Tor_1")
    return FlatnessVerdict(flat, h1, certs)


@dataclass
class TorsionVerdict:
    torsion_free: bool
    witness_order: int | None = None

    def to_json(self) -> dict:
        return {"torsion_free": self.torsion_free, "witness_order": self.witness_order}


def check_v_torsion_free(V: FpModule) -> TorsionVerdict:
    """True iff V has no finite invariant factors; otherwise report the largest order."""
    if V.torsion:
        return TorsionVerdict(False, V.torsion[-1])
    return TorsionVerdict(True)


@dataclass
class PipelineReport:
    bad_primes: BadPrimes
    hypothesis: list[FieldVerdict]
    h1: FlatnessVerdict
    v_torsion: TorsionVerdict
    conclusions: list[MapVerdict]
    justification: str = JUSTIFICATION
    notes: list[str] = field(default_factory=list)

    @property
    def hypothesis_holds(self) -> bool:
        return all(h.passed for h in self.hypothesis)

    @property
    def failing_primes(self) -> list[int]:
        return [h.characteristic for h in self.hypothesis if not h.passed]

    @property
    def conclusion_holds(self) -> bool:
        return all(c.bijective for c in self.conclusions)

    @property
    def verified(self) -> bool:
        return self.hypothesis_holds and self.conclusion_holds

    def to_json(self) -> dict:
        return {
            "bad_primes": self.bad_primes.primes,
            "bad_prime_justification": self.bad_primes.justification,
            "justification": self.justification,
            "hypothesis": [h.to_json() for h in self.hypothesis],
            "hypothesis_holds": self.hypothesis_holds,
            "failing_primes": self.failing_primes,
            "h1": self.h1.to_json(),
            "v_torsion": self.v_torsion.to_json(),
            "conclusions": [dict(c.to_json(), bijective=c.bijective) for c in self.conclusions],
            "conclusion_holds": self.conclusion_holds,
            "verified": self.verified,
            "notes": self.notes,
        }


def _scalar_key(s: BaseScalar):
    order = {"Rat": 0, "Fp": 1, "IntMod": 2, "Int": 3}
    return (order[s.tag], s.modulus)


def run_pipeline(inst: TheoremInstance) -> PipelineReport:
    """Bad primes -> hypothesis over Q and F_p -> H¹ flatness -> V torsion -> φ_S per S.

    Raises TheoremViolation when the hypothesis holds at every checked
    characteristic but a consequence drawn in the proof fails.
    """
    bad = candidate_bad_primes(inst)
    hyp = [check_hypothesis_over_field(inst, p) for p in [0] + bad.primes]
    flat = check_h1_flat(inst.comodule, bad.primes)
    tors = check_v_torsion_free(inst.V)
    concl = [phi_over(inst.phi, S) for S in sorted(set(inst.sample_algebras), key=_scalar_key)]
    report = PipelineReport(bad, hyp, flat, tors, concl)
    if report.hypothesis_holds:
        if not flat.flat:
            raise TheoremViolation(f"hypothesis holds but H^1 = {flat.h1} is not flat")
        if not tors.torsion_free:
            raise TheoremViolation("hypothesis holds but V has torsion")
        failed = [str(c.scalar) for c in concl if not c.bijective]
        if failed:
            raise TheoremViolation(f"hypothesis holds but phi_S fails for S in {failed}")
        report.notes.append("hypothesis verified; every sampled phi_S is bijective")
    else:
        report.notes.append(f"hypothesis fails at characteristics {report.failing_primes}")
    return report


def h1_flat_bridge(M: Comodule, primes) -> tuple[bool, bool]:
    """(check_h1_flat verdict, 'coker ρ_{F_p} = 0 for every p in primes')."""
    flat = check_h1_flat(M, primes).flat
    surj = all(rho(GF(p), M).surjective for p in primes)
    return flat, surj


def inclusion_instance(M: Comodule, algebras=DEFAULT_ALGEBRAS) -> TheoremInstance:
    """V := M^G with φ the inclusion."""
    from .comodule import inclusion_of_invariants

    return TheoremInstance(inclusion_of_invariants(M), tuple(algebras))


__all__ = [
    "BadPrimes", "DEFAULT_ALGEBRAS", "FieldVerdict", "FlatnessVerdict", "PipelineReport",
    "TheoremInstance", "TheoremViolation", "TorsionVerdict", "candidate_bad_primes",
    "check_h1_flat", "check_hypothesis_over_field", "check_v_torsion_free", "h1_flat_bridge",
    "inclusion_instance", "run_pipeline",
]
