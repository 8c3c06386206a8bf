import pytest

from hopfinv.basechange import (TheoremInstance, candidate_bad_primes,
                                check_h1_flat, check_hypothesis_over_field, check_v_torsion_free,
                                h1_flat_bridge, inclusion_instance, run_pipeline)
from hopfinv.comodule import LinearMapOnInvariants, NotInvariant, grouplike_comodule
from hopfinv.corpus import generate_corpus, sign_entry, swap_entry
from hopfinv.exactlin import IntMatrix, free_module, from_structure
from hopfinv.hopf import mu_n


def sign_instance():
    M = sign_entry().comodule()
    return TheoremInstance(LinearMapOnInvariants(free_module(0), M, IntMatrix.zeros(1, 0)))


def swap_instance():
    M = swap_entry().comodule()
    return TheoremInstance(LinearMapOnInvariants(free_module(1), M, IntMatrix.from_dense([[1], [1]])))


def test_bad_primes_sign():
    bp = candidate_bad_primes(sign_instance())
    assert bp.primes == [2]
    assert bp.justification["delta0"] == [2]


def test_bad_primes_mu3_character_empty():
    # δ^0 of a nontrivial character of mu_3 is unimodular, so no prime is singled out
    bp = candidate_bad_primes(inclusion_instance(grouplike_comodule(mu_n(3), 1)))
    assert bp.primes == []


def test_hypothesis_sign():
    inst = sign_instance()
    assert check_hypothesis_over_field(inst, 0).passed
    v = check_hypothesis_over_field(inst, 2)
    assert not v.passed and v.source_dim == 0 and v.target_dim == 1


def test_pipeline_sign_negative():
    rep = run_pipeline(sign_instance())
    assert not rep.hypothesis_holds
    assert rep.failing_primes == [2]
    bij = {str(c.scalar): c.bijective for c in rep.conclusions}
    assert bij["F2"] is False and bij["Q"] is True and bij["F3"] is True
    assert not rep.h1.flat


def test_pipeline_swap_positive():
    rep = run_pipeline(swap_instance())
    assert rep.verified
    assert rep.bad_primes.primes == []
    assert rep.h1.flat


def test_phi_must_land_in_invariants():
    M = swap_entry().comodule()
    with pytest.raises(NotInvariant):
        LinearMapOnInvariants(free_module(1), M, IntMatrix.from_dense([[1], [0]]))


def test_torsion_source_fails_hypothesis():
    # V = Z/2 -> 0: bijective over Q (0 -> 0), but the zero map F2 -> F2 over F2
    M = sign_entry().comodule()
    inst = TheoremInstance(LinearMapOnInvariants(from_structure(0, [2]), M, IntMatrix.zeros(1, 1)))
    rep = run_pipeline(inst)
    assert rep.failing_primes == [2]
    assert not check_v_torsion_free(inst.V).torsion_free


def test_h1_flat_certificates():
    v = check_h1_flat(sign_entry().comodule(), [2, 3])
    assert not v.flat
    assert v.certificates[2].dimension == 1 and v.certificates[3].dimension == 0


def test_corpus_pipeline_consistent():
    for e in generate_corpus(5, per_group=4):
        M = e.comodule()
        rep = run_pipeline(inclusion_instance(M))  # never raises TheoremViolation
        if rep.hypothesis_holds:
            assert rep.conclusion_holds
        flat, surj = h1_flat_bridge(M, rep.bad_primes.primes)
        assert flat == surj

