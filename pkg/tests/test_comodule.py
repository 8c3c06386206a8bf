import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfinv.comodule import (Comodule, NotARepresentation, TooLarge,
                              action_to_coaction, base_change_comodule, cobar_complex,
                              cobar_differential, cohomology, group_cohomology_oracle,
                              grouplike_comodule, invariants, rho, trivial_comodule,
                              universal_coefficient_check, validate_comodule)
from hopfinv.corpus import generate_corpus, random_representation, sign_entry, swap_entry
from hopfinv.exactlin import GF, QQ, Zmod
from hopfinv.hopf import builtin, cyclic_table, mu_n

SCALARS = (QQ, GF(2), GF(3), GF(5), Zmod(4), Zmod(6))


def regular_rep_z2():
    return action_to_coaction(cyclic_table(2), [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])


def test_trivial_comodule_invariants_and_cohomology():
    M = trivial_comodule(builtin("const_Z2"))
    assert validate_comodule(M).passed
    assert str(invariants(M).module) == "Z"
    C = cobar_complex(M, 3)
    # H^1(Z/2, Z) = Hom(Z/2, Z) = 0, H^2(Z/2, Z) = Z/2
    assert cohomology(C, 1).is_zero()
    assert cohomology(C, 2).torsion == (2,)


def test_sign_representation():
    M = sign_entry().comodule()
    assert invariants(M).module.is_zero()
    assert invariants(base_change_comodule(M, GF(2))).module.dimension == 1
    C = cobar_complex(M, 3)
    assert [str(cohomology(C, i)) for i in range(3)] == ["0", "Z/2", "0"]


def test_regular_representation_is_acyclic():
    M = regular_rep_z2()
    C = cobar_complex(M, 3)
    assert str(cohomology(C, 0)) == "Z"
    assert cohomology(C, 1).is_zero() and cohomology(C, 2).is_zero()


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (4, 2)])
def test_mu_n_characters_have_no_higher_cohomology(n, k):
    # diagonalizable group schemes have vanishing higher cohomology over Z
    M = grouplike_comodule(mu_n(n), k)
    assert validate_comodule(M).passed
    C = cobar_complex(M, 3)
    assert invariants(M).module.is_zero()
    assert cohomology(C, 1).is_zero() and cohomology(C, 2).is_zero()


def test_mu_n_trivial_character():
    M = grouplike_comodule(mu_n(3), 0)
    assert str(invariants(M).module) == "Z"


def test_broken_coaction_fails_validation():
    H = builtin("const_Z2")
    M = Comodule(H, 1, np.array([[1], [1]], dtype=object) * 2)
    rep = validate_comodule(M)
    assert not rep.passed
    assert rep.failures[0]["axiom"] == "coassociativity"


def test_not_a_representation():
    with pytest.raises(NotARepresentation):
        action_to_coaction(cyclic_table(2), [[[1]], [[2]]])


@pytest.mark.parametrize("convention", ["literal", "cosimplicial"])
def test_dd_zero_both_conventions(convention):
    for e in generate_corpus(3, per_group=3):
        C = cobar_complex(e.comodule(), 3, convention)
        for n in range(2):
            assert (C.differential(n + 1) @ C.differential(n)).is_zero()


def test_literal_sign_is_global_twist():
    M = swap_entry().comodule()
    for n in range(3):
        lit = cobar_differential(M, n, "literal")
        cos = cobar_differential(M, n, "cosimplicial")
        assert np.all(lit == (-1) ** (n + 1) * cos)


def test_cobar_size_guard():
    with pytest.raises(TooLarge):
        cobar_complex(trivial_comodule(builtin("const_S3"), 3), 5)


@given(st.integers(0, 10**6), st.sampled_from(["Z2", "Z3", "Z2xZ2"]))
def test_cobar_matches_bar_oracle(seed, group):
    e = random_representation(group, random.Random(seed), max_rank=2)
    C = cobar_complex(e.comodule(), 3)
    for i in range(3):
        assert cohomology(C, i).structure == group_cohomology_oracle(e.table, e.reps, i).structure


def test_ucs_sign_over_f2():
    rep = universal_coefficient_check(sign_entry().comodule(), GF(2))
    assert rep.exact
    assert rep.invariants_tensored.dimension == 0
    assert rep.tensored_invariants.dimension == 1
    assert rep.tor.dimension == 1
    assert rep.h1.torsion == (2,)


def test_ucs_sign_over_z4_and_z6():
    M = sign_entry().comodule()
    r4 = universal_coefficient_check(M, Zmod(4))
    assert r4.tensored_invariants.torsion == (2,) and r4.tor.torsion == (2,)
    r6 = universal_coefficient_check(M, Zmod(6))
    assert r6.tensored_invariants.order() == 2


@pytest.mark.parametrize("S", SCALARS)
def test_ucs_swap_is_iso(S):
    rep = universal_coefficient_check(swap_entry().comodule(), S)
    assert rep.tor.is_zero()
    assert rho(S, swap_entry().comodule()).bijective

