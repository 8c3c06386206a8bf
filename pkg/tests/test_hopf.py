import numpy as np
import pytest

from hopfinv.exactlin import GF, QQ, ZZ, Zmod
from hopfinv.hopf import (BUILTIN_NAMES, HopfAlgebra, NotAGroup, UnknownHopfAlgebra, alpha_p,
                          base_change_hopf, builtin, check_group_table, constant_group, cyclic_table,
                          klein_table, mu_n, s3_table, validate_axioms)

SCALARS = (ZZ, QQ, GF(2), GF(3), GF(5), Zmod(4), Zmod(6))


def over_all_scalars(H):
    if H.scalar != ZZ:
        return [H]
    return [H] + [base_change_hopf(H, S) for S in SCALARS[1:]]


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_satisfy_axioms(name):
    for H in over_all_scalars(builtin(name)):
        rep = validate_axioms(H)
        assert rep.passed, (H.name, rep.failures)
        assert len(rep.checked) == 13


def test_mu2_structure():
    H = mu_n(2)
    # x * x = 1 and Δx = x ⊗ x
    assert list(H.product([0, 1], [0, 1])) == [1, 0]
    assert list(H.comult[:, 1]) == [0, 0, 0, 1]
    assert list(H.counit.ravel()) == [1, 1]


def test_broken_antipode_is_caught():
    H = mu_n(3)
    bad = HopfAlgebra(H.scalar, 3, H.mult, H.unit, H.comult, H.counit, np.eye(3, dtype=int), "bad")
    rep = validate_axioms(bad)
    assert not rep.passed
    assert rep.failed("left_antipode") and rep.failed("right_antipode")
    assert not rep.failed("associativity")
    assert rep.first_failure["witness"] == [1]


def test_noncommutative_multiplication_is_caught():
    H = mu_n(2)
    mult = H.mult.copy()
    mult[:, 1] = [0, 0]  # e_0 e_1 = 0 but e_1 e_0 = e_1
    rep = validate_axioms(HopfAlgebra(ZZ, 2, mult, H.unit, H.comult, H.counit, H.antipode))
    assert rep.failed("commutativity")


def test_alpha_p_only_over_its_prime_field():
    H = alpha_p(3)
    assert H.scalar == GF(3)
    assert validate_axioms(H).passed
    with pytest.raises(ValueError):
        base_change_hopf(H, GF(5))


def test_constant_group_of_s3_is_commutative_hopf():
    H = constant_group(s3_table(), "S3")
    assert validate_axioms(H).passed
    # the antipode is g -> g^{-1}, an involution
    assert np.all(H.antipode.dot(H.antipode) == np.eye(6, dtype=int))


def test_group_tables():
    assert check_group_table(cyclic_table(4)) == 0
    assert check_group_table(klein_table()) == 0
    with pytest.raises(NotAGroup):
        check_group_table([[0, 1], [1, 1]])
    with pytest.raises(NotAGroup):
        check_group_table([[0, 1], [1]])


def test_unknown_name():
    with pytest.raises(UnknownHopfAlgebra):
        builtin("const_Q8")
    with pytest.raises(UnknownHopfAlgebra):
        builtin("sl_2")


@pytest.mark.parametrize("name", ["mu_3", "const_Z2xZ2", "alpha_2"])
def test_json_roundtrip(name):
    H = builtin(name)
    H2 = HopfAlgebra.from_json(H.to_json())
    assert H2.to_json() == H.to_json()


def test_shape_mismatch_rejected():
    H = mu_n(2)
    with pytest.raises(ValueError):
        HopfAlgebra(ZZ, 2, H.mult[:, :3], H.unit, H.comult, H.counit, H.antipode)
