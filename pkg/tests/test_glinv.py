from fractions import Fraction

import pytest

from hopfinv.detinv import ConstraintViolation, Poly, matrix_ring, minors, pi_sharp, product_ring
from hopfinv.glinv import (ActionSpec, BidegreePiece, SizeGuard, act, apply_derivation,
                           fft_check, finite_group_cross_check, invariant_space,
                           polarization_matrix, trace_identity_holds)

FULL = ActionSpec(2, 2, 2, 2, 2)
CUT = ActionSpec(2, 2, 2, 1, 1)


def product_entries(spec):
    T = product_ring(spec.m, spec.n, spec.r)
    return pi_sharp(spec.m, spec.n, spec.r).images(), T


def test_spec_constraints():
    assert ActionSpec(3, 2, 2, 2, 1).u == 1
    with pytest.raises(ConstraintViolation):
        ActionSpec(1, 2, 2, 2, 1)


def test_derivations_kill_product_entries():
    for spec in (FULL, ActionSpec(3, 2, 2, 2, 2), ActionSpec(2, 3, 3, 2, 3)):
        entries, _ = product_entries(spec)
        for a in range(1, spec.r + 1):
            for b in range(1, spec.r + 1):
                assert all(apply_derivation(spec, (a, b), e).is_zero() for e in entries)


def test_polarization_1x1():
    S = ActionSpec(1, 1, 1, 1, 1)
    assert polarization_matrix(S, (1, 1), (1, 1)).matrix.tolist() == [[0]]
    assert polarization_matrix(S, (1, 1), (1, 0)).matrix.tolist() == [[-1]]
    assert polarization_matrix(S, (1, 1), (0, 1)).matrix.tolist() == [[1]]


@pytest.mark.parametrize("ab", [(1, 1), (1, 2), (2, 1)])
def test_matrix_agrees_with_formula_without_ideals(ab):
    op = polarization_matrix(FULL, ab, (1, 2))
    piece = BidegreePiece(FULL, 1, 2)
    T = piece.ring
    for k, mono in enumerate(op.basis):
        image = apply_derivation(FULL, ab, Poly(T, {mono: 1}))
        assert piece.reduce(image) == list(op.matrix[:, k])


@pytest.mark.parametrize("spec", [FULL, CUT, ActionSpec(3, 2, 2, 1, 2)])
@pytest.mark.parametrize("bideg", [(1, 1), (2, 1), (1, 3), (2, 2)])
def test_trace_is_center_weight(spec, bideg):
    assert trace_identity_holds(spec, bideg)


def test_invariant_space_examples():
    S = ActionSpec(1, 1, 1, 1, 1)
    inv = invariant_space(S, (1, 1))
    T = product_ring(1, 1, 1)
    assert inv.dimension == 1 and inv.polys() == [T.gen(0) * T.gen(1)]
    inv = invariant_space(FULL, (1, 1))
    assert inv.dimension == 4
    entries, _ = product_entries(FULL)
    for e in entries:
        assert inv.annihilates(inv.piece.reduce(e))


@pytest.mark.parametrize("spec", [FULL, CUT])
def test_off_diagonal_vanishing(spec):
    for d1 in range(3):
        for d2 in range(3):
            if d1 != d2:
                assert invariant_space(spec, (d1, d2)).dimension == 0


def test_cross_check_accepts_invariants():
    for spec, bideg in ((FULL, (1, 1)), (FULL, (2, 2)), (CUT, (2, 2))):
        basis = invariant_space(spec, bideg).polys()
        v = finite_group_cross_check(spec, bideg, basis)
        assert v.passed and v.checked == len(basis) * 4


def test_cross_check_rejects_non_invariants():
    T = product_ring(2, 2, 2)
    f = T.var("a[1][1]") * T.var("b[2][1]")
    g = T.var("a[1][1]") * T.var("b[1][1]")
    v = finite_group_cross_check(FULL, (1, 1), [f, g])
    assert (0, "diag2@1") in v.failures
    assert (1, "I+E12") in v.failures
    assert (1, "diag2@1") not in v.failures  # a11 b11 -> (a11 / 2)(2 b11)


def test_group_action_scalar_example():
    S = ActionSpec(1, 1, 1, 1, 1)
    T = product_ring(1, 1, 1)
    assert act(S, [[2]], T.gen(0)) == T.gen(0) * Fraction(1, 2)
    assert act(S, [[2]], T.gen(0) * T.gen(1)) == T.gen(0) * T.gen(1)


def test_minors_of_product_vanish_on_x():
    # (u+1)-minors of AB lie in the ideal of X
    for spec in (CUT, ActionSpec(3, 3, 2, 2, 2), ActionSpec(3, 2, 3, 1, 2)):
        u = spec.u
        I = minors((spec.m, spec.n), u + 1)
        piece = BidegreePiece(spec, u + 1, u + 1)
        ps = pi_sharp(spec.m, spec.n, spec.r)
        for g in I.generators:
            assert not any(piece.reduce(ps(g)))


@pytest.mark.parametrize("spec,dmax,dims", [
    ((1, 1, 1, 1, 1), 2, [1, 1, 1]),
    ((2, 2, 2, 2, 2), 2, [1, 4, 10]),
    ((2, 2, 1, 1, 1), 2, [1, 4, 9]),
])
def test_fft_examples(spec, dmax, dims):
    rep = fft_check(ActionSpec(*spec), dmax)
    assert rep.overall
    assert rep.dims() == (dims, dims)


def test_fft_jobs_do_not_change_report():
    a = fft_check(CUT, 2, jobs=1).to_json()
    b = fft_check(CUT, 2, jobs=2).to_json()
    assert a == b


def test_size_guard():
    with pytest.raises(SizeGuard):
        BidegreePiece(ActionSpec(3, 3, 3, 3, 3), 4, 4)


def test_x_ring_names():
    assert matrix_ring("a", 1, 2).names == ("a[1][1]", "a[1][2]")
