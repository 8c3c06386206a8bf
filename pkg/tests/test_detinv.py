from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfinv.detinv import (ConstraintViolation, Poly, PolyRing, determinant, hilbert_dim,
                            hilbert_dim_exact, hilbert_evaluation, ideal_degree_span, matrix_ring,
                            membership_modulo_ideal, minors, pi_sharp, product_ring, rank_witness,
                            sample_rank_points)
from hopfinv.exactlin import rank_over


def x(ring, name):
    return ring.var(name)


# -- polynomials

R3 = PolyRing(("u", "v", "w"))


def polys(ring=R3, max_terms=4, max_deg=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_deg)] * ring.nvars),
                     st.fractions(min_value=-5, max_value=5, max_denominator=4))
    return st.lists(term, max_size=max_terms).map(lambda ts: Poly(ring, dict(ts)))


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p - p == R3.zero()


@given(polys(), polys(), st.tuples(*[st.integers(-4, 4)] * 3))
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys(), polys())
def test_diff_leibniz(p, q):
    for i in range(3):
        assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


def test_no_zero_coefficients_and_json():
    p = Poly(R3, {(1, 0, 0): 0, (0, 1, 0): Fraction(3, 2)})
    assert list(p.terms) == [(0, 1, 0)]
    assert Poly.from_json(p.to_json()) == p
    assert p.to_json()["terms"] == [[[0, 1, 0], "3/2"]]


def test_grlex_order():
    u, v = R3.gen(0), R3.gen(1)
    p = v * v + u + u * v
    assert [e for e, _ in p.sorted_terms()] == [(1, 1, 0), (0, 2, 0), (1, 0, 0)]
    assert R3.monomials(2)[:3] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]


# -- minors


def test_minor_counts():
    I = minors((2, 2), 2)
    assert len(I.generators) == 1
    R = I.ring
    assert I.generators[0] == x(R, "x[1][1]") * x(R, "x[2][2]") - x(R, "x[1][2]") * x(R, "x[2][1]")
    assert len(minors((3, 3), 2).generators) == 9
    assert len(minors((2, 3), 3).generators) == 0
    assert len(minors((3, 4), 2).generators) == comb(3, 2) * comb(4, 2)
    assert all(g.is_homogeneous(2) for g in minors((3, 4), 2).generators)


@pytest.mark.parametrize("shape,v", [((2, 2), 1), ((2, 3), 1), ((3, 3), 1), ((3, 3), 2), ((3, 2), 0)])
def test_minors_vanish_on_rank_points(shape, v):
    I = minors(shape, v + 1)
    for pt in sample_rank_points(shape, v, 10, seed=4):
        assert rank_over(pt.matrix) <= v
        assert pt.matrix == pt.P @ pt.Q
        for g in I.generators:
            assert g.evaluate(pt.values()) == 0


# -- graded pieces and Hilbert functions


def test_ideal_slices_2x2():
    I = minors((2, 2), 2)
    assert ideal_degree_span(I, 1).ideal_dim == 0
    assert ideal_degree_span(I, 2).ideal_dim == 1
    P3 = ideal_degree_span(I, 3)
    assert P3.ideal_dim == 4
    assert P3.quotient_dim == 16 == len(P3.complement)


@pytest.mark.parametrize("d,expected", [(0, 1), (1, 4), (2, 9), (3, 16)])
def test_hilbert_2x2_rank1(d, expected):
    assert hilbert_dim((2, 2), 1, d) == expected
    assert hilbert_dim_exact((2, 2), 1, d) == expected


@pytest.mark.parametrize("shape", [(1, 1), (1, 3), (2, 2), (2, 3)])
@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_hilbert_full_hom_is_polynomial_ring(shape, d):
    N = shape[0] * shape[1]
    assert hilbert_dim(shape, min(shape), d) == comb(d + N - 1, N - 1)


def test_hilbert_rank_zero():
    assert hilbert_dim((2, 3), 0, 0) == 1
    assert hilbert_dim((2, 3), 0, 2) == 0


def test_hilbert_segre_3x3():
    # rank <= 1 matrices: K[Y_1]_d = Sym^d(K^3) ⊗ Sym^d(K^3)
    assert hilbert_dim((3, 3), 1, 3) == comb(5, 2) ** 2


def test_hilbert_sampling_report_is_deterministic():
    a = hilbert_evaluation((2, 3), 1, 3, seed=11)
    b = hilbert_evaluation((2, 3), 1, 3, seed=11)
    assert a == b
    assert a.samples_used % max(2 * comb(8, 3), 50) == 0


def test_negative_degree_rejected():
    with pytest.raises(ValueError):
        hilbert_evaluation((2, 2), 1, -1)


# -- membership


def test_membership_examples():
    I = minors((2, 2), 2)
    R = I.ring
    det = I.generators[0]
    assert membership_modulo_ideal(det, I, 2)
    assert not membership_modulo_ideal(x(R, "x[1][1]"), I, 1)
    assert membership_modulo_ideal(det * x(R, "x[1][1]"), I, 3)
    assert not membership_modulo_ideal(x(R, "x[1][1]") * x(R, "x[2][2]"), I, 2)


def test_membership_requires_homogeneous():
    I = minors((2, 2), 2)
    with pytest.raises(ValueError):
        membership_modulo_ideal(I.generators[0] + I.ring.gen(0), I, 2)


# -- comorphism and rank witnesses


def test_pi_sharp_small():
    X = matrix_ring("x", 1, 1)
    T = product_ring(1, 1, 1)
    assert pi_sharp(1, 1, 1)(X.gen(0)) == T.gen(0) * T.gen(1)


def test_cauchy_binet():
    det = minors((2, 2), 2).generators[0]
    T = product_ring(2, 2, 2)
    A = [[T.gen(0), T.gen(1)], [T.gen(2), T.gen(3)]]
    B = [[T.gen(4), T.gen(5)], [T.gen(6), T.gen(7)]]
    assert pi_sharp(2, 2, 2)(det) == determinant(A) * determinant(B)


def test_rank_one_product_kills_determinant():
    det = minors((2, 2), 2).generators[0]
    assert pi_sharp(2, 2, 1)(det).is_zero()


@given(st.integers(1, 3), st.integers(1, 3))
def test_pi_sharp_doubles_bidegree(m, n):
    X = matrix_ring("x", m, n)
    ps = pi_sharp(m, n, 2)
    img = ps(X.gen(0) * X.gen(m * n - 1))
    k = m * 2
    assert all(sum(e[:k]) == 2 and sum(e[k:]) == 2 for e in img.terms)


@pytest.mark.parametrize("args,u", [((2, 2, 2, 1, 1), 1), ((3, 2, 2, 2, 2), 2), ((2, 2, 2, 2, 1), 1)])
def test_rank_witness(args, u):
    A, B = rank_witness(*args)
    m, n, r, s, t = args
    assert A.shape == (m, r) and B.shape == (r, n)
    assert rank_over(A @ B) == u


def test_rank_witness_2221_matrices():
    A, B = rank_witness(2, 2, 2, 1, 1)
    assert A.to_dense() == [[1, 0], [0, 0]] and B.to_dense() == [[1, 0], [0, 0]]


def test_rank_witness_constraints():
    with pytest.raises(ConstraintViolation):
        rank_witness(1, 2, 2, 2, 1)
    with pytest.raises(ConstraintViolation):
        rank_witness(2, 2, 1, 1, 2)
