"""Gaussian elimination over Q (Fractions) and F_p, for small matrices."""

from __future__ import annotations

from fractions import Fraction

from .matrix import IntMatrix, as_intmatrix


def rref_fraction(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        pv = a[r][c]
        if pv != 1:
            a[r] = [x / pv for x in a[r]]
        pr = a[r]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def rref_mod(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    a = [[x % p for x in r] for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if a[i][c]), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = pow(a[r][c], -1, p)
        a[r] = [(x * inv) % p for x in a[r]]
        pr = a[r]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a[:r], pivots


def _kernel_from_rref(rref, pivots, n, one, neg):
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0 * one] * n
        v[f] = one
        for row, pc in zip(rref, pivots):
            if row[f]:
                v[pc] = neg(row[f])
        basis.append(v)
    return basis


def rank_over(A, p: int = 0) -> int:
    """Rank over Q (p == 0) or F_p."""
    A = as_intmatrix(A)
    if A.is_zero():
        return 0
    if p:
        return len(rref_mod(A.to_dense(), p)[1])
    return len(rref_fraction(A.to_dense())[1])


def kernel_over_field(A, p: int = 0) -> list[list]:
    """Basis of the right kernel over Q (Fraction vectors) or F_p (ints)."""
    A = as_intmatrix(A)
    n = A.cols
    if A.rows == 0 or A.is_zero():
        one = 1 if p else Fraction(1)
        return [[one if i == j else 0 * one for i in range(n)] for j in range(n)]
    if p:
        rref, piv = rref_mod(A.to_dense(), p)
        return _kernel_from_rref(rref, piv, n, 1, lambda x: (-x) % p)
    rref, piv = rref_fraction(A.to_dense())
    return _kernel_from_rref(rref, piv, n, Fraction(1), lambda x: -x)


def primitive_integer_vector(v: list[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector."""
    from math import gcd, lcm

    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g > 1:
        w = [x // g for x in w]
    return w


def fraction_columns_to_intmatrix(vecs: list[list[Fraction]], n: int) -> IntMatrix:
    return IntMatrix.from_columns([primitive_integer_vector(v) for v in vecs], n)
