"""Smith and Hermite normal forms over Z, and lattices built on them."""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import IntMatrix, as_intmatrix


@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with U, V unimodular and D diagonal."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        k = min(self.D.shape)
        d = [0] * k
        for i, j, v in self.D.entries:
            d[i] = v
        return d

    @property
    def invariant_factors(self) -> list[int]:
        """The nonzero diagonal entries."""
        return [d for d in self.diagonal if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _snf_dense(a: list[list[int]], want_u: bool, want_v: bool):
    """In-place Smith reduction of a dense list-of-lists.

    Pivot is the entry of minimal absolute value in the active block, which
    keeps intermediate entries small on the matrices met here.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if want_u else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if want_v else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if U is not None:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        if V is not None:
            for row in V:
                row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        rs, rd = a[src], a[dst]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        if U is not None:
            us, ud = U[src], U[dst]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def add_col(dst, src, q):
        # col_dst -= q * col_src
        for row in a:
            if row[src]:
                row[dst] -= q * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        # minimal nonzero pivot in the active block
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i0, j0 = best
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)

        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // p
                    add_row(i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // p
                    add_col(j, t, q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder appeared in row/col t; move it to the pivot
                best = None
                for i in range(t, m):
                    v = a[i][t]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, t)
                for j in range(t + 1, n):
                    v = a[t][j]
                    if v and abs(v) < best[0]:
                        best = (abs(v), t, j)
                _, i0, j0 = best
                if i0 != t:
                    swap_rows(t, i0)
                if j0 != t:
                    swap_cols(t, j0)
                continue
            # row and column clear: enforce divisibility on the rest
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    return a, U, V


def smith_normal_form(A) -> SmithForm:
    """Smith normal form with unimodular transforms, ``U A V = D``.

    Empty matrices are allowed and give empty transforms.
    """
    A = as_intmatrix(A)
    m, n = A.shape
    if m == 0 or n == 0:
        return SmithForm(IntMatrix.identity(m), IntMatrix.zeros(m, n), IntMatrix.identity(n))
    d, U, V = _snf_dense(A.to_dense(), True, True)
    return SmithForm(IntMatrix.from_dense(U, m, m), IntMatrix.from_dense(d, m, n),
                     IntMatrix.from_dense(V, n, n))


def invariant_factors(A) -> list[int]:
    """Nonzero invariant factors, no transforms tracked."""
    A = as_intmatrix(A)
    m, n = A.shape
    if m == 0 or n == 0 or A.is_zero():
        return []
    d, _, _ = _snf_dense(A.to_dense(), False, False)
    return [d[i][i] for i in range(min(m, n)) if d[i][i]]


def integer_rank(A) -> int:
    return len(invariant_factors(A))


# Hermite form / lattices ----------------------------------------------------


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def column_hnf(A) -> IntMatrix:
    """Column Hermite normal form: a canonical basis of the column lattice.

    Returns an ``rows x rank`` matrix whose column k has its leading
    (topmost) nonzero entry, positive, in row ``pivot_k`` with pivots
    strictly increasing; entries to the left of a pivot in its row are
    reduced into ``[0, pivot)``. Two matrices span the same lattice iff
    their column HNFs are equal.
    """
    A = as_intmatrix(A)
    rows = A.rows
    cols = [c for c in A.columns() if any(c)]
    basis: list[list[int]] = []
    pivots: list[int] = []
    k = 0  # number of finished basis columns
    for i in range(rows):
        live = [c for c in cols if c[i]]
        if not live:
            continue
        rest = [c for c in cols if not c[i]]
        # gcd-combine the live columns at row i
        g = live[0]
        others = []
        for c in live[1:]:
            a, b = g[i], c[i]
            d, x, y = _xgcd(a, b)
            ad, bd = a // d, b // d
            new_g = [x * u + y * v for u, v in zip(g, c)]
            new_c = [-bd * u + ad * v for u, v in zip(g, c)]
            g = new_g
            if any(new_c):
                others.append(new_c)
        if g[i] < 0:
            g = [-v for v in g]
        basis.append(g)
        pivots.append(i)
        k += 1
        cols = rest + [c for c in others if any(c)]
    # reduce left entries in pivot rows
    for j in range(len(basis)):
        p = pivots[j]
        pv = basis[j][p]
        for l in range(j):
            q = basis[l][p] // pv
            if q:
                basis[l] = [u - q * v for u, v in zip(basis[l], basis[j])]
    return IntMatrix.from_columns(basis, rows)


def _pivot_rows(B: IntMatrix) -> list[int]:
    piv = []
    for col in B.columns():
        piv.append(next(i for i, v in enumerate(col) if v))
    return piv


def solve_in_lattice(B: IntMatrix, y) -> list[int] | None:
    """Integer coordinates of vector y in column-HNF basis B, or None."""
    y = list(y)
    coords = []
    for col, p in zip(B.columns(), _pivot_rows(B)):
        if y[p] % col[p]:
            return None
        q = y[p] // col[p]
        coords.append(q)
        if q:
            y = [u - q * v for u, v in zip(y, col)]
    if any(y):
        return None
    return coords


def lattice_coordinates(B: IntMatrix, gens: IntMatrix) -> IntMatrix:
    """Coordinates of each column of ``gens`` in HNF basis ``B``.

    Raises ValueError if some generator is outside the lattice.
    """
    out = []
    for c in gens.columns():
        x = solve_in_lattice(B, c)
        if x is None:
            raise ValueError("generator not in lattice")
        out.append(x)
    return IntMatrix.from_columns(out, B.cols)


def lattice_contains(big, small) -> bool:
    B = column_hnf(big)
    return all(solve_in_lattice(B, c) is not None for c in as_intmatrix(small).columns())


def integer_kernel(A) -> IntMatrix:
    """Saturated Z-basis of ker(A) as columns, in column HNF.

    Row operations on the transpose are tracked: if ``U A^T V = D`` then the
    rows of U past the rank annihilate A, and since U is unimodular they
    span the full (saturated) kernel lattice.
    """
    A = as_intmatrix(A)
    m, n = A.shape
    if n == 0:
        return IntMatrix.zeros(0, 0)
    if m == 0 or A.is_zero():
        return IntMatrix.identity(n)
    d, U, _ = _snf_dense(A.T.to_dense(), True, False)
    r = sum(1 for i in range(min(n, m)) if d[i][i])
    kern = [U[i] for i in range(r, n)]
    if not kern:
        return IntMatrix.zeros(n, 0)
    return column_hnf(IntMatrix.from_columns(kern, n))
