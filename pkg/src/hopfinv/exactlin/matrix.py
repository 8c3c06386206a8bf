"""Base rings and the sparse integer matrix type shared by every module."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import isprime


class BadScalar(ValueError):
    pass


@dataclass(frozen=True)
class BaseScalar:
    """One of the coefficient rings Z, Q, Z/n, F_p.

    ``modulus`` is 0 for Z and Q.
    """

    tag: str  # "Int" | "Rat" | "IntMod" | "Fp"
    modulus: int = 0

    def __post_init__(self):
        if self.tag in ("Int", "Rat"):
            if self.modulus != 0:
                raise BadScalar(f"{self.tag} takes no modulus")
        elif self.tag == "IntMod":
            if self.modulus < 2:
                raise BadScalar("IntMod(n) requires n >= 2")
        elif self.tag == "Fp":
            if not isprime(self.modulus):
                raise BadScalar(f"Fp({self.modulus}): modulus is not prime")
        else:
            raise BadScalar(f"unknown scalar tag {self.tag!r}")

    @property
    def is_field(self) -> bool:
        return self.tag in ("Rat", "Fp")

    @property
    def characteristic(self) -> int:
        return self.modulus

    def reduce(self, x):
        if self.modulus:
            return x % self.modulus
        return x

    def reduce_array(self, a: np.ndarray) -> np.ndarray:
        if self.modulus:
            return a % self.modulus
        return a

    @property
    def short_name(self) -> str:
        return {"Int": "z", "Rat": "q", "IntMod": f"z{self.modulus}",
                "Fp": f"f{self.modulus}"}[self.tag]

    def __str__(self):
        return {"Int": "Z", "Rat": "Q", "IntMod": f"Z/{self.modulus}",
                "Fp": f"F{self.modulus}"}[self.tag]

    def to_json(self):
        return self.short_name


ZZ = BaseScalar("Int")
QQ = BaseScalar("Rat")


def GF(p: int) -> BaseScalar:
    return BaseScalar("Fp", p)


def Zmod(n: int) -> BaseScalar:
    """Z/n; a prime n still gives the ring Z/n, not the tag Fp."""
    return BaseScalar("IntMod", n)


def parse_scalar(name: str) -> BaseScalar:
    """Parse 'z', 'q', 'f5', 'z4' (case-insensitive)."""
    s = name.strip().lower()
    if s in ("z", "int"):
        return ZZ
    if s in ("q", "rat"):
        return QQ
    try:
        if s.startswith("f"):
            return GF(int(s[1:]))
        if s.startswith("z"):
            return Zmod(int(s[1:]))
    except ValueError:
        pass
    raise BadScalar(f"cannot parse scalar {name!r}")


class MatrixError(ValueError):
    pass


class IntMatrix:
    """Immutable sparse matrix of arbitrary-precision integers.

    Storage is a row-major sorted tuple of ``(row, col, value)`` with no
    zero values, so ``==`` is structural.
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable[tuple[int, int, int]] = ()):
        if rows < 0 or cols < 0:
            raise MatrixError("negative shape")
        seen = {}
        for i, j, v in entries:
            i, j, v = int(i), int(j), int(v)
            if not (0 <= i < rows and 0 <= j < cols):
                raise MatrixError(f"index ({i}, {j}) out of range for {rows}x{cols}")
            if (i, j) in seen:
                raise MatrixError(f"duplicate entry ({i}, {j})")
            if v:
                seen[(i, j)] = v
        self.rows = rows
        self.cols = cols
        self.entries = tuple((i, j, seen[(i, j)]) for (i, j) in sorted(seen))
        self._hash = None

    # construction -----------------------------------------------------------

    @classmethod
    def from_dense(cls, data, rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        data = [list(r) for r in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise MatrixError("ragged dense matrix")
        ents = []
        for i, r in enumerate(data):
            for j, v in enumerate(r):
                if v:
                    if isinstance(v, Fraction):
                        if v.denominator != 1:
                            raise MatrixError("non-integral entry")
                        v = v.numerator
                    ents.append((i, j, int(v)))
        return cls(rows, cols, ents)

    @classmethod
    def from_array(cls, a: np.ndarray) -> "IntMatrix":
        a = np.asarray(a)
        if a.ndim != 2:
            raise MatrixError("expected a 2-d array")
        r, c = a.shape
        nz = np.argwhere(a != 0)
        return cls(r, c, ((int(i), int(j), int(a[i, j])) for i, j in nz))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, ((i, i, 1) for i in range(n)))

    @classmethod
    def diag(cls, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "IntMatrix":
        k = len(values)
        rows = k if rows is None else rows
        cols = k if cols is None else cols
        return cls(rows, cols, ((i, i, v) for i, v in enumerate(values)))

    # views --------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, j, v in self.entries:
            out[i][j] = v
        return out

    def to_array(self) -> np.ndarray:
        a = np.zeros((self.rows, self.cols), dtype=object)
        a[:, :] = 0
        for i, j, v in self.entries:
            a[i, j] = v
        return a

    def column(self, j: int) -> list[int]:
        out = [0] * self.rows
        for i, jj, v in self.entries:
            if jj == j:
                out[i] = v
        return out

    def columns(self) -> list[list[int]]:
        out = [[0] * self.rows for _ in range(self.cols)]
        for i, j, v in self.entries:
            out[j][i] = v
        return out

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        ents = ((i, j, v) for j, c in enumerate(cols) for i, v in enumerate(c) if v)
        return cls(rows, len(cols), ents)

    def __getitem__(self, key):
        i, j = key
        for ii, jj, v in self.entries:
            if ii == i and jj == j:
                return v
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(key)
        return 0

    # algebra ------------------------------------------------------------------

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, ((j, i, v) for i, j, v in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise MatrixError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for k, j, v in other.entries:
            by_row.setdefault(k, []).append((j, v))
        acc: dict[tuple[int, int], int] = {}
        for i, k, v in self.entries:
            for j, w in by_row.get(k, ()):
                acc[(i, j)] = acc.get((i, j), 0) + v * w
        return IntMatrix(self.rows, other.cols, ((i, j, v) for (i, j), v in acc.items()))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if self.shape != other.shape:
            raise MatrixError("shape mismatch in +")
        acc = {(i, j): v for i, j, v in self.entries}
        for i, j, v in other.entries:
            acc[(i, j)] = acc.get((i, j), 0) + v
        return IntMatrix(self.rows, self.cols, ((i, j, v) for (i, j), v in acc.items()))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, ((i, j, -v) for i, j, v in self.entries))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, ((i, j, c * v) for i, j, v in self.entries))

    def mod(self, n: int) -> "IntMatrix":
        """Entries reduced into [0, n); n == 0 is a no-op."""
        if not n:
            return self
        return IntMatrix(self.rows, self.cols, ((i, j, v % n) for i, j, v in self.entries))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise MatrixError("row mismatch in hstack")
        return IntMatrix(self.rows, self.cols + other.cols,
                         list(self.entries) + [(i, j + self.cols, v) for i, j, v in other.entries])

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.cols:
            raise MatrixError("col mismatch in vstack")
        return IntMatrix(self.rows + other.rows, self.cols,
                         list(self.entries) + [(i + self.rows, j, v) for i, j, v in other.entries])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        rmap = {r: k for k, r in enumerate(rows)}
        cmap = {c: k for k, c in enumerate(cols)}
        return IntMatrix(len(rows), len(cols),
                         ((rmap[i], cmap[j], v) for i, j, v in self.entries if i in rmap and j in cmap))

    def is_zero(self) -> bool:
        return not self.entries

    def max_abs(self) -> int:
        return max((abs(v) for _, _, v in self.entries), default=0)

    # identity ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self.entries))
        return self._hash

    def __repr__(self):
        if self.rows * self.cols <= 64:
            return f"IntMatrix({self.to_dense()})"
        return f"IntMatrix<{self.rows}x{self.cols}, nnz={len(self.entries)}>"

    # serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[i, j, str(v)] for i, j, v in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "IntMatrix":
        return cls(int(obj["rows"]), int(obj["cols"]),
                   ((int(i), int(j), int(v)) for i, j, v in obj["entries"]))


def as_intmatrix(a) -> IntMatrix:
    if isinstance(a, IntMatrix):
        return a
    if isinstance(a, np.ndarray):
        return IntMatrix.from_array(a)
    return IntMatrix.from_dense(a)
