"""Seeded corpus of small integral representations of Z/2, Z/3 and Z/2 x Z/2.

Representations are direct sums of integral building blocks, conjugated by a
random unimodular matrix; only those with every entry in [-2, 2] are kept.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .comodule import Comodule, action_to_coaction
from .hopf import constant_group, cyclic_table, klein_table

_ONE = [[1]]
_NEG = [[-1]]
_SWAP = [[0, 1], [1, 0]]
_ROT3 = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
_ZETA3 = [[0, -1], [1, -1]]

# generators' images for each block; block rank = matrix size
BLOCKS = {
    "Z2": [(_ONE,), (_NEG,), (_SWAP,)],
    "Z3": [(_ONE,), (_ZETA3,), (_ROT3,)],
    "Z2xZ2": [(_ONE, _ONE), (_ONE, _NEG), (_NEG, _ONE), (_NEG, _NEG),
              (_SWAP, np.eye(2, dtype=int).tolist()), (np.eye(2, dtype=int).tolist(), _SWAP),
              (_SWAP, _SWAP), (_SWAP, (-np.eye(2, dtype=int)).tolist()),
              ((-np.eye(2, dtype=int)).tolist(), _SWAP)],
}

TABLES = {"Z2": lambda: cyclic_table(2), "Z3": lambda: cyclic_table(3), "Z2xZ2": klein_table}


@dataclass
class CorpusEntry:
    group: str
    table: list[list[int]]
    reps: list[list[list[int]]]  # one matrix per group element
    label: str

    @property
    def rank(self) -> int:
        return len(self.reps[0])

    def comodule(self) -> Comodule:
        return action_to_coaction(self.table, self.reps, _hopf(self.group))


_HOPF_CACHE: dict = {}


def _hopf(group: str):
    if group not in _HOPF_CACHE:
        _HOPF_CACHE[group] = constant_group(TABLES[group](), f"const_{group}")
    return _HOPF_CACHE[group]


def _block_diag(mats):
    n = sum(len(m) for m in mats)
    out = np.zeros((n, n), dtype=object)
    k = 0
    for m in mats:
        r = len(m)
        out[k:k + r, k:k + r] = np.array(m, dtype=object)
        k += r
    return out


def _unimodular(n: int, rng: random.Random, steps: int) -> tuple[np.ndarray, np.ndarray]:
    U = np.eye(n, dtype=object)
    Uinv = np.eye(n, dtype=object)
    for _ in range(steps):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        s = rng.choice((1, -1))
        E = np.eye(n, dtype=object)
        E[i, j] = s
        Einv = np.eye(n, dtype=object)
        Einv[i, j] = -s
        U = E.dot(U)
        Uinv = Uinv.dot(Einv)
    return U, Uinv


def _element_images(group: str, gens: list[np.ndarray]) -> list[np.ndarray]:
    n = gens[0].shape[0]
    eye = np.eye(n, dtype=object)
    if group == "Z2":
        return [eye, gens[0]]
    if group == "Z3":
        return [eye, gens[0], gens[0].dot(gens[0])]
    g, h = gens
    # element 2a + b  <->  g^a h^b
    return [eye, h, g, g.dot(h)]


def random_representation(group: str, rng: random.Random, max_rank: int = 3,
                          bound: int = 2) -> CorpusEntry:
    table = TABLES[group]()
    blocks = BLOCKS[group]
    ngen = len(blocks[0])
    while True:
        chosen = []
        rank = 0
        target = rng.randint(1, max_rank)
        while rank < target:
            b = rng.choice(blocks)
            if rank + len(b[0]) > max_rank:
                continue
            chosen.append(b)
            rank += len(b[0])
        gens = [_block_diag([b[k] for b in chosen]) for k in range(ngen)]
        U, Uinv = _unimodular(rank, rng, rng.randint(0, 3))
        gens = [U.dot(g).dot(Uinv) for g in gens]
        if all(abs(int(x)) <= bound for g in gens for x in g.ravel()):
            break
    images = _element_images(group, gens)
    reps = [[[int(x) for x in row] for row in a.tolist()] for a in images]
    label = group + ":" + "+".join(
        "x".join(str(np.array(m).tolist()) for m in b) for b in chosen)
    return CorpusEntry(group, table, reps, label)


def generate_corpus(seed: int = 0, per_group: int = 20, max_rank: int = 3) -> list[CorpusEntry]:
    """``per_group`` representations for each of Z/2, Z/3, Z/2 x Z/2."""
    rng = random.Random(seed)
    out = []
    for group in ("Z2", "Z3", "Z2xZ2"):
        for _ in range(per_group):
            out.append(random_representation(group, rng, max_rank))
    return out


def sign_entry() -> CorpusEntry:
    return CorpusEntry("Z2", cyclic_table(2), [[[1]], [[-1]]], "Z2:sign")


def swap_entry() -> CorpusEntry:
    return CorpusEntry("Z2", cyclic_table(2), [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], "Z2:swap")
