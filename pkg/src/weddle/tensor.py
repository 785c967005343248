"""Order-3 tensors over the rationals and their symmetry decomposition.

A tensor T on an n-dimensional space is stored densely as faces:
``faces[k][i][j]`` is the entry T_{ijk}, i.e. row i, column j of the k-th
frontal face.  Partially symmetric tensors (T_{ijk} = T_{jik}) have
symmetric faces and are the coordinate form of a linear system of quadrics.

Four projectors split the full tensor space: full symmetrization S, the
skew projector A, and two middle projectors N1 and N2 whose images carry
the cyclic relation T_{ijk} + T_{jki} + T_{kij} = 0 together with partial
symmetry in the first two, respectively outer two, index positions.
"""

from __future__ import annotations

import json
import math
import random
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Optional, Sequence

from . import linalg
from .polycore import as_rat


class SymmetryClass(Enum):
    SYMMETRIC = "symmetric"
    SKEW = "skew"
    RESIDUAL = "residual"
    RESIDUAL1 = "residual1"
    RESIDUAL2 = "residual2"
    PARTIAL_SYM12 = "partial_sym12"


class Tensor3:
    """Dense order-3 tensor with exact rational entries."""

    __slots__ = ("dim", "faces")

    def __init__(self, faces: Sequence[Sequence[Sequence]]):
        dim = len(faces)
        if dim == 0:
            raise ValueError("tensor dimension must be positive")
        grid = tuple(
            tuple(tuple(as_rat(x) for x in row) for row in face) for face in faces
        )
        for face in grid:
            if len(face) != dim or any(len(row) != dim for row in face):
                raise ValueError("every face must be dim x dim")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "faces", grid)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("Tensor3 is immutable")

    @classmethod
    def zero(cls, dim: int) -> "Tensor3":
        z = Fraction(0)
        return cls([[[z] * dim for _ in range(dim)] for _ in range(dim)])

    @classmethod
    def basis_tensor(cls, dim: int, i: int, j: int, k: int) -> "Tensor3":
        """Elementary tensor e_i (x) e_j (x) e_k."""
        faces = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        faces[k][i][j] = Fraction(1)
        return cls(faces)

    @classmethod
    def build(cls, dim: int, fn: Callable[[int, int, int], object]) -> "Tensor3":
        return cls(
            [[[as_rat(fn(i, j, k)) for j in range(dim)] for i in range(dim)] for k in range(dim)]
        )

    def __getitem__(self, key) -> Fraction:
        i, j, k = key
        return self.faces[k][i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor3) and self.dim == other.dim and self.faces == other.faces

    def __hash__(self):
        return hash(self.faces)

    def __add__(self, other: "Tensor3") -> "Tensor3":
        if not isinstance(other, Tensor3) or other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return Tensor3.build(self.dim, lambda i, j, k: self[i, j, k] + other[i, j, k])

    def __sub__(self, other: "Tensor3") -> "Tensor3":
        return self + other.scale(-1)

    def scale(self, value) -> "Tensor3":
        c = as_rat(value)
        return Tensor3.build(self.dim, lambda i, j, k: c * self[i, j, k])

    def is_zero(self) -> bool:
        return all(x == 0 for face in self.faces for row in face for x in row)

    def entries_key(self) -> tuple:
        """Flat entry tuple, used for canonical sorting in tests and tools."""
        return tuple(x for face in self.faces for row in face for x in row)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "faces": [[[str(x) for x in row] for row in face] for face in self.faces],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Tensor3":
        if set(data) - {"dim", "faces"}:
            raise ValueError("unexpected keys in tensor record")
        t = cls(data["faces"])
        if t.dim != int(data["dim"]):
            raise ValueError("declared dim disagrees with the face data")
        return t

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def __repr__(self) -> str:
        return f"Tensor3(dim={self.dim})"


# ---- symmetry operators ----
#
# Each operator is a signed average of index rearrangements.  An entry
# (weight, p) below contributes weight * T at the index tuple permuted by p:
# for target (i, j, k), position tuple p = (1, 2, 0) reads T_{jki}.

_SIX = [
    (Fraction(1, 6), (0, 1, 2)),
    (Fraction(1, 6), (1, 2, 0)),
    (Fraction(1, 6), (2, 0, 1)),
    (Fraction(1, 6), (1, 0, 2)),
    (Fraction(1, 6), (2, 1, 0)),
    (Fraction(1, 6), (0, 2, 1)),
]

_OPERATOR_TERMS = {
    SymmetryClass.SYMMETRIC: _SIX,
    SymmetryClass.SKEW: [
        (Fraction(1, 6), (0, 1, 2)),
        (Fraction(1, 6), (1, 2, 0)),
        (Fraction(1, 6), (2, 0, 1)),
        (Fraction(-1, 6), (1, 0, 2)),
        (Fraction(-1, 6), (2, 1, 0)),
        (Fraction(-1, 6), (0, 2, 1)),
    ],
    SymmetryClass.RESIDUAL: [
        (Fraction(2, 3), (0, 1, 2)),
        (Fraction(-1, 3), (1, 2, 0)),
        (Fraction(-1, 3), (2, 0, 1)),
    ],
    SymmetryClass.RESIDUAL1: [
        (Fraction(1, 3), (0, 1, 2)),
        (Fraction(1, 3), (1, 0, 2)),
        (Fraction(-1, 3), (2, 1, 0)),
        (Fraction(-1, 3), (2, 0, 1)),
    ],
    SymmetryClass.RESIDUAL2: [
        (Fraction(1, 3), (0, 1, 2)),
        (Fraction(-1, 3), (1, 0, 2)),
        (Fraction(1, 3), (2, 1, 0)),
        (Fraction(-1, 3), (1, 2, 0)),
    ],
}


def _apply(terms, t: Tensor3) -> Tensor3:
    def entry(i: int, j: int, k: int) -> Fraction:
        idx = (i, j, k)
        total = Fraction(0)
        for weight, p in terms:
            total += weight * t[idx[p[0]], idx[p[1]], idx[p[2]]]
        return total

    return Tensor3.build(t.dim, entry)


def sym_part(t: Tensor3) -> Tensor3:
    """Full symmetrization S."""
    return _apply(_OPERATOR_TERMS[SymmetryClass.SYMMETRIC], t)


def skew_part(t: Tensor3) -> Tensor3:
    """Signed symmetrization A."""
    return _apply(_OPERATOR_TERMS[SymmetryClass.SKEW], t)


def residual_part(t: Tensor3) -> Tensor3:
    """N = Id - S - A, the projector killing both symmetrizations."""
    return _apply(_OPERATOR_TERMS[SymmetryClass.RESIDUAL], t)


def n1_part(t: Tensor3) -> Tensor3:
    """Middle projector N1 (partial symmetry in the first two positions)."""
    return _apply(_OPERATOR_TERMS[SymmetryClass.RESIDUAL1], t)


def n2_part(t: Tensor3) -> Tensor3:
    """Middle projector N2 (partial symmetry in the outer positions)."""
    return _apply(_OPERATOR_TERMS[SymmetryClass.RESIDUAL2], t)


def decompose(t: Tensor3) -> tuple:
    """Split T into (symmetric, N1, N2, skew); the four parts sum to T."""
    return sym_part(t), n1_part(t), n2_part(t), skew_part(t)


def projector_diagonal(cls: SymmetryClass, i: int, j: int, k: int) -> Fraction:
    """Coefficient of e_ijk in P(e_ijk), without building the image tensor."""
    terms = _OPERATOR_TERMS[cls]
    idx = (i, j, k)
    total = Fraction(0)
    for weight, p in terms:
        if (idx[p[0]], idx[p[1]], idx[p[2]]) == idx:
            total += weight
    return total


def projector_rank(cls: SymmetryClass, dim: int) -> Fraction:
    """Rank of the projector on the dim^3 tensor space.

    The four operators are idempotent (a property the test suite verifies
    exhaustively in small dimension), so the rank equals the exact trace.
    """
    total = Fraction(0)
    for i, j, k in product(range(dim), repeat=3):
        total += projector_diagonal(cls, i, j, k)
    if total.denominator != 1:
        raise ArithmeticError("projector trace is not an integer")
    return total


# ---- membership predicates ----

def in_class(t: Tensor3, cls: SymmetryClass) -> bool:
    for i, j, k in product(range(t.dim), repeat=3):
        v = t[i, j, k]
        if cls is SymmetryClass.SYMMETRIC:
            if v != t[j, i, k] or v != t[i, k, j]:
                return False
        elif cls is SymmetryClass.SKEW:
            if v != -t[j, i, k] or v != -t[i, k, j]:
                return False
        elif cls is SymmetryClass.PARTIAL_SYM12:
            if v != t[j, i, k]:
                return False
        else:
            if v + t[j, k, i] + t[k, i, j] != 0:
                return False
            if cls is SymmetryClass.RESIDUAL1 and v != t[j, i, k]:
                return False
            if cls is SymmetryClass.RESIDUAL2 and v != t[k, j, i]:
                return False
    return True


# ---- bases ----

def _index_triples(cls: SymmetryClass, dim: int) -> list:
    rng = range(dim)
    if cls is SymmetryClass.SYMMETRIC:
        return [(i, j, k) for i, j, k in product(rng, repeat=3) if j <= i <= k]
    if cls is SymmetryClass.SKEW:
        return [(i, j, k) for i, j, k in product(rng, repeat=3) if j > i > k]
    if cls is SymmetryClass.RESIDUAL1:
        return [(i, j, k) for i, j, k in product(rng, repeat=3) if j <= i > k]
    if cls is SymmetryClass.RESIDUAL2:
        return [(i, j, k) for i, j, k in product(rng, repeat=3) if j > i <= k]
    raise ValueError(f"no distinguished basis for {cls}")


_PROJECTOR = {
    SymmetryClass.SYMMETRIC: sym_part,
    SymmetryClass.SKEW: skew_part,
    SymmetryClass.RESIDUAL1: n1_part,
    SymmetryClass.RESIDUAL2: n2_part,
}


@lru_cache(maxsize=None)
def _basis_cached(cls: SymmetryClass, dim: int) -> tuple:
    project = _PROJECTOR[cls]
    return tuple(
        project(Tensor3.basis_tensor(dim, i, j, k)) for i, j, k in _index_triples(cls, dim)
    )


def basis(cls: SymmetryClass, dim: int) -> list:
    """Distinguished basis of the summand: projected elementary tensors
    indexed by the class's index-triple pattern, in lexicographic order."""
    return list(_basis_cached(cls, dim))


def summand_dimension(cls: SymmetryClass, dim: int) -> int:
    """Dimension of the summand inside the dim^3 tensor space."""
    n = dim - 1
    if cls is SymmetryClass.SYMMETRIC:
        return math.comb(n + 3, 3)
    if cls is SymmetryClass.SKEW:
        return math.comb(n + 1, 3)
    if cls in (SymmetryClass.RESIDUAL1, SymmetryClass.RESIDUAL2):
        return 2 * math.comb(n + 2, 3)
    if cls is SymmetryClass.RESIDUAL:
        return 4 * math.comb(n + 2, 3)
    raise ValueError(f"no dimension formula for {cls}")


# ---- restriction and extension of cyclic partially symmetric tensors ----

def _require_n1(t: Tensor3) -> None:
    if not in_class(t, SymmetryClass.RESIDUAL1):
        raise ValueError("tensor is not cyclic with partial symmetry in the first two indices")


def restrict(t: Tensor3) -> Tensor3:
    """Drop the last face and the last row/column of every remaining face."""
    _require_n1(t)
    if t.dim < 2:
        raise ValueError("nothing left after restriction")
    n = t.dim - 1
    return Tensor3([[row[:n] for row in t.faces[k][:n]] for k in range(n)])


def extend(t: Tensor3, free: Sequence[Sequence]) -> Tensor3:
    """Inverse construction to ``restrict``.

    ``free[k][j]`` supplies the new entry T_{jnk} of face k (the new last
    column/row), for k < n and j <= n; the corner entry of face k is set to
    twice ``free[k][n]`` and the new last face is then forced by the cyclic
    relation and partial symmetry.
    """
    _require_n1(t)
    n = t.dim
    grid = [[as_rat(x) for x in row] for row in free]
    if len(grid) != n or any(len(row) != n + 1 for row in grid):
        raise ValueError(f"free entries must form an {n} x {n + 1} grid")

    def entry(i: int, j: int, k: int) -> Fraction:
        if k < n:
            if i < n and j < n:
                return t[i, j, k]
            if i == n and j == n:
                return 2 * grid[k][n]
            return grid[k][j] if i == n else grid[k][i]
        # last face, forced by the relations
        if i == n and j == n:
            return Fraction(0)
        if i == n:
            return -grid[j][n]
        if j == n:
            return -grid[i][n]
        return -(grid[i][j] + grid[j][i])

    out = Tensor3.build(n + 1, entry)
    _require_n1(out)
    return out


def random_n1(dim: int, seed: Optional[int] = None, rng: Optional[random.Random] = None) -> Tensor3:
    """Random cyclic partially symmetric tensor: integer coefficients drawn
    uniformly from [-9, 9] against the distinguished N1 basis."""
    if rng is None:
        rng = random.Random(seed)
    acc = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
    for b in basis(SymmetryClass.RESIDUAL1, dim):
        c = rng.randint(-9, 9)
        if not c:
            continue
        for k in range(dim):
            for i in range(dim):
                for j in range(dim):
                    v = b.faces[k][i][j]
                    if v:
                        acc[k][i][j] += c * v
    return Tensor3(acc)


def flatten(t: Tensor3) -> list:
    """Flat coordinate vector, for exact rank computations on tensor lists."""
    return [x for face in t.faces for row in face for x in row]


def independent(tensors: Sequence[Tensor3]) -> bool:
    if not tensors:
        return True
    return linalg.rank([flatten(t) for t in tensors]) == len(tensors)
