"""Linear systems of quadrics, their Weddle matrices and Weddle loci.

A linear system here is a list of n+1 symmetric (n+1)x(n+1) rational
matrices Q_0..Q_n, the faces of a partially symmetric order-3 tensor.  The
Weddle matrix contracts the tensor against the variable vector; its
determinant cuts out the Weddle locus, whose singular points contain every
base point of the system.  This module also builds the canonical rank-r
systems, the rank-5 closed-form identity, and rank lower-bound
certificates driven by certified singular-point counts.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

from . import linalg
from .polycore import MultiPoly, PolyMatrix, as_rat, divides, linear_form


# ---- quadrics as matrices and polynomials ----

def _check_symmetric(matrix: Sequence[Sequence], size: int) -> tuple:
    rows = tuple(tuple(as_rat(x) for x in row) for row in matrix)
    if len(rows) != size or any(len(r) != size for r in rows):
        raise ValueError(f"quadric matrix must be {size} x {size}")
    for i in range(size):
        for j in range(i + 1, size):
            if rows[i][j] != rows[j][i]:
                raise ValueError("quadric matrix must be symmetric")
    return rows


def quadric_to_poly(matrix: Sequence[Sequence]) -> MultiPoly:
    """The quadratic form x^T Q x of a symmetric matrix."""
    size = len(matrix)
    rows = _check_symmetric(matrix, size)
    terms: dict = {}
    for i in range(size):
        for j in range(i, size):
            c = rows[i][j] if i == j else 2 * rows[i][j]
            if c:
                mono = tuple((2 if a == i else 0) if i == j else (1 if a in (i, j) else 0) for a in range(size))
                terms[mono] = c
    return MultiPoly(size, terms)


def poly_to_quadric(poly: MultiPoly) -> list:
    """Symmetric matrix of a homogeneous quadratic polynomial."""
    if not (poly.is_zero() or poly.is_homogeneous(2)):
        raise ValueError("expected a homogeneous quadratic")
    n = poly.nvars
    m = [[Fraction(0)] * n for _ in range(n)]
    for mono, c in poly.terms.items():
        support = [i for i, e in enumerate(mono) if e]
        if len(support) == 1 and mono[support[0]] == 2:
            m[support[0]][support[0]] = c
        elif len(support) == 2 and all(mono[i] == 1 for i in support):
            i, j = support
            m[i][j] = m[j][i] = c / 2
        else:
            raise ValueError("expected a homogeneous quadratic")
    return m


class LinearSystem:
    """A linear system of n+1 quadrics in P^n, stored as symmetric faces."""

    __slots__ = ("n", "quadrics")

    def __init__(self, n: int, quadrics: Sequence[Sequence[Sequence]]):
        if n < 1:
            raise ValueError("ambient dimension must be at least 1")
        if len(quadrics) != n + 1:
            raise ValueError(f"expected {n + 1} quadrics for P^{n}")
        faces = tuple(_check_symmetric(q, n + 1) for q in quadrics)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "quadrics", faces)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("LinearSystem is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearSystem)
            and self.n == other.n
            and self.quadrics == other.quadrics
        )

    def __hash__(self):
        return hash((self.n, self.quadrics))

    @classmethod
    def from_tensor(cls, t) -> "LinearSystem":
        from .tensor import SymmetryClass, in_class

        if not in_class(t, SymmetryClass.PARTIAL_SYM12):
            raise ValueError("tensor is not partially symmetric in its first two indices")
        return cls(t.dim - 1, [t.faces[k] for k in range(t.dim)])

    def to_tensor(self):
        from .tensor import Tensor3

        return Tensor3(self.quadrics)

    @classmethod
    def from_polys(cls, polys: Sequence[MultiPoly]) -> "LinearSystem":
        if not polys:
            raise ValueError("empty system")
        n = polys[0].nvars - 1
        return cls(n, [poly_to_quadric(p) for p in polys])

    def quadric_polys(self) -> list:
        return [quadric_to_poly(q) for q in self.quadrics]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "quadrics": [[[str(x) for x in row] for row in q] for q in self.quadrics],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearSystem":
        if set(data) - {"n", "quadrics"}:
            raise ValueError("unexpected keys in system record")
        return cls(int(data["n"]), data["quadrics"])

    def __repr__(self) -> str:
        return f"LinearSystem(n={self.n})"


# ---- Weddle matrix and locus ----

@dataclass(frozen=True)
class WeddleData:
    matrix: PolyMatrix
    polynomial: MultiPoly
    degenerate: bool


def contraction_matrix(system: LinearSystem) -> PolyMatrix:
    """Entry (i, k) is sum_j x_j T_{ijk}: the tensor contracted with x."""
    n = system.n
    nv = n + 1
    entries = []
    for i in range(nv):
        row = []
        for k in range(nv):
            row.append(linear_form(nv, [system.quadrics[k][i][j] for j in range(nv)]))
        entries.append(row)
    return PolyMatrix(nv, entries)


def gradient_matrix(system: LinearSystem) -> PolyMatrix:
    """Entry (i, k) is the partial derivative of the k-th quadric by x_i."""
    polys = system.quadric_polys()
    nv = system.n + 1
    return PolyMatrix(nv, [[polys[k].diff(i) for k in range(nv)] for i in range(nv)])


def weddle_matrix(system: LinearSystem) -> WeddleData:
    """Contraction matrix plus its normalized determinant.

    Twice the contraction must equal the gradient matrix of the quadrics;
    that identity is recomputed on every call as an internal cross-check.
    """
    contraction = contraction_matrix(system)
    doubled = contraction.scale(2)
    if doubled != gradient_matrix(system):
        raise ArithmeticError("contraction and gradient matrices disagree")
    determinant = contraction.det()
    return WeddleData(
        matrix=contraction,
        polynomial=determinant.primitive_normalized(),
        degenerate=determinant.is_zero(),
    )


def singular_at(poly: MultiPoly, point: Sequence) -> bool:
    """Exact test that every partial derivative vanishes at the point."""
    if not poly.is_homogeneous():
        raise ValueError("polynomial must be homogeneous")
    pt = [as_rat(x) for x in point]
    if all(x == 0 for x in pt):
        raise ValueError("projective point must be nonzero")
    return all(poly.diff(i).evaluate(pt) == 0 for i in range(poly.nvars))


def is_base_point(system: LinearSystem, point: Sequence) -> bool:
    pt = [as_rat(x) for x in point]
    return all(quadric_to_poly(q).evaluate(pt) == 0 for q in system.quadrics)


def base_point_theorem_check(system: LinearSystem, point: Sequence) -> bool:
    """For an exact base point, decide whether it is singular on the Weddle
    locus.  Raises if the point is not a base point."""
    if not is_base_point(system, point):
        raise ValueError("point is not a base point of the system")
    data = weddle_matrix(system)
    return singular_at(data.polynomial, point) if not data.degenerate else True


def cyclic_relation_check(system: LinearSystem) -> MultiPoly:
    """The exact combination sum_k x_k Q_k(x); identically zero for systems
    coming from cyclic partially symmetric tensors."""
    nv = system.n + 1
    total = MultiPoly.zero(nv)
    for k, q in enumerate(system.quadrics):
        total = total + MultiPoly.variable(nv, k) * quadric_to_poly(q)
    return total


# ---- quadrics through points ----

def _quadric_monomials(nv: int) -> list:
    monos = []
    for i in range(nv):
        for j in range(i, nv):
            mono = [0] * nv
            mono[i] += 1
            mono[j] += 1
            monos.append(tuple(mono))
    from .polycore import grlex_key

    return sorted(monos, key=grlex_key, reverse=True)


def quadrics_through_points(points: Sequence[Sequence], n: int) -> list:
    """Canonical basis (reduced echelon, graded-lex coefficient order) of
    the space of quadrics in P^n vanishing at the given points, returned as
    symmetric matrices."""
    nv = n + 1
    monos = _quadric_monomials(nv)
    rows = []
    for p in points:
        pt = [as_rat(x) for x in p]
        if len(pt) != nv:
            raise ValueError("point has wrong number of coordinates")
        if all(x == 0 for x in pt):
            raise ValueError("projective point must be nonzero")
        row = []
        for mono in monos:
            value = Fraction(1)
            for x, e in zip(pt, mono):
                if e:
                    value *= x**e
            row.append(value)
        rows.append(row)
    vectors = linalg.nullspace(rows, ncols=len(monos))
    out = []
    for v in vectors:
        poly = MultiPoly(nv, dict(zip(monos, v)))
        out.append(poly_to_quadric(poly))
    return out


def system_through_points(points: Sequence[Sequence], n: int) -> LinearSystem:
    """The linear system spanned by quadrics through the points; errors
    unless that space has dimension exactly n+1."""
    basis = quadrics_through_points(points, n)
    if len(basis) != n + 1:
        raise ValueError(f"space of quadrics has dimension {len(basis)}, expected {n + 1}")
    return LinearSystem(n, basis)


# ---- constructions ----

def rank_r_system(forms: Sequence[Sequence], coeffs: Sequence[Sequence], n: int) -> LinearSystem:
    """System with Q_k = sum_i coeffs[k][i] * l_i l_i^T for linear forms l_i
    given by their coefficient vectors."""
    nv = n + 1
    vecs = [[as_rat(x) for x in f] for f in forms]
    if any(len(v) != nv for v in vecs):
        raise ValueError("linear forms must have n+1 coefficients")
    weight = [[as_rat(x) for x in row] for row in coeffs]
    if len(weight) != nv or any(len(row) != len(vecs) for row in weight):
        raise ValueError("coefficient grid must be (n+1) x r")
    quadrics = []
    for k in range(nv):
        q = [[Fraction(0)] * nv for _ in range(nv)]
        for c, v in zip(weight[k], vecs):
            if c:
                for i in range(nv):
                    for j in range(nv):
                        q[i][j] += c * v[i] * v[j]
        quadrics.append(q)
    return LinearSystem(n, quadrics)


def recombine(system: LinearSystem, matrix: Sequence[Sequence]) -> LinearSystem:
    """Replace the generators by invertible linear combinations."""
    nv = system.n + 1
    rows = [[as_rat(x) for x in row] for row in matrix]
    if len(rows) != nv or any(len(r) != nv for r in rows):
        raise ValueError("recombination matrix has wrong shape")
    if linalg.det(rows) == 0:
        raise ValueError("recombination matrix must be invertible")
    quadrics = []
    for k in range(nv):
        q = [[Fraction(0)] * nv for _ in range(nv)]
        for j in range(nv):
            c = rows[k][j]
            if c:
                for a in range(nv):
                    for b in range(nv):
                        q[a][b] += c * system.quadrics[j][a][b]
        quadrics.append(q)
    return LinearSystem(system.n, quadrics)


# ---- the rank-5 pencil in P^3 ----

@dataclass(frozen=True)
class Rank5Data:
    matrix: tuple
    det: Fraction
    mu: tuple


def mu_invariants(matrix: Sequence[Sequence]) -> Rank5Data:
    """det M together with the four row-replacement minors mu_s (row s of M
    replaced by the all-ones row)."""
    m = [[as_rat(x) for x in row] for row in matrix]
    if len(m) != 4 or any(len(r) != 4 for r in m):
        raise ValueError("expected a 4 x 4 matrix")
    mu = []
    for s in range(4):
        replaced = [row[:] for row in m]
        replaced[s] = [Fraction(1)] * 4
        mu.append(linalg.det(replaced))
    return Rank5Data(
        matrix=tuple(tuple(row) for row in m),
        det=linalg.det(m),
        mu=tuple(mu),
    )


def rank5_canonical_system(matrix: Sequence[Sequence]) -> LinearSystem:
    """The rank-5 system in P^3: squares of the four coordinates plus the
    square of their sum, weighted by the columns of M with unit weight on
    the sum."""
    data = mu_invariants(matrix)
    forms = [[Fraction(1) if i == j else Fraction(0) for j in range(4)] for i in range(4)]
    forms.append([Fraction(1)] * 4)
    coeffs = [[data.matrix[i][k] for i in range(4)] + [Fraction(1)] for k in range(4)]
    return rank_r_system(forms, coeffs, 3)


def rank5_det_quartic(matrix: Sequence[Sequence]) -> MultiPoly:
    """Symbolic determinant of the matrix with entries xi + x_i M_{ik},
    where xi = x0 + x1 + x2 + x3."""
    data = mu_invariants(matrix)
    xi = linear_form(4, [1, 1, 1, 1])
    entries = []
    for i in range(4):
        row = []
        for k in range(4):
            row.append(xi + MultiPoly.variable(4, i).scale(data.matrix[i][k]))
        entries.append(row)
    return PolyMatrix(4, entries).det()


def rank5_closed_form(matrix: Sequence[Sequence]) -> MultiPoly:
    """Closed form for the same quartic built only from scalar minors:
    (det M + sum mu_s) x0x1x2x3 plus mu-weighted cubic-tail monomials."""
    data = mu_invariants(matrix)
    poly = MultiPoly.monomial(4, (1, 1, 1, 1), data.det + sum(data.mu))
    for i, j, k in itertools.combinations(range(4), 3):
        s = next(a for a in range(4) if a not in (i, j, k))
        c = data.mu[s]
        if not c:
            continue
        for bumped in (i, j, k):
            mono = [0] * 4
            mono[i] += 1
            mono[j] += 1
            mono[k] += 1
            mono[bumped] += 1
            poly = poly + MultiPoly.monomial(4, tuple(mono), c)
    return poly


def rank5_identity_check(matrix: Sequence[Sequence]) -> bool:
    """Exact equality of the symbolic determinant route and the scalar
    closed-form route."""
    return rank5_det_quartic(matrix) == rank5_closed_form(matrix)


# ---- splitting into hyperplanes ----

def splits_into_hyperplanes(poly: MultiPoly, singular_points: Sequence[Sequence]) -> Optional[list]:
    """Try to factor a homogeneous polynomial into linear forms spanned by
    subsets of the given points.  Returns the list of factors (with
    multiplicity, primitive-normalized) or None."""
    if poly.is_zero() or not poly.is_homogeneous():
        raise ValueError("expected a nonzero homogeneous polynomial")
    nv = poly.nvars
    pts = [[as_rat(x) for x in p] for p in singular_points]
    candidates = []
    seen = set()
    for subset in itertools.combinations(pts, nv - 1):
        vectors = linalg.nullspace([list(p) for p in subset], ncols=nv)
        if len(vectors) != 1:
            continue
        form = linear_form(nv, vectors[0]).primitive_normalized()
        if form not in seen:
            seen.add(form)
            candidates.append(form)
    factors = []
    remaining = poly
    for form in candidates:
        while True:
            quotient = divides(form, remaining)
            if quotient is None:
                break
            factors.append(form)
            remaining = quotient
    if remaining.total_degree() == 0 and len(factors) == poly.total_degree():
        return factors
    return None


# ---- Hessians of cubics are Weddle matrices ----

def hessian_equals_weddle_check(poly: MultiPoly) -> bool:
    """For a cubic f, the system of its partial derivatives has a Weddle
    matrix equal to half the Hessian of f.  Verified exactly."""
    if not poly.is_homogeneous(3):
        raise ValueError("expected a homogeneous cubic")
    nv = poly.nvars
    partials = poly.gradient()
    system = LinearSystem(nv - 1, [poly_to_quadric(p) for p in partials])
    doubled = weddle_matrix(system).matrix.scale(2)
    hessian = PolyMatrix(nv, [[poly.diff(i).diff(j) for j in range(nv)] for i in range(nv)])
    return doubled == hessian


# ---- rank lower bounds from singular point counts ----

class RankConclusion(Enum):
    RANK_AT_LEAST_6 = "RankAtLeast6"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class RankCertificate:
    singular_count: object  # int when certified, descriptive string otherwise
    conclusion: RankConclusion
    evidence: object  # the SolutionSet backing the count


def rank_lower_bound_certificate(system: LinearSystem, config=None) -> RankCertificate:
    """Certify rank >= 6 for a system in P^3 whose Weddle quartic has a
    certified singular-point count below 10."""
    if system.n != 3:
        raise ValueError("rank certificate is specific to P^3")
    data = weddle_matrix(system)
    if data.degenerate:
        raise ValueError("Weddle polynomial is identically zero")
    from . import solve

    result = solve.singular_points(data.polynomial, config)
    if result.certified:
        count = len(result.clusters)
        conclusion = (
            RankConclusion.RANK_AT_LEAST_6 if count < 10 else RankConclusion.INCONCLUSIVE
        )
        return RankCertificate(count, conclusion, result)
    verified = sum(1 for c in result.clusters if c.rational is not None)
    return RankCertificate(f"at least {verified}", RankConclusion.INCONCLUSIVE, result)


# ---- sampling helpers ----

def sample_general_cyclic(
    dim: int,
    seed: Optional[int] = None,
    rng: Optional[random.Random] = None,
    max_retries: int = 16,
):
    """Draw random cyclic tensors until the Weddle polynomial is nonzero.

    Returns (tensor, system, weddle_data); raises after max_retries
    consecutive degenerate draws.
    """
    from .tensor import random_n1

    if rng is None:
        rng = random.Random(seed)
    for _ in range(max_retries):
        t = random_n1(dim, rng=rng)
        system = LinearSystem.from_tensor(t)
        data = weddle_matrix(system)
        if not data.degenerate:
            return t, system, data
    raise RuntimeError(f"no nondegenerate sample found in {max_retries} draws")
