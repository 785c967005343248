"""Plane-cubic analytics: Hessians, smoothness via certified singular
counts, Weierstrass reduction through a flex, and the j-invariant.

The reduction prefers an exact route: locate a small rational flex, move
it to [0:0:1] with its tangent line to {z0 = 0} by an exact linear change,
read off the long Weierstrass coefficients in the chart z0 = 1, and
complete the square and cube over the rationals.  When no rational flex
exists the nine flexes are computed numerically (common zeros of the cubic
and its Hessian determinant) and the same algebra runs in complex floats,
after first attempting to promote a numerical flex back to an exact one.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from . import linalg, solve
from .polycore import MultiPoly, PolyMatrix, Rat, as_rat, linear_form


@dataclass(frozen=True)
class ShortWeierstrass:
    """The curve y^2 = x^3 + a*x + b with rational coefficients."""

    a: Rat
    b: Rat

    def discriminant_quantity(self) -> Rat:
        return 4 * self.a**3 + 27 * self.b**2


def j_short(w: ShortWeierstrass) -> Rat:
    """j = 256 * 27 a^3 / (4 a^3 + 27 b^2), exact."""
    denom = w.discriminant_quantity()
    if denom == 0:
        raise ValueError("singular curve: 4a^3 + 27b^2 = 0")
    return Fraction(6912) * as_rat(w.a) ** 3 / denom


def hessian(f: MultiPoly) -> PolyMatrix:
    """Matrix of second partials of a homogeneous cubic (entries linear)."""
    if not f.is_homogeneous(3):
        raise ValueError("expected a homogeneous cubic")
    nv = f.nvars
    return PolyMatrix(nv, [[f.diff(i).diff(j) for j in range(nv)] for i in range(nv)])


def is_smooth_cubic(f: MultiPoly, config: Optional[solve.SolveConfig] = None) -> bool:
    """True iff the certified singular-point count of {f = 0} is zero."""
    if f.nvars != 3 or not f.is_homogeneous(3) or f.is_zero():
        raise ValueError("expected a nonzero ternary homogeneous cubic")
    result = solve.singular_points(f, config)
    if not result.certified:
        raise solve.UncertifiedSolveError(
            "smoothness is indeterminate: singular-point count not certified"
        )
    return result.count() == 0


# ---- rational flexes ----

def _canonical_triples(height: int):
    """Primitive integer triples, first nonzero entry positive, ordered by
    (max absolute entry, lexicographic order)."""
    for shell in range(1, height + 1):
        block = []
        values = range(-shell, shell + 1)
        for triple in itertools.product(values, values, values):
            if max(abs(c) for c in triple) != shell:
                continue
            nonzero = [c for c in triple if c]
            if not nonzero or nonzero[0] < 0:
                continue
            if math.gcd(math.gcd(abs(triple[0]), abs(triple[1])), abs(triple[2])) != 1:
                continue
            block.append(triple)
        block.sort()
        yield from block


def _primitive(vec: Sequence) -> Optional[tuple]:
    """Integer-primitive representative of a rational vector (or None)."""
    fracs = [as_rat(v) for v in vec]
    if all(v == 0 for v in fracs):
        return None
    lcm = 1
    for v in fracs:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    ints = [int(v * lcm) for v in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    out = tuple(v // g for v in ints)
    lead = next(v for v in out if v)
    return out if lead > 0 else tuple(-v for v in out)


def _proportional_vectors(p: Sequence, q: Sequence) -> bool:
    n = len(p)
    return all(p[i] * q[j] == p[j] * q[i] for i in range(n) for j in range(i + 1, n))


def _tangent_direction(gradient: Sequence, point: Sequence) -> Optional[tuple]:
    """Canonical primitive kernel vector of the gradient, independent of
    the point: the smallest of the cross products with the unit vectors."""
    l0, l1, l2 = gradient
    raw = [(0, l2, -l1), (-l2, 0, l0), (l1, -l0, 0)]
    candidates = []
    for vec in raw:
        prim = _primitive([as_rat(v) for v in vec])
        if prim is not None and not _proportional_vectors(prim, point):
            candidates.append(prim)
    if not candidates:
        return None
    return min(candidates, key=lambda v: (max(abs(c) for c in v), v))


def is_flex(f: MultiPoly, point: Sequence) -> bool:
    """Exact flex test: the point lies on the curve, is a smooth point,
    and the Hessian form vanishes on the tangent direction there."""
    if f.nvars != 3 or not f.is_homogeneous(3):
        raise ValueError("expected a ternary homogeneous cubic")
    p = [as_rat(x) for x in point]
    if all(x == 0 for x in p):
        raise ValueError("projective point must be nonzero")
    if f.evaluate(p) != 0:
        return False
    grad = [g.evaluate(p) for g in f.gradient()]
    if all(x == 0 for x in grad):
        return False
    v = _tangent_direction(grad, p)
    if v is None:
        return False
    hess = [[f.diff(i).diff(j).evaluate(p) for j in range(3)] for i in range(3)]
    value = sum(v[i] * hess[i][j] * v[j] for i in range(3) for j in range(3))
    return value == 0


def find_rational_flex(f: MultiPoly, height: int = 8) -> Optional[tuple]:
    """First flex among canonical primitive integer triples up to height."""
    for triple in _canonical_triples(height):
        p = tuple(Fraction(c) for c in triple)
        if f.evaluate(p) == 0 and is_flex(f, p):
            return triple
    return None


# ---- the reduction algebra ----

def _long_to_short(a1, a2, a3, a4, a6):
    """Complete square and cube: y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
    down to y^2 = x^3 + a x + b."""
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    c4 = b2 * b2 - 24 * b4
    c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
    return -c4 / 48, -c6 / 864


def _coefficients_from_cubic(coeffs):
    """From the coefficient lookup of f(Mz) = 0 (flex at [0:0:1], tangent
    {z0 = 0}) to the long Weierstrass coefficients; None if degenerate."""
    alpha = coeffs((1, 0, 2))
    kappa = coeffs((0, 3, 0))
    if alpha == 0 or kappa == 0:
        return None
    if coeffs((0, 0, 3)) != 0 or coeffs((0, 1, 2)) != 0 or coeffs((0, 2, 1)) != 0:
        return None
    p = coeffs((1, 1, 1)) / alpha
    q = coeffs((2, 0, 1)) / alpha
    c3 = -kappa / alpha
    r = -coeffs((1, 2, 0)) / alpha
    s = -coeffs((2, 1, 0)) / alpha
    t0 = -coeffs((3, 0, 0)) / alpha
    return p, r, q * c3, s * c3, t0 * c3 * c3


def _reduce_exact(f: MultiPoly, flex: Sequence):
    """Exact reduction of f through a rational flex; returns (a, b)."""
    p = [as_rat(x) for x in flex]
    grad = [g.evaluate(p) for g in f.gradient()]
    v = _tangent_direction(grad, p)
    if v is None:
        raise ValueError("point is not a smooth flex")
    u = next(t for t in _canonical_triples(1) if sum(as_rat(c) * g for c, g in zip(t, grad)) != 0)
    columns = [tuple(as_rat(c) for c in u), v, tuple(p)]
    matrix = [[columns[c][r] for c in range(3)] for r in range(3)]
    if linalg.det(matrix) == 0:
        raise ValueError("degenerate frame at flex")
    transformed = f.compose([linear_form(3, row) for row in matrix])
    long_form = _coefficients_from_cubic(lambda m: transformed.coefficient(m))
    if long_form is None:
        raise ValueError("cubic is degenerate at this flex")
    return _long_to_short(*long_form)


def canonicalize_pair(a: Rat, b: Rat) -> tuple:
    """Height-minimal representative of the orbit (a, b) ~ (u^4 a, u^6 b).

    Scans u = s/t with 1 <= s, t <= 48 coprime and picks the pair whose
    sorted magnitude profile (numerator and denominator sizes of both
    coefficients) is lexicographically smallest, preferring u = 1 and then
    small s + t on ties, so fixtures are reproducible.
    """
    a = as_rat(a)
    b = as_rat(b)
    best = None
    for s in range(1, 49):
        for t in range(1, 49):
            if math.gcd(s, t) != 1:
                continue
            u = Fraction(s, t)
            a2 = a * u**4
            b2 = b * u**6
            profile = sorted(
                (abs(a2.numerator), a2.denominator, abs(b2.numerator), b2.denominator),
                reverse=True,
            )
            key = (profile, 0 if u == 1 else 1, s + t, s)
            if best is None or key < best[0]:
                best = (key, a2, b2)
    return best[1], best[2]


# ---- numeric route ----

def _complex_compose_cubic(f: MultiPoly, matrix: np.ndarray) -> dict:
    """Coefficients of f(M z) for a complex 3x3 matrix, as a dict."""
    rows = [dict() for _ in range(3)]
    for r in range(3):
        for k in range(3):
            if matrix[r][k] != 0:
                mono = tuple(1 if i == k else 0 for i in range(3))
                rows[r][mono] = complex(matrix[r][k])

    def multiply(p, q):
        out = {}
        for m1, c1 in p.items():
            for m2, c2 in q.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                out[key] = out.get(key, 0j) + c1 * c2
        return out

    result = {}
    for mono, coeff in f.terms.items():
        term = {(0, 0, 0): complex(coeff)}
        for var, exp in enumerate(mono):
            for _ in range(exp):
                term = multiply(term, rows[var])
        for key, value in term.items():
            result[key] = result.get(key, 0j) + value
    return result


def flex_points(f: MultiPoly, config: Optional[solve.SolveConfig] = None) -> solve.SolutionSet:
    """The nine flexes of a smooth cubic: common zeros of f and the
    determinant of its Hessian matrix, as a certified projective solve."""
    if f.nvars != 3 or not f.is_homogeneous(3):
        raise ValueError("expected a ternary homogeneous cubic")
    hess_det = hessian(f).det()
    if hess_det.is_zero():
        raise ValueError("Hessian determinant vanishes identically")
    config = config or solve.DEFAULT_CONFIG
    system = [f, hess_det]
    return solve._projective_solve(
        system, system, system, [3, 3], config, random.Random(config.seed)
    )


_PROMOTION_HEIGHT = 10**6


def _promote_flex(f: MultiPoly, coords) -> Optional[tuple]:
    """Try to recognize a numerical flex as an exact rational point."""
    arr = np.asarray(coords)
    pivot = int(np.argmax(np.abs(arr)))
    ratios = arr / arr[pivot]
    candidate = []
    for r in ratios:
        q = Fraction(float(r.real)).limit_denominator(_PROMOTION_HEIGHT)
        if abs(complex(r) - complex(q)) > 1e-6:
            return None
        candidate.append(q)
    lcm = 1
    for q in candidate:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    ints = [int(q * lcm) for q in candidate]
    prim = _primitive(ints)
    if prim is None:
        return None
    p = tuple(Fraction(c) for c in prim)
    if f.evaluate(p) == 0 and is_flex(f, p):
        return prim
    return None


def _reduce_numeric_from(f: MultiPoly, coords) -> Optional[tuple]:
    """Float reduction at a numerical flex; returns (a, b, residual)."""
    p = np.asarray(coords, dtype=np.complex128)
    grads = [g for g in f.gradient()]
    ell = np.array([g.evaluate_complex(list(p)) for g in grads])
    if np.linalg.norm(ell) < 1e-10:
        return None
    v = np.cross(ell, p)
    if np.linalg.norm(v) < 1e-10:
        return None
    u = np.conj(ell)
    matrix = np.stack([u, v, p], axis=1)
    coeffs = _complex_compose_cubic(f, matrix)
    lookup = lambda m: coeffs.get(m, 0j)
    scale = max(abs(c) for c in coeffs.values())
    if scale == 0 or abs(lookup((1, 0, 2))) < 1e-10 * scale or abs(lookup((0, 3, 0))) < 1e-10 * scale:
        return None
    residual = max(abs(lookup(m)) for m in ((0, 0, 3), (0, 1, 2), (0, 2, 1))) / scale
    p_ = lookup((1, 1, 1)) / lookup((1, 0, 2))
    q_ = lookup((2, 0, 1)) / lookup((1, 0, 2))
    c3 = -lookup((0, 3, 0)) / lookup((1, 0, 2))
    r_ = -lookup((1, 2, 0)) / lookup((1, 0, 2))
    s_ = -lookup((2, 1, 0)) / lookup((1, 0, 2))
    t0 = -lookup((3, 0, 0)) / lookup((1, 0, 2))
    a, b = _long_to_short(p_, r_, q_ * c3, s_ * c3, t0 * c3 * c3)
    return a, b, float(residual)


# ---- public reduction API ----

@dataclass(frozen=True)
class ReductionResult:
    a: Union[Rat, complex]
    b: Union[Rat, complex]
    exact: bool
    flex: tuple
    residual: float

    def short(self) -> ShortWeierstrass:
        if not self.exact:
            raise ValueError("reduction is numeric; no exact short form")
        return ShortWeierstrass(self.a, self.b)


@dataclass(frozen=True)
class JInvariant:
    value: Union[Rat, complex]
    exact: bool
    residual: float


def weierstrass_reduce(
    f: MultiPoly,
    method: str = "auto",
    flex_height: int = 8,
    config: Optional[solve.SolveConfig] = None,
    promote: bool = True,
) -> ReductionResult:
    """Short Weierstrass form of a smooth plane cubic.

    method "exact" insists on a rational flex within flex_height; "numeric"
    skips the rational search; "auto" tries exact first.  The numeric route
    still promotes a flex back to exact arithmetic when its coordinates are
    recognizably rational (unless promote=False).
    """
    if f.nvars != 3 or not f.is_homogeneous(3) or f.is_zero():
        raise ValueError("expected a nonzero ternary homogeneous cubic")
    if method not in ("auto", "exact", "numeric"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "exact"):
        flex = find_rational_flex(f, flex_height)
        if flex is not None:
            a, b = canonicalize_pair(*_reduce_exact(f, flex))
            return ReductionResult(a=a, b=b, exact=True, flex=flex, residual=0.0)
        if method == "exact":
            raise ValueError(f"no rational flex of height <= {flex_height} found")
    flexes = flex_points(f, config)
    if not flexes.certified or flexes.count() == 0:
        raise solve.UncertifiedSolveError("numeric flex search was not certified")
    for cluster in flexes.clusters:
        coords = cluster.point.coordinates
        if promote:
            promoted = _promote_flex(f, coords)
            if promoted is not None:
                a, b = canonicalize_pair(*_reduce_exact(f, promoted))
                return ReductionResult(a=a, b=b, exact=True, flex=promoted, residual=0.0)
        reduced = _reduce_numeric_from(f, coords)
        if reduced is not None:
            a, b, residual = reduced
            return ReductionResult(
                a=a, b=b, exact=False, flex=coords, residual=max(residual, cluster.residual)
            )
    raise ValueError("reduction failed at every flex candidate")


def j_invariant(
    f: MultiPoly,
    method: str = "auto",
    config: Optional[solve.SolveConfig] = None,
    promote: bool = True,
) -> JInvariant:
    """The j-invariant of a smooth plane cubic, exact whenever the
    Weierstrass reduction ran exactly."""
    result = weierstrass_reduce(f, method=method, config=config, promote=promote)
    if result.exact:
        return JInvariant(value=j_short(result.short()), exact=True, residual=0.0)
    a, b = complex(result.a), complex(result.b)
    denom = 4 * a**3 + 27 * b**2
    if abs(denom) < 1e-12 * max(1.0, abs(a) ** 3):
        raise ValueError("numerically singular curve")
    return JInvariant(value=6912 * a**3 / denom, exact=False, residual=result.residual)
