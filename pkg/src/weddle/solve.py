"""Desk-scale numerical algebraic geometry.

Total-degree homotopy continuation for square polynomial systems with at
most four unknowns and degree at most three, plus the projective layer
used to count base points of quadric systems and singular points of their
determinantal loci.  Results are clustered, residual-certified, and
cross-checked against exact rational reconstructions; anything that cannot
be certified is reported as such rather than guessed.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .polycore import MultiPoly


class UncertifiedSolveError(RuntimeError):
    """An operation needed a certified solve and did not get one."""


@dataclass(frozen=True)
class SolveConfig:
    """Tuning knobs for the tracker and the certification thresholds."""

    seed: int = 0
    track_tol: float = 1e-10
    residual_tol: float = 1e-8
    cluster_radius: float = 1e-6
    filter_tol: float = 1e-6
    max_retries: int = 3
    initial_step: float = 0.05
    max_step: float = 0.1
    min_step: float = 1e-11
    endgame_t: float = 1e-4
    divergence_threshold: float = 1e8
    corrector_iterations: int = 3
    polish_iterations: int = 50
    rational_height: int = 32


DEFAULT_CONFIG = SolveConfig()

_MAX_VARS = 4
_MAX_DEGREE = 3
_T_STOP = 1e-14
_PHASE_TOL = 1e-9


# ---- points and clusters ----

@dataclass(frozen=True)
class CPoint:
    """A point with complex double coordinates.

    Projective representatives are normalized to unit Euclidean norm with
    the first coordinate of magnitude above a small tolerance rotated to
    the positive real axis, which makes them unique up to that tolerance.
    """

    coordinates: tuple

    @classmethod
    def projective(cls, coords: Sequence[complex]) -> "CPoint":
        v = np.asarray(coords, dtype=np.complex128)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise ValueError("projective point must be nonzero")
        v = v / norm
        for c in v:
            if abs(c) > _PHASE_TOL:
                v = v * (c.conjugate() / abs(c))
                break
        return cls(tuple(complex(x) for x in v))

    def sort_key(self) -> tuple:
        return tuple((round(c.real, 9), round(c.imag, 9)) for c in self.coordinates)


@dataclass(frozen=True)
class Cluster:
    point: CPoint
    multiplicity: int
    residual: float
    rational: Optional[tuple] = None

    def to_json(self) -> dict:
        return {
            "point": [[c.real, c.imag] for c in self.point.coordinates],
            "multiplicity": self.multiplicity,
            "residual": self.residual,
            "rational_match": None if self.rational is None else [str(q) for q in self.rational],
        }


@dataclass(frozen=True)
class SolutionSet:
    """Clustered output of one solve.

    Path statistics describe the primary run (for projective solves, the
    first chart; per-chart numbers live in chart_reports).  The invariant
    paths_tracked + paths_failed == bezout_bound always holds, with
    paths_tracked counting finite endpoints plus paths that diverged to
    infinity.
    """

    clusters: tuple
    bezout_bound: int
    paths_tracked: int
    paths_failed: int
    at_infinity: int
    certified: bool
    projective: bool
    notes: tuple = ()
    chart_reports: tuple = ()

    def count(self) -> int:
        return len(self.clusters)

    def to_json(self) -> dict:
        return {
            "bezout_bound": self.bezout_bound,
            "paths_tracked": self.paths_tracked,
            "paths_failed": self.paths_failed,
            "at_infinity": self.at_infinity,
            "certified": self.certified,
            "projective": self.projective,
            "count": self.count(),
            "clusters": [c.to_json() for c in self.clusters],
            "notes": list(self.notes),
            "chart_reports": [dict(r) for r in self.chart_reports],
        }


# ---- compiled evaluation ----

class _Compiled:
    """Union-monomial tables for fast complex evaluation of a system."""

    def __init__(self, polys: Sequence[MultiPoly]):
        if not polys:
            raise ValueError("empty system")
        nvars = polys[0].nvars
        if any(p.nvars != nvars for p in polys):
            raise ValueError("mixed variable counts")
        monos = sorted({m for p in polys for m in p.terms}) or [(0,) * nvars]
        self.nvars = nvars
        self.exponents = np.array(monos, dtype=np.int64)
        index = {m: i for i, m in enumerate(monos)}
        coeff = np.zeros((len(polys), len(monos)), dtype=np.complex128)
        for r, p in enumerate(polys):
            for m, c in p.terms.items():
                coeff[r, index[m]] = complex(c)
        self.coeff = coeff
        self._dexp = []
        self._dmult = []
        for v in range(nvars):
            mult = self.exponents[:, v].astype(np.float64)
            shifted = self.exponents.copy()
            shifted[:, v] = np.maximum(shifted[:, v] - 1, 0)
            self._dexp.append(shifted)
            self._dmult.append(mult)

    def value(self, x: np.ndarray) -> np.ndarray:
        mono = np.prod(x[np.newaxis, :] ** self.exponents, axis=1)
        return self.coeff @ mono

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        cols = []
        for v in range(self.nvars):
            mono = np.prod(x[np.newaxis, :] ** self._dexp[v], axis=1)
            cols.append((self.coeff * self._dmult[v]) @ mono)
        return np.stack(cols, axis=1)


class _StartSystem:
    """The start system x_i^{d_i} = r_i with unit-modulus right-hand sides."""

    def __init__(self, degrees: Sequence[int], roots: Sequence[complex]):
        self.degrees = np.array(degrees, dtype=np.float64)
        self.roots = np.array(roots, dtype=np.complex128)

    def value(self, x: np.ndarray) -> np.ndarray:
        return x ** self.degrees - self.roots

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        return np.diag(self.degrees * x ** (self.degrees - 1))


class _Homotopy:
    """H(x, t) = gamma * t * G(x) + (1 - t) * F(x), tracked from t=1 to 0."""

    def __init__(self, target: _Compiled, start: _StartSystem, gamma: complex):
        self.target = target
        self.start = start
        self.gamma = gamma

    def value(self, x: np.ndarray, t: float) -> np.ndarray:
        return self.gamma * t * self.start.value(x) + (1.0 - t) * self.target.value(x)

    def jacobian(self, x: np.ndarray, t: float) -> np.ndarray:
        return self.gamma * t * self.start.jacobian(x) + (1.0 - t) * self.target.jacobian(x)

    def t_derivative(self, x: np.ndarray) -> np.ndarray:
        return self.gamma * self.start.value(x) - self.target.value(x)


# ---- path tracking ----

def _tangent(hom: _Homotopy, x: np.ndarray, t: float) -> np.ndarray:
    return np.linalg.solve(hom.jacobian(x, t), -hom.t_derivative(x))


def _newton(hom: _Homotopy, x: np.ndarray, t: float, tol: float, iterations: int):
    for _ in range(iterations):
        try:
            delta = np.linalg.solve(hom.jacobian(x, t), hom.value(x, t))
        except np.linalg.LinAlgError:
            return False, x
        x = x - delta
        if not np.all(np.isfinite(x)):
            return False, x
        if np.linalg.norm(delta) < tol * max(1.0, np.linalg.norm(x)):
            return True, x
    return False, x


def _rk4_step(hom: _Homotopy, x: np.ndarray, t: float, h: float, config: SolveConfig):
    try:
        k1 = _tangent(hom, x, t)
        k2 = _tangent(hom, x - 0.5 * h * k1, t - 0.5 * h)
        k3 = _tangent(hom, x - 0.5 * h * k2, t - 0.5 * h)
        k4 = _tangent(hom, x - h * k3, t - h)
    except np.linalg.LinAlgError:
        return False, x
    predicted = x - (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(predicted)):
        return False, x
    return _newton(hom, predicted, t - h, config.track_tol, config.corrector_iterations)


def _polish(target: _Compiled, x: np.ndarray, config: SolveConfig):
    """Plain Newton on the target system; returns (point, converged)."""
    for _ in range(config.polish_iterations):
        try:
            delta = np.linalg.solve(target.jacobian(x), target.value(x))
        except np.linalg.LinAlgError:
            return x, False
        x = x - delta
        if not np.all(np.isfinite(x)):
            return x, False
        if np.linalg.norm(x) > config.divergence_threshold:
            return x, False
        if np.linalg.norm(delta) < 1e-13 * max(1.0, np.linalg.norm(x)):
            return x, True
    return x, False


def _track_path(hom: _Homotopy, start_point: np.ndarray, config: SolveConfig):
    """Track one path from t=1 to t=0.

    Returns (status, endpoint) with status finite | at_infinity | failed.
    Divergence is decided by a hard norm threshold at any time plus a
    growth test across the endgame phase, so that slowly diverging paths
    are not handed to the final Newton polish (which would pull them onto
    a finite root and corrupt multiplicities).
    """
    x = np.array(start_point, dtype=np.complex128)
    t = 1.0
    h = config.initial_step
    successes = 0
    endgame_norm = None
    while t > _T_STOP:
        if np.linalg.norm(x) > config.divergence_threshold:
            return "at_infinity", x
        if endgame_norm is None and t < config.endgame_t:
            endgame_norm = max(1.0, float(np.linalg.norm(x)))
        step = min(h, 0.9 * t) if t < config.endgame_t else min(h, t)
        ok, x_new = _rk4_step(hom, x, t, step, config)
        if ok:
            x = x_new
            t -= step
            successes += 1
            if successes >= 4:
                h = min(h * 1.25, config.max_step)
                successes = 0
        else:
            successes = 0
            h *= 0.5
            if h < max(1e-16, config.min_step * min(1.0, t)):
                if t >= config.endgame_t:
                    return "failed", x
                break
    norm = float(np.linalg.norm(x))
    if norm > config.divergence_threshold:
        return "at_infinity", x
    if endgame_norm is not None and norm > 32.0 * endgame_norm and norm > 100.0:
        return "at_infinity", x
    polished, converged = _polish(hom.target, x, config)
    if converged:
        jump = float(np.linalg.norm(polished - x))
        if jump <= 0.05 * max(1.0, norm):
            return "finite", polished
        # The polish jumped to an unrelated root: the tracked path was not
        # actually settling on a finite solution.
        return ("at_infinity", x) if norm > 100.0 else ("failed", x)
    if np.all(np.isfinite(polished)) and np.linalg.norm(polished) > config.divergence_threshold:
        return "at_infinity", polished
    return "failed", x


@dataclass
class _Attempt:
    finite: list
    at_infinity: int
    failed: int


def _start_points(degrees: Sequence[int], phases: Sequence[float]):
    """All Bezout-many start solutions of x_i^{d_i} = exp(2*pi*i*phase_i)."""
    axes = []
    for d, phase in zip(degrees, phases):
        axes.append([cmath.exp(2j * cmath.pi * (phase + k) / d) for k in range(d)])
    points = [[]]
    for axis in axes:
        points = [p + [root] for p in points for root in axis]
    return [np.array(p, dtype=np.complex128) for p in points]


def _solve_attempt(target: _Compiled, degrees, config: SolveConfig, rng: random.Random) -> _Attempt:
    phases = [rng.random() for _ in degrees]
    roots = [cmath.exp(2j * cmath.pi * p) for p in phases]
    gamma = cmath.exp(2j * cmath.pi * rng.random())
    hom = _Homotopy(target, _StartSystem(degrees, roots), gamma)
    attempt = _Attempt(finite=[], at_infinity=0, failed=0)
    for point in _start_points(degrees, phases):
        status, endpoint = _track_path(hom, point, config)
        if status == "finite":
            attempt.finite.append(endpoint)
        elif status == "at_infinity":
            attempt.at_infinity += 1
        else:
            attempt.failed += 1
    return attempt


def _run_square(target: _Compiled, degrees, config: SolveConfig, rng: random.Random):
    """Run all paths; rerun wholesale with fresh randomness on failures."""
    best = None
    attempts = 0
    for _ in range(config.max_retries + 1):
        attempts += 1
        attempt = _solve_attempt(target, degrees, config, rng)
        if best is None or attempt.failed < best.failed:
            best = attempt
        if best.failed == 0:
            break
    return best, attempts


# ---- clustering and certification ----

def _cluster_indices(points: list, radius: float, dist: Callable) -> list:
    groups: list = []
    for idx, p in enumerate(points):
        for g in groups:
            if dist(points[g[0]], p) <= radius:
                g.append(idx)
                break
        else:
            groups.append([idx])
    return groups


def _affine_distance(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b))


def _chordal_distance(a: np.ndarray, b: np.ndarray) -> float:
    inner = abs(np.vdot(a, b))
    return math.sqrt(max(0.0, 2.0 - 2.0 * min(1.0, inner)))


def _affine_residual(target: _Compiled, degrees, x: np.ndarray) -> float:
    scale = max(1.0, float(np.linalg.norm(x)))
    values = target.value(x)
    return max(abs(v) / scale**d for v, d in zip(values, degrees))


def _limit_fraction(value: float, height: int) -> Optional[Fraction]:
    q = Fraction(value).limit_denominator(height)
    if abs(q.numerator) > height or q.denominator > height:
        return None
    return q


def _affine_rational(coords: np.ndarray, exact_polys, config: SolveConfig):
    """(rational tuple or None, mismatch flag) for an affine solution."""
    candidate = []
    for c in coords:
        q = _limit_fraction(float(c.real), config.rational_height)
        if q is None or abs(complex(c) - complex(q)) > config.cluster_radius:
            return None, False
        candidate.append(q)
    if all(p.evaluate(candidate) == 0 for p in exact_polys):
        return tuple(candidate), False
    return None, True


def _projective_rational(coords: np.ndarray, exact_polys, config: SolveConfig):
    """(canonical integer-normalized rational point or None, mismatch flag)."""
    pivot = int(np.argmax(np.abs(coords)))
    ratios = coords / coords[pivot]
    candidate = []
    for r in ratios:
        q = _limit_fraction(float(r.real), config.rational_height)
        if q is None or abs(complex(r) - complex(q)) > config.cluster_radius:
            return None, False
        candidate.append(q)
    if not all(p.evaluate(candidate) == 0 for p in exact_polys):
        return None, True
    lcm = 1
    for q in candidate:
        lcm = lcm * q.denominator // math.gcd(lcm, q.denominator)
    ints = [q * lcm for q in candidate]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v.numerator))
    ints = [v / g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    return tuple(ints), False


# ---- the affine front end ----

def _validate_system(polys: Sequence[MultiPoly], degrees: Optional[Sequence[int]]):
    if not polys:
        raise ValueError("empty system")
    nvars = polys[0].nvars
    if len(polys) != nvars:
        raise ValueError("system must be square (n polynomials in n unknowns)")
    if nvars > _MAX_VARS:
        raise ValueError(f"at most {_MAX_VARS} unknowns supported")
    if degrees is None:
        degrees = [p.total_degree() for p in polys]
    degrees = [int(d) for d in degrees]
    for p, d in zip(polys, degrees):
        if p.is_zero() or p.total_degree() < 1:
            raise ValueError("system contains a constant polynomial")
        if d < p.total_degree():
            raise ValueError("declared degree below actual degree")
        if d > _MAX_DEGREE:
            raise ValueError(f"degrees above {_MAX_DEGREE} not supported")
    return list(polys), degrees


def solve_square(
    polys: Sequence[MultiPoly],
    config: Optional[SolveConfig] = None,
    rng: Optional[random.Random] = None,
    degrees: Optional[Sequence[int]] = None,
    rational_check: bool = True,
) -> SolutionSet:
    """Solve a square system of affine polynomial equations.

    Tracks the full Bezout count of total-degree start paths, clusters the
    finite endpoints, certifies residuals, and attempts exact rational
    reconstruction of every solution near a small-height rational point.
    Any multiplicity above one, failed path, or rational mismatch leaves
    the result uncertified (never a silent wrong count).
    """
    config = config or DEFAULT_CONFIG
    polys, degrees = _validate_system(polys, degrees)
    if rng is None:
        rng = random.Random(config.seed)
    target = _Compiled(polys)
    bezout = math.prod(degrees)
    attempt, attempts = _run_square(target, degrees, config, rng)
    notes = [] if attempts == 1 else [f"retried {attempts - 1} time(s) with fresh gamma"]

    groups = _cluster_indices(attempt.finite, config.cluster_radius, _affine_distance)
    clusters = []
    mismatch = False
    for g in groups:
        members = [attempt.finite[i] for i in g]
        residuals = [_affine_residual(target, degrees, m) for m in members]
        rep = members[residuals.index(min(residuals))]
        rational, bad = (None, False)
        if rational_check:
            rational, bad = _affine_rational(rep, polys, config)
        mismatch = mismatch or bad
        clusters.append(
            Cluster(
                point=CPoint(tuple(complex(c) for c in rep)),
                multiplicity=len(g),
                residual=min(residuals),
                rational=rational,
            )
        )
    clusters.sort(key=lambda c: c.point.sort_key())
    if mismatch:
        notes.append("rational cross-check mismatch")
    certified = (
        attempt.failed == 0
        and not mismatch
        and all(c.residual <= config.residual_tol for c in clusters)
        and all(c.multiplicity == 1 for c in clusters)
    )
    return SolutionSet(
        clusters=tuple(clusters),
        bezout_bound=bezout,
        paths_tracked=len(attempt.finite) + attempt.at_infinity,
        paths_failed=attempt.failed,
        at_infinity=attempt.at_infinity,
        certified=certified,
        projective=False,
        notes=tuple(notes),
    )


# ---- projective layer ----

def _random_chart(nvars: int, rng: random.Random):
    """Random affine chart sum a_i x_i = 1 with nonzero integer entries.

    Zero entries are rejected because they put every point of a coordinate
    hyperplane section at the chart's infinity, which needlessly hides the
    small-support rational points common in the fixtures.
    """
    coeffs = []
    for _ in range(nvars):
        value = 0
        while value == 0:
            value = rng.randint(-9, 9)
        coeffs.append(Fraction(value))
    pivot = max(range(nvars), key=lambda i: abs(coeffs[i]))
    return tuple(coeffs), pivot


def _chart_substitute(poly: MultiPoly, chart) -> MultiPoly:
    """Dehomogenize onto the rational affine chart sum_i a_i x_i = 1."""
    coeffs, pivot = chart
    nv = poly.nvars
    m = nv - 1
    args = []
    pivot_terms = {(0,) * m: Fraction(1) / coeffs[pivot]}
    j = 0
    for i in range(nv):
        if i == pivot:
            continue
        mono = tuple(1 if a == j else 0 for a in range(m))
        if coeffs[i]:
            pivot_terms[mono] = -coeffs[i] / coeffs[pivot]
        args.append(MultiPoly(m, {mono: Fraction(1)}))
        j += 1
    args.insert(pivot, MultiPoly(m, pivot_terms))
    return poly.compose(args)


def _lift_from_chart(y: np.ndarray, chart) -> np.ndarray:
    coeffs, pivot = chart
    nv = len(coeffs)
    x = np.zeros(nv, dtype=np.complex128)
    j = 0
    for i in range(nv):
        if i == pivot:
            continue
        x[i] = y[j]
        j += 1
    partial = sum(complex(coeffs[i]) * x[i] for i in range(nv) if i != pivot)
    x[pivot] = (1.0 - partial) / complex(coeffs[pivot])
    return x


def _solve_chart(square, filters_compiled, exact_polys, degrees, chart, config, rng):
    """Solve the square subsystem on one chart and certify the survivors.

    Returns (survivors, report, ok) where survivors are Cluster objects on
    normalized projective representatives and ok means: no failed paths,
    simple survivor clusters, residuals below tolerance, and no rational
    cross-check mismatch.
    """
    sub = [_chart_substitute(p, chart) for p in square]
    target = _Compiled(sub)
    attempt, attempts = _run_square(target, degrees, config, rng)
    lifted = []
    dropped = 0
    for endpoint in attempt.finite:
        point = _lift_from_chart(endpoint, chart)
        norm = np.linalg.norm(point)
        if norm > config.divergence_threshold or norm == 0:
            dropped += 1
            continue
        lifted.append(np.asarray(CPoint.projective(point).coordinates))
    at_infinity = attempt.at_infinity + dropped
    groups = _cluster_indices(lifted, config.cluster_radius, _chordal_distance)
    survivors = []
    discarded = 0
    mismatch = False
    for g in groups:
        members = [lifted[i] for i in g]
        residuals = [float(np.max(np.abs(filters_compiled.value(m)))) for m in members]
        best = residuals.index(min(residuals))
        if min(residuals) >= config.filter_tol:
            discarded += 1
            continue
        rep = members[best]
        rational, bad = _projective_rational(rep, exact_polys, config)
        mismatch = mismatch or bad
        survivors.append(
            Cluster(
                point=CPoint(tuple(complex(c) for c in rep)),
                multiplicity=len(g),
                residual=min(residuals),
                rational=rational,
            )
        )
    survivors.sort(key=lambda c: c.point.sort_key())
    ok = (
        attempt.failed == 0
        and not mismatch
        and all(c.multiplicity == 1 for c in survivors)
        and all(c.residual <= config.residual_tol for c in survivors)
    )
    report = {
        "chart": [str(c) for c in chart[0]],
        "bezout_bound": math.prod(degrees),
        "paths_tracked": len(lifted) + at_infinity,
        "paths_failed": attempt.failed,
        "at_infinity": at_infinity,
        "attempts": attempts,
        "survivors": len(survivors),
        "discarded_clusters": discarded,
        "rational_mismatch": mismatch,
    }
    return survivors, report, ok


def _near_chart_infinity(point: CPoint, chart, tol: float) -> bool:
    coords = np.asarray(point.coordinates)
    a = np.array([float(c) for c in chart[0]], dtype=np.complex128)
    return abs(np.sum(a * coords)) <= tol * float(np.linalg.norm(a))


def _projective_solve(square, filter_polys, exact_polys, degrees, config, rng) -> SolutionSet:
    """Two-chart projective solve with bijective merge.

    The square subsystem is solved on two independent random charts and
    the survivor sets must match bijectively within the cluster radius.
    A point seen by only one chart is still returned, and is excused (does
    not break certification) exactly when it lies at the other chart's
    infinity hyperplane within tolerance, where that chart provably cannot
    represent it; any other discrepancy leaves the merged result
    uncertified.
    """
    filters_compiled = _Compiled(filter_polys)
    chart1 = _random_chart(square[0].nvars, rng)
    chart2 = _random_chart(square[0].nvars, rng)
    while chart2[0] == chart1[0]:
        chart2 = _random_chart(square[0].nvars, rng)
    surv1, report1, ok1 = _solve_chart(
        square, filters_compiled, exact_polys, degrees, chart1, config, rng
    )
    surv2, report2, ok2 = _solve_chart(
        square, filters_compiled, exact_polys, degrees, chart2, config, rng
    )

    notes = []
    match_radius = max(config.cluster_radius, 10 * config.residual_tol)
    used = set()
    merged = list(surv1)
    missing_from_2 = []
    for c1 in surv1:
        match = None
        for j, c2 in enumerate(surv2):
            if j in used:
                continue
            d = _chordal_distance(
                np.asarray(c1.point.coordinates), np.asarray(c2.point.coordinates)
            )
            if d <= match_radius:
                match = j
                break
        if match is None:
            missing_from_2.append(c1)
        else:
            used.add(match)
    missing_from_1 = [c2 for j, c2 in enumerate(surv2) if j not in used]
    merged.extend(missing_from_1)
    merged.sort(key=lambda c: c.point.sort_key())

    excused2 = [
        c for c in missing_from_2 if _near_chart_infinity(c.point, chart2, config.filter_tol)
    ]
    excused1 = [
        c for c in missing_from_1 if _near_chart_infinity(c.point, chart1, config.filter_tol)
    ]
    agree = len(excused2) == len(missing_from_2) and len(excused1) == len(missing_from_1)
    if missing_from_2:
        label = "excused: at chart-2 infinity" if agree else "chart disagreement"
        notes.append(f"{len(missing_from_2)} point(s) unseen by chart 2 ({label})")
    if missing_from_1:
        label = "excused: at chart-1 infinity" if agree else "chart disagreement"
        notes.append(f"{len(missing_from_1)} point(s) unseen by chart 1 ({label})")
    certified = ok1 and ok2 and agree
    if not ok1:
        notes.append("chart 1 run uncertified")
    if not ok2:
        notes.append("chart 2 run uncertified")
    return SolutionSet(
        clusters=tuple(merged),
        bezout_bound=report1["bezout_bound"],
        paths_tracked=report1["paths_tracked"],
        paths_failed=report1["paths_failed"],
        at_infinity=report1["at_infinity"],
        certified=certified,
        projective=True,
        notes=tuple(notes),
        chart_reports=(report1, report2),
    )


def _random_square_subsystem(polys: Sequence[MultiPoly], count: int, rng) -> list:
    """``count`` random full-rank integer combinations of the given polys.

    Special subsets of an overdetermined system (the first n members, or
    all partials but one) can share positive-dimensional components on
    which the true solutions stop being isolated; a generic recombination
    spans the same system while cutting a finite set.  Resamples weights
    up to 16 times, raising when every draw degenerates.
    """
    from . import linalg

    for _ in range(16):
        weights = [
            [Fraction(rng.randint(-9, 9)) for _ in range(len(polys))] for _ in range(count)
        ]
        if linalg.rank(weights) < count:
            continue
        candidate = []
        for row in weights:
            poly = MultiPoly.zero(polys[0].nvars)
            for w, g in zip(row, polys):
                if w:
                    poly = poly + g.scale(w)
            candidate.append(poly)
        if all(not p.is_zero() for p in candidate):
            return candidate
    raise ValueError("could not draw a nondegenerate square subsystem")


def base_points(system, config: Optional[SolveConfig] = None) -> SolutionSet:
    """Certified base points of a linear system of quadrics in P^n, n <= 4.

    Solves a square subsystem of n random full-rank combinations of the
    n+1 quadrics on two random rational charts and keeps the solutions
    where every generating quadric has residual below the filter
    threshold (with an exact rational cross-check on top).
    """
    config = config or DEFAULT_CONFIG
    n = system.n
    if n > _MAX_VARS:
        raise ValueError(f"at most P^{_MAX_VARS} supported")
    polys = system.quadric_polys()
    if any(p.is_zero() for p in polys):
        raise ValueError("system contains an identically zero quadric")
    rng = random.Random(config.seed)
    square = _random_square_subsystem(polys, n, rng)
    return _projective_solve(square, polys, polys, [2] * n, config, rng)


def singular_points(f: MultiPoly, config: Optional[SolveConfig] = None) -> SolutionSet:
    """Certified singular points of a hypersurface {f = 0}, <= 4 variables.

    The square subsystem consists of nvars-1 random full-rank rational
    combinations of all partial derivatives; survivors are filtered by the
    residual of the full gradient (plus the exact rational cross-check).
    Path count is (deg f - 1)^(nvars - 1) per chart.
    """
    config = config or DEFAULT_CONFIG
    nv = f.nvars
    if nv > _MAX_VARS:
        raise ValueError(f"at most {_MAX_VARS} variables supported")
    if not f.is_homogeneous() or f.is_zero():
        raise ValueError("expected a nonzero homogeneous polynomial")
    if f.total_degree() > _MAX_DEGREE + 1:
        raise ValueError("degree above 4 not supported")
    grads = f.gradient()
    if all(g.is_zero() for g in grads):
        raise ValueError("gradient system is identically zero")
    rng = random.Random(config.seed)
    try:
        combos = _random_square_subsystem(grads, nv - 1, rng)
    except ValueError as exc:
        raise ValueError("gradient system is degenerate") from exc
    degrees = [f.total_degree() - 1] * (nv - 1)
    return _projective_solve(combos, grads, grads, degrees, config, rng)


# ---- Jacobsthal numbers ----

def jacobsthal(n: int) -> int:
    """J_0 = 0, J_1 = 1, J_n = J_{n-1} + 2 J_{n-2}, with the closed form
    and both step identities re-verified on every call."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    values = [0, 1]
    while len(values) <= n:
        values.append(values[-1] + 2 * values[-2])
    j = values[n]
    closed, remainder = divmod(2**n - (-1) ** n, 3)
    if remainder or j != closed:
        raise ArithmeticError("closed form disagrees with recurrence")
    if n >= 1 and j != 2 ** (n - 1) - values[n - 1]:
        raise ArithmeticError("complement identity disagrees with recurrence")
    if n >= 1 and j != 2 * values[n - 1] + (-1) ** (n - 1):
        raise ArithmeticError("doubling identity disagrees with recurrence")
    return j
