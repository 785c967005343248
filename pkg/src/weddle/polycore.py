"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is a dictionary mapping exponent tuples to nonzero Fraction
coefficients, so arithmetic, differentiation, evaluation, determinants of
polynomial matrices, and divisibility tests are all exact.  Monomials are
ordered in graded lexicographic order wherever they are enumerated or
printed; together with primitive normalization this gives every polynomial
a canonical, regression-stable representative.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterator, Mapping, Optional, Sequence

Rat = Fraction
Monomial = tuple


def as_rat(value) -> Fraction:
    """Coerce an int, a string like '-3/2', or a Fraction to a Fraction.

    Floats are rejected on purpose: everything in this layer is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def grlex_key(mono: Monomial):
    """Sort key realizing graded lexicographic order (total degree first)."""
    return (sum(mono), mono)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over the rationals."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping] = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                c = as_rat(coeff)
                if c == 0:
                    continue
                key = tuple(int(e) for e in mono)
                if len(key) != nvars or any(e < 0 for e in key):
                    raise ValueError(f"bad exponent tuple {mono!r} for {nvars} variables")
                clean[key] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("MultiPoly is immutable")

    # ---- constructors ----

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def constant(cls, nvars: int, value) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: as_rat(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "MultiPoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for {nvars} variables")
        mono = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exponents: Sequence[int], coeff=1) -> "MultiPoly":
        return cls(nvars, {tuple(exponents): as_rat(coeff)})

    # ---- basic queries ----

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Maximum total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        """True if all terms share one total degree (zero counts as homogeneous)."""
        if not self.terms:
            return True
        degrees = {sum(m) for m in self.terms}
        if len(degrees) != 1:
            return False
        return degree is None or degrees == {degree}

    def coefficient(self, mono: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def leading_monomial(self) -> Optional[Monomial]:
        if not self.terms:
            return None
        return max(self.terms, key=grlex_key)

    def leading_coefficient(self) -> Fraction:
        lm = self.leading_monomial()
        return Fraction(0) if lm is None else self.terms[lm]

    def sorted_terms(self) -> Iterator:
        """Terms in descending graded lexicographic order."""
        for mono in sorted(self.terms, key=grlex_key, reverse=True):
            yield mono, self.terms[mono]

    # ---- ring operations ----

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("operands live in different polynomial rings")
            return other
        return MultiPoly.constant(self.nvars, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            s = terms.get(mono, Fraction(0)) + c
            if s:
                terms[mono] = s
            else:
                terms.pop(mono, None)
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        if other.nvars != self.nvars:
            raise ValueError("operands live in different polynomial rings")
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(mono, Fraction(0)) + c1 * c2
                if s:
                    terms[mono] = s
                else:
                    terms.pop(mono, None)
        return MultiPoly(self.nvars, terms)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def scale(self, value) -> "MultiPoly":
        c = as_rat(value)
        if c == 0:
            return MultiPoly(self.nvars)
        return MultiPoly(self.nvars, {m: c * v for m, v in self.terms.items()})

    def __pow__(self, n: int) -> "MultiPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = MultiPoly.constant(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # ---- calculus and evaluation ----

    def diff(self, var: int) -> "MultiPoly":
        if not 0 <= var < self.nvars:
            raise ValueError("variable index out of range")
        terms = {}
        for mono, c in self.terms.items():
            e = mono[var]
            if e == 0:
                continue
            new = list(mono)
            new[var] = e - 1
            terms[tuple(new)] = c * e
        return MultiPoly(self.nvars, terms)

    def gradient(self) -> list:
        return [self.diff(i) for i in range(self.nvars)]

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong number of coordinates")
        pt = [as_rat(x) for x in point]
        total = Fraction(0)
        for mono, c in self.terms.items():
            value = c
            for x, e in zip(pt, mono):
                if e:
                    value *= x**e
            total += value
        return total

    def evaluate_complex(self, point: Sequence[complex]) -> complex:
        """Floating evaluation, used only for numeric residual reporting."""
        if len(point) != self.nvars:
            raise ValueError("point has wrong number of coordinates")
        total = 0j
        for mono, c in self.terms.items():
            value = complex(c)
            for x, e in zip(point, mono):
                if e:
                    value *= x**e
            total += value
        return total

    def compose(self, args: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute args[i] for variable i; args live in a common ring."""
        if len(args) != self.nvars:
            raise ValueError("need one substitution polynomial per variable")
        if not args:
            raise ValueError("composition needs at least one variable")
        out_vars = args[0].nvars
        if any(g.nvars != out_vars for g in args):
            raise ValueError("substitution polynomials live in different rings")
        cache: dict = {}

        def power_of(i: int, e: int) -> MultiPoly:
            if e == 0:
                return MultiPoly.constant(out_vars, 1)
            got = cache.get((i, e))
            if got is None:
                got = power_of(i, e - 1) * args[i]
                cache[(i, e)] = got
            return got

        result = MultiPoly.zero(out_vars)
        for mono, c in self.terms.items():
            term = MultiPoly.constant(out_vars, c)
            for i, e in enumerate(mono):
                if e:
                    term = term * power_of(i, e)
            result = result + term
        return result

    # ---- normalization ----

    def content(self) -> Fraction:
        """gcd of the coefficients (positive), 0 for the zero polynomial."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive_normalized(self) -> "MultiPoly":
        """Divide by the content and fix the sign so the graded-lex leading
        coefficient is positive.  Zero maps to zero."""
        if not self.terms:
            return self
        scaled = self.scale(1 / self.content())
        if scaled.leading_coefficient() < 0:
            scaled = -scaled
        return scaled

    def proportional(self, other: "MultiPoly") -> bool:
        """True when the two polynomials agree up to a nonzero scalar."""
        if self.nvars != other.nvars:
            return False
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return self.primitive_normalized() == other.primitive_normalized()

    # ---- printing ----

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for index, (mono, coeff) in enumerate(self.sorted_terms()):
            body = _term_body(mono, coeff)
            if index == 0:
                pieces.append(body if coeff > 0 else "-" + body)
            else:
                pieces.append((" + " if coeff > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self})"


def _term_body(mono: Monomial, coeff: Fraction) -> str:
    """Render one term without its sign."""
    c = abs(coeff)
    factors = []
    for i, e in enumerate(mono):
        if e == 1:
            factors.append(f"x{i}")
        elif e > 1:
            factors.append(f"x{i}^{e}")
    if not factors:
        return str(c)
    if c != 1:
        factors.insert(0, str(c))
    return "*".join(factors)


# ---- parsing ----

_TOKEN = re.compile(r"\s*(?:(?P<frac>\d+/\d+)|(?P<int>\d+)|(?P<var>x\d+)|(?P<op>[\^*+\-]))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"unexpected character at {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.lastgroup == "frac":
            tokens.append(("num", Fraction(m.group("frac"))))
        elif m.lastgroup == "int":
            tokens.append(("num", Fraction(m.group("int"))))
        elif m.lastgroup == "var":
            tokens.append(("var", int(m.group("var")[1:])))
        else:
            tokens.append(("op", m.group("op")))
    return tokens


def parse_poly(text: str, nvars: Optional[int] = None) -> MultiPoly:
    """Parse the canonical text format, e.g. ``-121/48*x1 + x2^2``.

    The variable count is inferred from the largest variable index unless
    given explicitly.  Inverse to ``str`` up to canonical term order.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ValueError("empty polynomial text")
    max_index = max((t[1] for t in tokens if t[0] == "var"), default=-1)
    if nvars is None:
        nvars = max_index + 1
    elif max_index >= nvars:
        raise ValueError(f"variable x{max_index} exceeds declared nvars={nvars}")

    terms: dict = {}
    pos = 0

    def parse_factor():
        nonlocal pos
        kind, value = tokens[pos]
        if kind == "num":
            pos += 1
            return value, None
        if kind == "var":
            pos += 1
            exponent = 1
            if pos + 1 < len(tokens) and tokens[pos] == ("op", "^") and tokens[pos + 1][0] == "num":
                exp = tokens[pos + 1][1]
                if exp.denominator != 1 or exp < 0:
                    raise ValueError("exponent must be a nonnegative integer")
                exponent = int(exp)
                pos += 2
            return None, (value, exponent)
        raise ValueError(f"unexpected token {tokens[pos]!r}")

    def parse_term(sign: int):
        nonlocal pos
        coeff = Fraction(sign)
        exps = [0] * nvars
        while True:
            num, var = parse_factor()
            if num is not None:
                coeff *= num
            else:
                index, exponent = var
                exps[index] += exponent
            if pos < len(tokens) and tokens[pos] == ("op", "*"):
                pos += 1
                continue
            break
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + coeff

    sign = 1
    if tokens[pos] == ("op", "-"):
        sign = -1
        pos += 1
    elif tokens[pos] == ("op", "+"):
        pos += 1
    parse_term(sign)
    while pos < len(tokens):
        kind, value = tokens[pos]
        if kind != "op" or value not in "+-":
            raise ValueError(f"expected '+' or '-' before {tokens[pos]!r}")
        pos += 1
        if pos >= len(tokens):
            raise ValueError("dangling sign at end of polynomial")
        parse_term(1 if value == "+" else -1)
    return MultiPoly(nvars, terms)


# ---- linear forms ----

def linear_form(nvars: int, coeffs: Sequence) -> MultiPoly:
    """Build sum(coeffs[i] * x_i)."""
    if len(coeffs) != nvars:
        raise ValueError("coefficient vector has wrong length")
    terms = {}
    for i, c in enumerate(coeffs):
        c = as_rat(c)
        if c:
            mono = tuple(1 if j == i else 0 for j in range(nvars))
            terms[mono] = c
    return MultiPoly(nvars, terms)


def linear_coefficients(form: MultiPoly) -> list:
    """Coefficient vector of a homogeneous linear form (error otherwise)."""
    if form.is_zero() or not form.is_homogeneous(1):
        raise ValueError("expected a nonzero homogeneous linear form")
    coeffs = [Fraction(0)] * form.nvars
    for mono, c in form.terms.items():
        coeffs[mono.index(1)] = c
    return coeffs


def divides(form: MultiPoly, poly: MultiPoly) -> Optional[MultiPoly]:
    """Exact quotient poly / form for a nonzero homogeneous linear form,
    or None when the division leaves a remainder."""
    if form.nvars != poly.nvars:
        raise ValueError("operands live in different polynomial rings")
    coeffs = linear_coefficients(form)
    pivot = next(i for i, c in enumerate(coeffs) if c)
    c = coeffs[pivot]
    if poly.is_zero():
        return poly
    # form = c * (x_pivot - s) with s collecting the remaining variables.
    s_terms = {}
    for i, ci in enumerate(coeffs):
        if i != pivot and ci:
            mono = tuple(1 if j == i else 0 for j in range(poly.nvars))
            s_terms[mono] = -ci / c
    s = MultiPoly(poly.nvars, s_terms)

    # Split poly into slices by the exponent of the pivot variable.
    slices: dict = {}
    for mono, coeff in poly.terms.items():
        e = mono[pivot]
        flat = list(mono)
        flat[pivot] = 0
        level = slices.setdefault(e, {})
        level[tuple(flat)] = coeff
    top = max(slices)
    levels = [MultiPoly(poly.nvars, slices.get(k, {})) for k in range(top + 1)]

    # Synthetic division by (x_pivot - s).
    quotient_levels = [MultiPoly.zero(poly.nvars)] * top
    carry = levels[top]
    for k in range(top - 1, -1, -1):
        quotient_levels[k] = carry
        carry = levels[k] + s * carry
    if not carry.is_zero():
        return None
    result = MultiPoly.zero(poly.nvars)
    for k, q in enumerate(quotient_levels):
        shift = {}
        for mono, coeff in q.terms.items():
            lifted = list(mono)
            lifted[pivot] += k
            shift[tuple(lifted)] = coeff
        result = result + MultiPoly(poly.nvars, shift)
    return result.scale(1 / c)


def projectively_equal(p: Sequence, q: Sequence) -> bool:
    """True when two nonzero coordinate vectors span the same line."""
    pv = [as_rat(x) for x in p]
    qv = [as_rat(x) for x in q]
    if len(pv) != len(qv):
        raise ValueError("points live in different spaces")
    if all(x == 0 for x in pv) or all(x == 0 for x in qv):
        raise ValueError("projective points must be nonzero")
    n = len(pv)
    for i in range(n):
        for j in range(i + 1, n):
            if pv[i] * qv[j] - pv[j] * qv[i] != 0:
                return False
    return True


def vanishes_on_line(poly: MultiPoly, p: Sequence, q: Sequence) -> bool:
    """Exact test that a homogeneous polynomial vanishes on the line
    spanned by two distinct projective points."""
    if not poly.is_homogeneous():
        raise ValueError("polynomial must be homogeneous")
    if projectively_equal(p, q):
        raise ValueError("points must be projectively distinct")
    pv = [as_rat(x) for x in p]
    qv = [as_rat(x) for x in q]
    lines = [MultiPoly(2, {(1, 0): pv[i], (0, 1): qv[i]}) for i in range(poly.nvars)]
    return poly.compose(lines).is_zero()


# ---- matrices of polynomials ----

MAX_DET_SIZE = 8


class PolyMatrix:
    """Square matrix of MultiPoly entries with an exact determinant."""

    __slots__ = ("nvars", "entries")

    def __init__(self, nvars: int, entries: Sequence[Sequence[MultiPoly]]):
        rows = tuple(tuple(row) for row in entries)
        for row in rows:
            if len(row) != len(rows):
                raise ValueError("matrix must be square")
            for e in row:
                if not isinstance(e, MultiPoly) or e.nvars != nvars:
                    raise ValueError("entries must be MultiPoly over the same ring")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):  # pragma: no cover - guard rail
        raise AttributeError("PolyMatrix is immutable")

    @property
    def size(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> MultiPoly:
        return self.entries[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyMatrix)
            and self.nvars == other.nvars
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.nvars, self.entries))

    def scale(self, value) -> "PolyMatrix":
        return PolyMatrix(self.nvars, [[e.scale(value) for e in row] for row in self.entries])

    def det(self) -> MultiPoly:
        """Cofactor expansion with minors memoized by column subsets.

        Intended for the small matrices this library produces; sizes above
        MAX_DET_SIZE are refused rather than silently taking forever.
        """
        n = self.size
        if n > MAX_DET_SIZE:
            raise ValueError(f"determinant limited to size {MAX_DET_SIZE}")
        if n == 0:
            return MultiPoly.constant(self.nvars, 1)
        minors = {0: MultiPoly.constant(self.nvars, 1)}
        masks = sorted(range(1, 1 << n), key=lambda m: m.bit_count())
        for mask in masks:
            row = mask.bit_count() - 1
            total = MultiPoly.zero(self.nvars)
            position = 0
            for col in range(n):
                if not mask & (1 << col):
                    continue
                entry = self.entries[row][col]
                if not entry.is_zero():
                    piece = entry * minors[mask ^ (1 << col)]
                    if (row + position) % 2:
                        piece = -piece
                    total = total + piece
                position += 1
            minors[mask] = total
        return minors[(1 << n) - 1]

    def __repr__(self) -> str:
        rows = "; ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries)
        return f"PolyMatrix({self.size}x{self.size}: {rows})"
