"""Exact arithmetic primitives: rationals, univariate polynomials, and
square matrices with polynomial entries.

Every scalar is an arbitrary-precision rational (fractions.Fraction).
Polynomials are dense in a single formal indeterminate, which stands in
for the free module parameter; an identity verified with the formal
parameter therefore holds for every specialization at once.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

# The base scalar type.  Fraction already maintains the canonical form we
# need: reduced, positive denominator, zero stored as 0/1.
Rational = Fraction

Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Size or rank mismatch between operands."""


def _as_fraction(value) -> Fraction:
    if type(value) is Fraction:
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    raise TypeError(f"expected an exact scalar, got {type(value).__name__}")


def gen_binomial(top: int, s: int) -> Fraction:
    """Generalized binomial coefficient top(top-1)...(top-s+1) / s!.

    Defined for any integer top; by convention the value is 0 when s < 0.
    """
    if s < 0:
        return Fraction(0)
    num = 1
    for u in range(s):
        num *= top - u
    return Fraction(num, math.factorial(s))


def falling_factorial(x, j: int):
    """Falling power x(x-1)...(x-j+1); the empty product (j = 0) is 1.

    Accepts integers, Fractions, and Poly values alike.
    """
    if j < 0:
        raise ValueError("falling factorial length must be nonnegative")
    acc = 1
    for u in range(j):
        acc = acc * (x - u)
    return acc


@lru_cache(maxsize=None)
def falling_to_power_coeffs(j: int) -> tuple[Fraction, ...]:
    """Coefficients c with [D]_j = sum_s c[s] D^s.

    [D]_j = D(D-1)...(D-j+1); the coefficients are the signed Stirling
    numbers of the first kind, built by the product recurrence.
    """
    if j < 0:
        raise ValueError("falling power index must be nonnegative")
    if j == 0:
        return (Fraction(1),)
    prev = falling_to_power_coeffs(j - 1)
    shift = j - 1
    out = []
    for s in range(j + 1):
        c = prev[s - 1] if s >= 1 else Fraction(0)
        if s < len(prev):
            c = c - shift * prev[s]
        out.append(c)
    return tuple(out)


@lru_cache(maxsize=None)
def power_to_falling_coeffs(j: int) -> tuple[Fraction, ...]:
    """Coefficients c with D^j = sum_s c[s] [D]_s.

    These are the Stirling numbers of the second kind; composing with
    falling_to_power_coeffs gives the identity.
    """
    if j < 0:
        raise ValueError("power index must be nonnegative")
    if j == 0:
        return (Fraction(1),)
    prev = power_to_falling_coeffs(j - 1)
    out = []
    for s in range(j + 1):
        c = s * prev[s] if s < len(prev) else Fraction(0)
        if s >= 1:
            c = c + prev[s - 1]
        out.append(c)
    return tuple(out)


class Poly:
    """Univariate polynomial over the rationals.

    Coefficients are stored by ascending power with no trailing zeros, so
    equal polynomials compare equal structurally.  Instances are immutable
    by convention; all operations return new values.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @staticmethod
    def const(value) -> Poly:
        return Poly((_as_fraction(value),))

    @staticmethod
    def var() -> Poly:
        """The formal indeterminate itself."""
        return Poly((Fraction(0), Fraction(1)))

    @staticmethod
    def _coerce(value) -> "Poly | None":
        if isinstance(value, Poly):
            return value
        if isinstance(value, (int, Fraction)):
            return Poly.const(value)
        return None

    @property
    def degree(self) -> int:
        """Degree of the polynomial; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def constant_value(self) -> Fraction:
        if len(self.coeffs) > 1:
            raise ValueError("polynomial is not constant")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __call__(self, value) -> Fraction:
        """Evaluate at an exact point (Horner)."""
        point = _as_fraction(value)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        coerced = Poly._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.coeffs == coerced.coeffs

    def __hash__(self) -> int:
        if len(self.coeffs) <= 1:
            return hash(self.coeffs[0] if self.coeffs else 0)
        return hash(self.coeffs)

    def __neg__(self) -> Poly:
        return Poly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        coerced = Poly._coerce(other)
        if coerced is None:
            return NotImplemented
        a, b = self.coeffs, coerced.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for idx, c in enumerate(b):
            out[idx] = out[idx] + c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        coerced = Poly._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other):
        coerced = Poly._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced + (-self)

    def __mul__(self, other):
        coerced = Poly._coerce(other)
        if coerced is None:
            return NotImplemented
        a, b = self.coeffs, coerced.coeffs
        if not a or not b:
            return _POLY_ZERO
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for k, cb in enumerate(b):
                if cb:
                    out[i + k] += ca * cb
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> Poly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = _POLY_ONE
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __repr__(self) -> str:
        return f"Poly({self.coeffs!r})"


_POLY_ZERO = Poly(())
_POLY_ONE = Poly((Fraction(1),))


class SquareMatrixPoly:
    """Square matrix with Poly entries and exact matrix algebra."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable]):
        table = []
        for row in rows:
            entries = []
            for value in row:
                poly = Poly._coerce(value)
                if poly is None:
                    raise TypeError("matrix entries must be exact scalars or Poly")
                entries.append(poly)
            table.append(tuple(entries))
        if not table:
            raise DimensionError("matrix must have positive size")
        n = len(table)
        for row in table:
            if len(row) != n:
                raise DimensionError("matrix must be square")
        object.__setattr__(self, "rows", tuple(table))

    @staticmethod
    def identity(n: int) -> SquareMatrixPoly:
        return SquareMatrixPoly(
            [[_POLY_ONE if r == c else _POLY_ZERO for c in range(n)] for r in range(n)]
        )

    @staticmethod
    def zeros(n: int) -> SquareMatrixPoly:
        return SquareMatrixPoly([[_POLY_ZERO] * n for _ in range(n)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def entry(self, r: int, c: int) -> Poly:
        return self.rows[r][c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SquareMatrixPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __add__(self, other: SquareMatrixPoly) -> SquareMatrixPoly:
        if not isinstance(other, SquareMatrixPoly):
            return NotImplemented
        if self.size != other.size:
            raise DimensionError("matrix sizes differ")
        return SquareMatrixPoly(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other: SquareMatrixPoly) -> SquareMatrixPoly:
        if not isinstance(other, SquareMatrixPoly):
            return NotImplemented
        return self + other.scaled(-1)

    def scaled(self, scalar) -> SquareMatrixPoly:
        poly = Poly._coerce(scalar)
        if poly is None:
            raise TypeError("scale factor must be an exact scalar or Poly")
        return SquareMatrixPoly([[poly * e for e in row] for row in self.rows])

    def __mul__(self, other):
        if isinstance(other, SquareMatrixPoly):
            if self.size != other.size:
                raise DimensionError("matrix sizes differ")
            n = self.size
            cols = list(zip(*other.rows))
            out = []
            for row in self.rows:
                out.append(
                    [
                        sum((row[k] * cols[c][k] for k in range(n)), _POLY_ZERO)
                        for c in range(n)
                    ]
                )
            return SquareMatrixPoly(out)
        if isinstance(other, (int, Fraction, Poly)):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scaled(other)
        return NotImplemented

    def transpose(self) -> SquareMatrixPoly:
        return SquareMatrixPoly(list(zip(*self.rows)))

    def trace(self) -> Poly:
        return sum((self.rows[k][k] for k in range(self.size)), _POLY_ZERO)

    def __repr__(self) -> str:
        return f"SquareMatrixPoly({[list(r) for r in self.rows]!r})"


def jordan_shifted_power(base, m: int, j: int) -> SquareMatrixPoly:
    """j-th power of (base * id + J), J the m x m upper-shift nilpotent.

    Entry (r, c) is binom(j, c-r) * base^(j-c+r); the expansion truncates
    at the (m-1)-th superdiagonal because J^m = 0.
    """
    if m < 1:
        raise ValueError("Jordan block size must be positive")
    if j < 0:
        raise ValueError("exponent must be nonnegative")
    poly = Poly._coerce(base)
    if poly is None:
        raise TypeError("base must be an exact scalar or Poly")
    return _jordan_power_cached(poly, m, j)


@lru_cache(maxsize=None)
def _jordan_power_cached(base: Poly, m: int, j: int) -> SquareMatrixPoly:
    rows = []
    for r in range(m):
        row = []
        for c in range(m):
            s = c - r
            if 0 <= s <= j:
                row.append(gen_binomial(j, s) * base ** (j - s))
            else:
                row.append(_POLY_ZERO)
        rows.append(row)
    return SquareMatrixPoly(rows)
