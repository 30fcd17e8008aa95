"""Matrix differential operators on the circle and their central extension.

Elements are finite rational combinations of basis words t^i D^j E[p,q],
where D = t d/dt and E[p,q] are the N x N matrix units, plus a rational
multiple of the central generator C.  Two bases are supported:

  * the power basis, with j counting D^j (canonical internally), and
  * the falling basis, with j counting [D]_j = D(D-1)...(D-j+1)
    = t^j (d/dt)^j, in which the defining 2-cocycle of the central
    extension has a closed form.

All operations are pure and exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, NamedTuple

from .exact import (
    DimensionError,
    falling_factorial,
    falling_to_power_coeffs,
    gen_binomial,
    power_to_falling_coeffs,
)

_ZERO = Fraction(0)


class Monomial(NamedTuple):
    """Basis word t^i D^j E[p,q]; in falling context j counts [D]_j."""

    i: int
    j: int
    p: int
    q: int


def degree(mono: Monomial, rank: int) -> int:
    """Principal grade of a basis word: i*rank + p - q.  C sits in grade 0."""
    return mono.i * rank + mono.p - mono.q


class _OperatorSum:
    """Finite combination of basis words plus a central coefficient.

    Shared implementation of the power-basis and falling-basis element
    types; the two are distinct classes so they never mix silently.
    """

    __slots__ = ("rank", "terms", "central")

    def __init__(self, rank: int, terms: Mapping[Monomial, object] | None = None, central=0):
        if not isinstance(rank, int) or rank < 1:
            raise DimensionError("rank must be a positive integer")
        table: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in dict(terms).items():
                if not isinstance(mono, Monomial):
                    mono = Monomial(*mono)
                if mono.j < 0:
                    raise ValueError(f"negative D power in {mono}")
                if not (1 <= mono.p <= rank and 1 <= mono.q <= rank):
                    raise DimensionError(f"matrix indices of {mono} out of range for rank {rank}")
                value = coeff if isinstance(coeff, Fraction) else Fraction(coeff)
                if value:
                    table[mono] = value
        self.rank = rank
        self.terms = table
        self.central = central if isinstance(central, Fraction) else Fraction(central)

    @classmethod
    def _raw(cls, rank: int, terms: dict[Monomial, Fraction], central: Fraction):
        # Internal fast path: inputs already validated and exact.
        el = object.__new__(cls)
        el.rank = rank
        el.terms = {m: c for m, c in terms.items() if c}
        el.central = central if isinstance(central, Fraction) else Fraction(central)
        return el

    @classmethod
    def zero(cls, rank: int):
        return cls._raw(rank, {}, _ZERO)

    @classmethod
    def term(cls, rank: int, i: int, j: int, p: int, q: int, coeff=1):
        return cls(rank, {Monomial(i, j, p, q): coeff})

    @classmethod
    def central_term(cls, rank: int, coeff=1):
        return cls(rank, {}, coeff)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items())

    def __bool__(self) -> bool:
        return bool(self.terms) or bool(self.central)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return (
            self.rank == other.rank
            and self.central == other.central
            and self.terms == other.terms
        )

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        if other.rank != self.rank:
            raise DimensionError("operand ranks differ")
        merged = dict(self.terms)
        for mono, c in other.terms.items():
            acc = merged.get(mono, _ZERO) + c
            if acc:
                merged[mono] = acc
            elif mono in merged:
                del merged[mono]
        return type(self)._raw(self.rank, merged, self.central + other.central)

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return type(self)._raw(
            self.rank, {m: -c for m, c in self.terms.items()}, -self.central
        )

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        factor = Fraction(scalar)
        if not factor:
            return type(self).zero(self.rank)
        return type(self)._raw(
            self.rank,
            {m: c * factor for m, c in self.terms.items()},
            self.central * factor,
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(rank={self.rank}, "
            f"terms={self.sorted_terms()!r}, central={self.central!r})"
        )


class AlgebraElement(_OperatorSum):
    """Combination of power-basis words t^i D^j E[p,q] plus central C."""


class FallingElement(_OperatorSum):
    """Combination of falling-basis words t^i [D]_j E[p,q] plus central C."""


def _check_pair(a, b, cls) -> None:
    if not isinstance(a, cls) or not isinstance(b, cls):
        raise TypeError(f"expected {cls.__name__} operands")
    if a.rank != b.rank:
        raise DimensionError("operand ranks differ")


@lru_cache(maxsize=None)
def _product_expansion(j: int, k: int) -> tuple[tuple[int, Fraction], ...]:
    # (D + k)^j = sum_s binom(j, s) k^s D^(j - s); zero summands dropped.
    out = []
    for s in range(j + 1):
        c = gen_binomial(j, s) * k**s
        if c:
            out.append((j - s, c))
    return tuple(out)


def canonical_product(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Composition product on the associative operator algebra.

    (t^i D^j E[p,q]) (t^k D^l E[p',q']) vanishes unless q = p' and equals
    t^(i+k) (D+k)^j D^l E[p,q'] otherwise.  Central parts of the inputs are
    ignored; the result has zero central part.
    """
    _check_pair(a, b, AlgebraElement)
    out: dict[Monomial, Fraction] = {}
    expansion = _product_expansion
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma.q != mb.p:
                continue
            c = ca * cb
            i = ma.i + mb.i
            for jexp, w in expansion(ma.j, mb.i):
                key = Monomial(i, jexp + mb.j, ma.p, mb.q)
                acc = out.get(key, _ZERO) + c * w
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return AlgebraElement._raw(a.rank, out, _ZERO)


def plain_bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Commutator ab - ba of the composition product (no central term)."""
    return canonical_product(a, b) - canonical_product(b, a)


def to_falling(a: AlgebraElement) -> FallingElement:
    """Rewrite D^j in terms of [D]_s; the central part passes through."""
    if not isinstance(a, AlgebraElement):
        raise TypeError("expected an AlgebraElement")
    out: dict[Monomial, Fraction] = {}
    for mono, c in a.terms.items():
        for s, w in enumerate(power_to_falling_coeffs(mono.j)):
            if not w:
                continue
            key = Monomial(mono.i, s, mono.p, mono.q)
            acc = out.get(key, _ZERO) + c * w
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return FallingElement._raw(a.rank, out, a.central)


def from_falling(f: FallingElement) -> AlgebraElement:
    """Rewrite [D]_j in terms of D^s; inverse of to_falling."""
    if not isinstance(f, FallingElement):
        raise TypeError("expected a FallingElement")
    out: dict[Monomial, Fraction] = {}
    for mono, c in f.terms.items():
        for s, w in enumerate(falling_to_power_coeffs(mono.j)):
            if not w:
                continue
            key = Monomial(mono.i, s, mono.p, mono.q)
            acc = out.get(key, _ZERO) + c * w
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return AlgebraElement._raw(f.rank, out, f.central)


def _psi_parity(j: int) -> int:
    # (-1)^j
    return -1 if j % 2 else 1


def _psi_falling_pair(ma: Monomial, mb: Monomial) -> Fraction:
    """Cocycle value on a pair of falling-basis words.

    psi(t^i [D]_j E[p,q], t^k [D]_l E[p',q']) is nonzero only for i = -k,
    q = p', p = q' (the trace pairing of the matrix units) and then equals
    (-1)^j j! l! binom(i+j, j+l+1).
    """
    if ma.i != -mb.i or ma.q != mb.p or ma.p != mb.q:
        return _ZERO
    j, l = ma.j, mb.j
    return (
        _psi_parity(j)
        * math.factorial(j)
        * math.factorial(l)
        * gen_binomial(ma.i + j, j + l + 1)
    )


def cocycle_psi(a: AlgebraElement, b: AlgebraElement) -> Fraction:
    """The defining 2-cocycle of the central extension.

    Both arguments are rewritten into the falling basis, where the cocycle
    acts on basis pairs through _psi_falling_pair; central parts of the
    inputs contribute nothing.
    """
    _check_pair(a, b, AlgebraElement)
    fa = to_falling(a)
    fb = to_falling(b)
    total = _ZERO
    for ma, ca in fa.terms.items():
        for mb, cb in fb.terms.items():
            w = _psi_falling_pair(ma, mb)
            if w:
                total += ca * cb * w
    return total


def central_bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bracket of the central extension: plain bracket plus psi(a, b) C."""
    out = plain_bracket(a, b)
    return AlgebraElement._raw(a.rank, out.terms, cocycle_psi(a, b))


def bracket_falling_direct(a: FallingElement, b: FallingElement) -> FallingElement:
    """Centrally extended bracket computed entirely in the falling basis.

    For basis words t^i [D]_j A and t^k [D]_l B (A, B matrix units):

      sum_{s<=j} binom(j,s) [k+l]_s t^(i+k) [D]_(j+l-s) AB
    - sum_{s<=l} binom(l,s) [i+j]_s t^(i+k) [D]_(j+l-s) BA
    + psi-term on the central generator,

    where [n]_s is the integer falling power.  Must agree with converting
    to the power basis, applying central_bracket, and converting back.
    """
    _check_pair(a, b, FallingElement)
    out: dict[Monomial, Fraction] = {}
    central = _ZERO

    def accumulate(key: Monomial, value: Fraction) -> None:
        acc = out.get(key, _ZERO) + value
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]

    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            c = ca * cb
            i, j, k, l = ma.i, ma.j, mb.i, mb.j
            if ma.q == mb.p:
                for s in range(j + 1):
                    w = gen_binomial(j, s) * falling_factorial(k + l, s)
                    if w:
                        accumulate(Monomial(i + k, j + l - s, ma.p, mb.q), c * w)
            if mb.q == ma.p:
                for s in range(l + 1):
                    w = gen_binomial(l, s) * falling_factorial(i + j, s)
                    if w:
                        accumulate(Monomial(i + k, j + l - s, mb.p, ma.q), -c * w)
            psi = _psi_falling_pair(ma, mb)
            if psi:
                central += c * psi
    return FallingElement._raw(a.rank, out, central)


def homogeneous_components(a: AlgebraElement) -> dict[int, AlgebraElement]:
    """Split an element by principal grade; the zero element gives {}."""
    buckets: dict[int, dict[Monomial, Fraction]] = {}
    for mono, c in a.terms.items():
        buckets.setdefault(degree(mono, a.rank), {})[mono] = c
    if a.central:
        buckets.setdefault(0, {})
    return {
        d: AlgebraElement._raw(a.rank, buckets[d], a.central if d == 0 else _ZERO)
        for d in sorted(buckets)
    }


def _sigma_sign(j: int) -> int:
    # (-1)^(j+1)
    return 1 if j % 2 else -1


def sigma(a: AlgebraElement) -> AlgebraElement:
    """The order-2 twist automorphism of the centerless algebra.

    t^i D^j E[p,q] maps to (-1)^(j+1) t^i (D+i)^j E[q,p]; the identity
    matrix element maps to its negative.  Undefined on the extension, so a
    nonzero central part is rejected.
    """
    if not isinstance(a, AlgebraElement):
        raise TypeError("expected an AlgebraElement")
    if a.central:
        raise ValueError("sigma is defined on central-free elements only")
    out: dict[Monomial, Fraction] = {}
    for mono, c in a.terms.items():
        scale = c * _sigma_sign(mono.j)
        for jexp, w in _product_expansion(mono.j, mono.i):
            key = Monomial(mono.i, jexp, mono.q, mono.p)
            acc = out.get(key, _ZERO) + scale * w
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return AlgebraElement._raw(a.rank, out, _ZERO)


def embed_scalar(i: int, j: int, rank: int) -> AlgebraElement:
    """t^i D^j times the identity matrix: the scalar-operator embedding."""
    return AlgebraElement(
        rank, {Monomial(i, j, p, p): Fraction(1) for p in range(1, rank + 1)}
    )
