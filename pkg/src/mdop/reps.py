"""Intermediate-series module families and their structure maps.

Two families act on the same index set: family V carries the natural
action of the operator algebra, family Vbar the twisted one obtained by
composing with the sigma automorphism.  Tensoring with a Jordan block of
size m replaces the scalar module parameter by an indecomposable
transformation; the central generator acts as zero on every family.

A vector is a finite-support map (k, r, s) -> Poly, where k shifts the
parameter exponent, r picks the matrix slot, and s the Jordan slot.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

from .algebra import AlgebraElement, embed_scalar
from .exact import DimensionError, Poly, jordan_shifted_power

_POLY_ZERO = Poly(())
_POLY_ONE = Poly.const(1)


class Family(Enum):
    V = "V"
    VBAR = "Vbar"


@dataclass(frozen=True)
class ModuleParams:
    """Which module a vector lives in.

    param is the module parameter as a polynomial in the formal
    indeterminate: the indeterminate itself for the generic module, a
    constant for a specialization, and the negated indeterminate for the
    pairing partner.  m is the Jordan block size (m = 1 is the plain
    intermediate-series case).
    """

    family: Family
    rank: int
    m: int = 1
    param: Poly = Poly.var()

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise DimensionError("rank must be a positive integer")
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError("Jordan block size must be positive")

    @staticmethod
    def formal(family: Family, rank: int, m: int = 1) -> ModuleParams:
        return ModuleParams(family, rank, m, Poly.var())

    @staticmethod
    def specialized(family: Family, rank: int, m: int, value) -> ModuleParams:
        return ModuleParams(family, rank, m, Poly.const(value))

    def dual(self) -> ModuleParams:
        """Parameters of the pairing partner: family V, negated parameter."""
        return ModuleParams(Family.V, self.rank, self.m, -self.param)


class ModuleVector:
    """Finite-support module vector with Poly coefficients."""

    __slots__ = ("params", "entries")

    def __init__(self, params: ModuleParams, entries: Mapping = ()):
        table: dict[tuple[int, int, int], Poly] = {}
        for key, coeff in dict(entries).items():
            k, r, s = key
            if not (1 <= r <= params.rank):
                raise DimensionError(f"matrix slot {r} out of range for rank {params.rank}")
            if not (1 <= s <= params.m):
                raise DimensionError(f"Jordan slot {s} out of range for m = {params.m}")
            poly = Poly._coerce(coeff)
            if poly is None:
                raise TypeError("entries must be exact scalars or Poly")
            if poly:
                table[(int(k), r, s)] = poly
        self.params = params
        self.entries = table

    @classmethod
    def _raw(cls, params: ModuleParams, entries: dict) -> ModuleVector:
        v = object.__new__(cls)
        v.params = params
        v.entries = entries
        return v

    @staticmethod
    def basis(params: ModuleParams, k: int, r: int, s: int = 1) -> ModuleVector:
        return ModuleVector(params, {(k, r, s): _POLY_ONE})

    @classmethod
    def zero(cls, params: ModuleParams) -> ModuleVector:
        return cls._raw(params, {})

    def sorted_entries(self) -> list[tuple[tuple[int, int, int], Poly]]:
        return sorted(self.entries.items())

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self.params == other.params and self.entries == other.entries

    def __add__(self, other: ModuleVector) -> ModuleVector:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        if self.params != other.params:
            raise DimensionError("module parameters differ")
        merged = dict(self.entries)
        for key, c in other.entries.items():
            acc = merged.get(key, _POLY_ZERO) + c
            if acc:
                merged[key] = acc
            elif key in merged:
                del merged[key]
        return ModuleVector._raw(self.params, merged)

    def __sub__(self, other: ModuleVector) -> ModuleVector:
        if not isinstance(other, ModuleVector):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> ModuleVector:
        return ModuleVector._raw(self.params, {k: -c for k, c in self.entries.items()})

    def __mul__(self, scalar):
        poly = Poly._coerce(scalar)
        if poly is None:
            return NotImplemented
        if not poly:
            return ModuleVector._raw(self.params, {})
        return ModuleVector._raw(
            self.params, {k: c * poly for k, c in self.entries.items()}
        )

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"ModuleVector(params={self.params!r}, entries={self.sorted_entries()!r})"


def _vbar_sign(j: int) -> int:
    # (-1)^(j+1), the twist sign of the Vbar action
    return 1 if j % 2 else -1


def act(x: AlgebraElement, v: ModuleVector) -> ModuleVector:
    """Apply an operator to a module vector.

    Family V:    (t^i D^j E[p,q]) v[k,q] = (param+k)^j v[i+k,p]
    Family Vbar: (t^i D^j E[p,q]) v[k,p] = (-1)^(j+1) (param+i+k)^j v[i+k,q]

    with the shifted power acting on the Jordan slot as the m x m matrix
    (param+shift)*id + nilpotent, raised to the j-th power.  The central
    coefficient of x acts as zero.
    """
    if not isinstance(x, AlgebraElement):
        raise TypeError("operators act through AlgebraElement values")
    params = v.params
    if x.rank != params.rank:
        raise DimensionError("operator and vector ranks differ")
    twisted = params.family is Family.VBAR
    m = params.m
    out: dict[tuple[int, int, int], Poly] = {}
    for mono, cx in x.terms.items():
        for (k, r, s), cv in v.entries.items():
            if twisted:
                if mono.p != r:
                    continue
                mat = jordan_shifted_power(params.param + (mono.i + k), m, mono.j)
                scale = cx * _vbar_sign(mono.j)
                target_r = mono.q
            else:
                if mono.q != r:
                    continue
                mat = jordan_shifted_power(params.param + k, m, mono.j)
                scale = cx
                target_r = mono.p
            contrib = cv * scale
            rows = mat.rows
            for s2 in range(1, m + 1):
                w = rows[s2 - 1][s - 1]
                if not w:
                    continue
                key = (mono.i + k, target_r, s2)
                acc = out.get(key)
                piece = contrib * w
                acc = piece if acc is None else acc + piece
                if acc:
                    out[key] = acc
                elif key in out:
                    del out[key]
    return ModuleVector._raw(params, out)


def grade_index(params: ModuleParams, k: int, r: int) -> int:
    """Integer grade of the basis slot (k, r); the Jordan slot is ungraded.

    Family V uses grade = k*rank + r - 1, family Vbar grade = k*rank
    + rank - r; both are bijections between (k, r) pairs and integers.
    """
    n = params.rank
    if not (1 <= r <= n):
        raise ValueError(f"matrix slot {r} out of range for rank {n}")
    if params.family is Family.V:
        return k * n + r - 1
    return k * n + n - r


def slot_of_grade(params: ModuleParams, grade: int) -> tuple[int, int]:
    """Inverse of grade_index."""
    n = params.rank
    k, rem = divmod(grade, n)
    if params.family is Family.V:
        return k, rem + 1
    return k, n - rem


def residue_slice(v: ModuleVector, m0: int) -> ModuleVector:
    """Entries whose grade is congruent to m0 modulo the rank."""
    n = v.params.rank
    if not (0 <= m0 < n):
        raise ValueError(f"residue class {m0} out of range for rank {n}")
    kept = {
        key: c
        for key, c in v.entries.items()
        if grade_index(v.params, key[0], key[1]) % n == m0
    }
    return ModuleVector._raw(v.params, kept)


def pairing(w: ModuleVector, v: ModuleVector) -> Poly:
    """Contravariant bilinear pairing of a Vbar vector against a V vector.

    Defined on basis slots by <w[k,p], v[k',q]> = 1 when k + k' = 0 and
    p = q, else 0.  The second argument must carry the negated parameter
    (see ModuleParams.dual); both sides must have m = 1.
    """
    if w.params.rank != v.params.rank:
        raise DimensionError("vector ranks differ")
    if w.params.family is not Family.VBAR or v.params.family is not Family.V:
        raise ValueError("pairing takes a Vbar vector first and a V vector second")
    if w.params.m != 1 or v.params.m != 1:
        raise ValueError("pairing is defined for m = 1 only")
    if v.params.param != -w.params.param:
        raise ValueError("pairing partner must carry the negated parameter")
    total = _POLY_ZERO
    for (k, p, _s), cw in w.entries.items():
        cv = v.entries.get((-k, p, 1))
        if cv is not None:
            total = total + cw * cv
    return total


@dataclass(frozen=True)
class WeightRecord:
    """Eigenvalues of the commuting generators on one m = 1 basis slot."""

    central: Fraction
    euler: Poly
    diagonal: tuple[Fraction, ...]


def _eigenvalue(image: ModuleVector, v: ModuleVector) -> Poly:
    key = v.sorted_entries()[0][0]
    eig = image.entries.get(key, _POLY_ZERO)
    if image != eig * v:
        raise ValueError("generator does not act as a scalar on this vector")
    return eig


def weight_of(params: ModuleParams, k: int, r: int) -> WeightRecord:
    """Weight of the basis slot (k, r), computed by acting with C, D, E[p,p].

    The eigenvalues are extracted from the actual action rather than from
    closed forms, so this doubles as a consistency check of act.
    """
    if params.m != 1:
        raise ValueError("weights are defined on the m = 1 basis only")
    v = ModuleVector.basis(params, k, r)
    n = params.rank
    central = _eigenvalue(act(AlgebraElement.central_term(n), v), v).constant_value()
    euler = _eigenvalue(act(embed_scalar(0, 1, n), v), v)
    diagonal = tuple(
        _eigenvalue(act(AlgebraElement.term(n, 0, 0, p, p), v), v).constant_value()
        for p in range(1, n + 1)
    )
    return WeightRecord(central, euler, diagonal)


def _is_poly_multiple(image: ModuleVector, v: ModuleVector) -> bool:
    # image = c * v for some scalar in the fraction field, checked by
    # cross-multiplication so no division is needed.
    if not image:
        return True
    ref, vref = v.sorted_entries()[0]
    wref = image.entries.get(ref, _POLY_ZERO)
    for key in set(image.entries) | set(v.entries):
        left = image.entries.get(key, _POLY_ZERO) * vref
        right = wref * v.entries.get(key, _POLY_ZERO)
        if left != right:
            return False
    return True


def _bounded_extremal_test(v: ModuleVector, j_bound: int, i_bound: int, direction: int) -> bool:
    if not v:
        raise ValueError("the zero vector is not a weight vector")
    n = v.params.rank
    for i in range(-i_bound, i_bound + 1):
        for j in range(j_bound + 1):
            for p in range(1, n + 1):
                for q in range(1, n + 1):
                    d = i * n + p - q
                    image = act(AlgebraElement.term(n, i, j, p, q), v)
                    if d == 0:
                        if not _is_poly_multiple(image, v):
                            return False
                    elif d * direction > 0 and image:
                        return False
    return True


def is_highest_weight_vector(v: ModuleVector, j_bound: int, i_bound: int) -> bool:
    """Bounded test of the highest-weight condition.

    Every generator t^i D^j E[p,q] with |i| <= i_bound and j <= j_bound is
    applied: grade-0 generators must scale v (a Poly multiple is allowed
    when the parameter is formal) and positive-grade generators must
    annihilate it.  This is a finite proxy for the unbounded condition;
    the positive part of the algebra is generated from such a box by
    repeated brackets with t.
    """
    return _bounded_extremal_test(v, j_bound, i_bound, +1)


def is_lowest_weight_vector(v: ModuleVector, j_bound: int, i_bound: int) -> bool:
    """Bounded test of the lowest-weight condition (negative grades kill v)."""
    return _bounded_extremal_test(v, j_bound, i_bound, -1)
