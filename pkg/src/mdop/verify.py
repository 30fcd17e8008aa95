"""Seeded randomized and exhaustive small-box verification of the kernel
identities, producing a deterministic structured report.

Every comparison is exact; there are no tolerances anywhere.  Each check
draws from its own generator seeded by (seed, check name), so the report
is independent of execution order, and results are assembled sorted by
check name.  A failure is data in the report, not an exception.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iter_product
from typing import Callable

from . import algebra, expr, reps
from .algebra import AlgebraElement, FallingElement, Monomial
from .exact import Poly, gen_binomial
from .reps import Family, ModuleParams, ModuleVector

_FAMILIES = (Family.V, Family.VBAR)

# Generator box for the extremal-vector spot checks; the positive part of
# the algebra is generated from this box by repeated brackets with t.
_EXTREMAL_I_BOUND = 2
_EXTREMAL_J_BOUND = 2


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs of a verification run.

    samples counts draws per rank (and per family/Jordan size where those
    apply); checks selects a subset by name, None meaning all.
    """

    ranks: tuple[int, ...] = (1, 2)
    i_bound: int = 3
    j_bound: int = 3
    m_values: tuple[int, ...] = (1, 2)
    samples: int = 200
    seed: int = 7
    checks: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.ranks or any(n < 1 for n in self.ranks):
            raise ValueError("ranks must be a nonempty list of positive integers")
        if self.i_bound < 0 or self.j_bound < 0:
            raise ValueError("bounds must be nonnegative")
        if not self.m_values or any(m < 1 for m in self.m_values):
            raise ValueError("m_values must be a nonempty list of positive integers")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must fit in 64 unsigned bits")


@dataclass(frozen=True)
class CheckResult:
    name: str
    samples: int
    passed: bool
    counterexample: str | None
    elapsed: float


@dataclass(frozen=True)
class Report:
    config: SuiteConfig
    results: tuple[CheckResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self, include_timing: bool = True) -> dict:
        checks = []
        for r in self.results:
            row = {
                "name": r.name,
                "samples": r.samples,
                "passed": r.passed,
                "counterexample": r.counterexample,
            }
            if include_timing:
                row["elapsed_s"] = round(r.elapsed, 6)
            checks.append(row)
        cfg = self.config
        return {
            "passed": self.passed,
            "config": {
                "ranks": list(cfg.ranks),
                "i_bound": cfg.i_bound,
                "j_bound": cfg.j_bound,
                "m_values": list(cfg.m_values),
                "samples": cfg.samples,
                "seed": cfg.seed,
                "checks": None if cfg.checks is None else list(cfg.checks),
            },
            "checks": checks,
        }

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(f"[{status}] {r.name}  samples={r.samples}  time={r.elapsed:.3f}s")
            if r.counterexample is not None:
                lines.append(f"       counterexample: {r.counterexample}")
        failed = sum(1 for r in self.results if not r.passed)
        if not self.results:
            lines.append("result: PASS (no checks selected)")
        elif failed:
            lines.append(f"result: FAIL ({failed} of {len(self.results)} checks failed)")
        else:
            lines.append(f"result: PASS ({len(self.results)} checks)")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Samplers.  Everything below is fully determined by the passed-in rng.


def sample_monomial(rng: random.Random, rank: int, i_bound: int, j_bound: int) -> Monomial:
    """Uniform draw from |i| <= i_bound, 0 <= j <= j_bound, p,q in [1,rank]."""
    return Monomial(
        rng.randint(-i_bound, i_bound),
        rng.randint(0, j_bound),
        rng.randint(1, rank),
        rng.randint(1, rank),
    )


def _sample_coeff(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.randint(1, 3))


def sample_element(
    rng: random.Random,
    rank: int,
    i_bound: int,
    j_bound: int,
    allow_central: bool = False,
) -> AlgebraElement:
    """Short random combination (1-3 terms, small rational coefficients)."""
    terms: dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(1, 3)):
        mono = sample_monomial(rng, rank, i_bound, j_bound)
        terms[mono] = terms.get(mono, Fraction(0)) + _sample_coeff(rng)
    central = _sample_coeff(rng) if allow_central and rng.random() < 0.3 else 0
    return AlgebraElement(rank, terms, central)


def sample_falling_element(
    rng: random.Random,
    rank: int,
    i_bound: int,
    j_bound: int,
    allow_central: bool = False,
) -> FallingElement:
    terms: dict[Monomial, Fraction] = {}
    for _ in range(rng.randint(1, 3)):
        mono = sample_monomial(rng, rank, i_bound, j_bound)
        terms[mono] = terms.get(mono, Fraction(0)) + _sample_coeff(rng)
    central = _sample_coeff(rng) if allow_central and rng.random() < 0.3 else 0
    return FallingElement(rank, terms, central)


def sample_module_vector(
    rng: random.Random, params: ModuleParams, i_bound: int
) -> ModuleVector:
    """Short random vector; coefficients are degree <= 1 in the parameter."""
    entries: dict[tuple[int, int, int], Poly] = {}
    zero = Poly(())
    for _ in range(rng.randint(1, 3)):
        key = (
            rng.randint(-i_bound, i_bound),
            rng.randint(1, params.rank),
            rng.randint(1, params.m),
        )
        linear = _sample_coeff(rng) if rng.random() < 0.5 else 0
        poly = Poly((_sample_coeff(rng), linear))
        entries[key] = entries.get(key, zero) + poly
    return ModuleVector(params, entries)


# ---------------------------------------------------------------------------
# Checks.  Each takes (config, rng) and returns (samples run, first
# counterexample or None); counterexamples are printed in the CLI grammar.

_CHECKS: dict[str, Callable[[SuiteConfig, random.Random], tuple[int, str | None]]] = {}


def _check(name: str):
    def register(fn):
        _CHECKS[name] = fn
        return fn

    return register


def available_checks() -> tuple[str, ...]:
    return tuple(sorted(_CHECKS))


def _fmt(e) -> str:
    if isinstance(e, FallingElement):
        return expr.format_falling_element(e)
    if isinstance(e, AlgebraElement):
        return expr.format_element(e)
    return expr.format_module_vector(e)


@_check("antisymmetry")
def _check_antisymmetry(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            b = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            done += 1
            if algebra.central_bracket(a, b) != -algebra.central_bracket(b, a):
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}"
    return done, None


@_check("jacobi_plain")
def _check_jacobi_plain(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            b = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            c = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            done += 1
            total = (
                algebra.plain_bracket(a, algebra.plain_bracket(b, c))
                + algebra.plain_bracket(b, algebra.plain_bracket(c, a))
                + algebra.plain_bracket(c, algebra.plain_bracket(a, b))
            )
            if total:
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}; c = {_fmt(c)}"
    return done, None


@_check("jacobi_central")
def _check_jacobi_central(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            b = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            c = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            done += 1
            total = (
                algebra.central_bracket(a, algebra.central_bracket(b, c))
                + algebra.central_bracket(b, algebra.central_bracket(c, a))
                + algebra.central_bracket(c, algebra.central_bracket(a, b))
            )
            if total:
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}; c = {_fmt(c)}"
    return done, None


@_check("cocycle_identity")
def _check_cocycle_identity(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            b = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            c = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            done += 1
            total = (
                algebra.cocycle_psi(algebra.plain_bracket(a, b), c)
                + algebra.cocycle_psi(algebra.plain_bracket(b, c), a)
                + algebra.cocycle_psi(algebra.plain_bracket(c, a), b)
            )
            if total:
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}; c = {_fmt(c)}"
    return done, None


@_check("associativity")
def _check_associativity(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            b = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            c = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            done += 1
            left = algebra.canonical_product(algebra.canonical_product(a, b), c)
            right = algebra.canonical_product(a, algebra.canonical_product(b, c))
            if left != right:
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}; c = {_fmt(c)}"
    return done, None


@_check("falling_agreement")
def _check_falling_agreement(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            fa = sample_falling_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            fb = sample_falling_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
            done += 1
            direct = algebra.bracket_falling_direct(fa, fb)
            via = algebra.to_falling(
                algebra.central_bracket(algebra.from_falling(fa), algebra.from_falling(fb))
            )
            if direct != via:
                return done, f"n={n}; a = {_fmt(fa)}; b = {_fmt(fb)}"
    return done, None


@_check("grading_additivity")
def _check_grading_additivity(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            ma = sample_monomial(rng, n, cfg.i_bound, cfg.j_bound)
            mb = sample_monomial(rng, n, cfg.i_bound, cfg.j_bound)
            a = AlgebraElement.term(n, *ma, coeff=_sample_coeff(rng))
            b = AlgebraElement.term(n, *mb, coeff=_sample_coeff(rng))
            done += 1
            expected = algebra.degree(ma, n) + algebra.degree(mb, n)
            comps = algebra.homogeneous_components(algebra.central_bracket(a, b))
            if any(d != expected for d in comps):
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}"
    return done, None


@_check("sigma_bracket")
def _check_sigma_bracket(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            b = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            done += 1
            lhs = algebra.sigma(algebra.plain_bracket(a, b))
            rhs = algebra.plain_bracket(algebra.sigma(a), algebra.sigma(b))
            if lhs != rhs:
                return done, f"n={n}; a = {_fmt(a)}; b = {_fmt(b)}"
    return done, None


@_check("sigma_involution")
def _check_sigma_involution(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for _ in range(cfg.samples):
            a = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            done += 1
            if algebra.sigma(algebra.sigma(a)) != a:
                return done, f"n={n}; a = {_fmt(a)}"
    return done, None


@_check("sigma_identity_sign")
def _check_sigma_identity_sign(cfg, rng):
    done = 0
    for n in cfg.ranks:
        ident = algebra.embed_scalar(0, 0, n)
        done += 1
        if algebra.sigma(ident) != -ident:
            return done, f"n={n}; sigma(identity) != -identity"
    return done, None


@_check("twist_action")
def _check_twist_action(cfg, rng):
    done = 0
    for n in cfg.ranks:
        params_v = ModuleParams.formal(Family.V, n)
        params_b = ModuleParams.formal(Family.VBAR, n)
        for _ in range(cfg.samples):
            x = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            vb = sample_module_vector(rng, params_b, cfg.i_bound)
            v = ModuleVector(params_v, vb.entries)
            done += 1
            lhs = reps.act(x, vb)
            rhs = reps.act(algebra.sigma(x), v)
            if lhs.entries != rhs.entries:
                return done, f"n={n}; x = {_fmt(x)}; v = {_fmt(vb)}"
    return done, None


def _module_axiom(cfg, rng, family):
    done = 0
    for n in cfg.ranks:
        for m in cfg.m_values:
            params = ModuleParams.formal(family, n, m)
            for _ in range(cfg.samples):
                x = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
                y = sample_element(rng, n, cfg.i_bound, cfg.j_bound, allow_central=True)
                v = sample_module_vector(rng, params, cfg.i_bound)
                done += 1
                lhs = reps.act(algebra.central_bracket(x, y), v)
                rhs = reps.act(x, reps.act(y, v)) - reps.act(y, reps.act(x, v))
                if lhs != rhs:
                    return done, (
                        f"n={n} family={family.value} m={m}; "
                        f"x = {_fmt(x)}; y = {_fmt(y)}; v = {_fmt(v)}"
                    )
    return done, None


@_check("module_axiom_V")
def _check_module_axiom_v(cfg, rng):
    return _module_axiom(cfg, rng, Family.V)


@_check("module_axiom_Vbar")
def _check_module_axiom_vbar(cfg, rng):
    return _module_axiom(cfg, rng, Family.VBAR)


@_check("pairing_contravariance")
def _check_pairing_contravariance(cfg, rng):
    done = 0
    for n in cfg.ranks:
        params_w = ModuleParams.formal(Family.VBAR, n)
        params_v = params_w.dual()
        for _ in range(cfg.samples):
            x = sample_element(rng, n, cfg.i_bound, cfg.j_bound)
            w = sample_module_vector(rng, params_w, cfg.i_bound)
            v = sample_module_vector(rng, params_v, cfg.i_bound)
            done += 1
            lhs = reps.pairing(reps.act(x, w), v)
            rhs = -reps.pairing(w, reps.act(x, v))
            if lhs != rhs:
                return done, f"n={n}; x = {_fmt(x)}; w = {_fmt(w)}; v = {_fmt(v)}"
    return done, None


@_check("matrix_unit_bracket")
def _check_matrix_unit_bracket(cfg, rng):
    # Closed form of [D E[p,q], t E[p',q']], exhaustive over matrix slots.
    done = 0
    for n in cfg.ranks:
        for p, q, pp, qq in iter_product(range(1, n + 1), repeat=4):
            a = AlgebraElement.term(n, 0, 1, p, q)
            b = AlgebraElement.term(n, 1, 0, pp, qq)
            done += 1
            rhs_terms: dict[Monomial, Fraction] = {}
            if q == pp:
                for key in (Monomial(1, 0, p, qq), Monomial(1, 1, p, qq)):
                    rhs_terms[key] = rhs_terms.get(key, Fraction(0)) + 1
            if qq == p:
                key = Monomial(1, 1, pp, q)
                rhs_terms[key] = rhs_terms.get(key, Fraction(0)) - 1
            rhs = AlgebraElement(n, rhs_terms)
            if algebra.central_bracket(a, b) != rhs:
                return done, f"n={n}; a = D E[{p},{q}]; b = t E[{pp},{qq}]"
    return done, None


@_check("vector_field_bracket")
def _check_vector_field_bracket(cfg, rng):
    # [t^i [D]_1, t^k] = k t^(i+k) - delta(i,-k) binom(i+1, 2) N C on the
    # scalar embedding, checked both directly in the falling basis and
    # through the power-basis bracket.
    done = 0
    for n in cfg.ranks:
        diag = range(1, n + 1)
        for i in range(-cfg.i_bound, cfg.i_bound + 1):
            for k in range(-cfg.i_bound, cfg.i_bound + 1):
                a = FallingElement(n, {Monomial(i, 1, p, p): 1 for p in diag})
                b = FallingElement(n, {Monomial(k, 0, p, p): 1 for p in diag})
                done += 1
                terms = {Monomial(i + k, 0, p, p): Fraction(k) for p in diag} if k else {}
                central = -gen_binomial(i + 1, 2) * n if i == -k else Fraction(0)
                expected = FallingElement(n, terms, central)
                direct = algebra.bracket_falling_direct(a, b)
                via = algebra.to_falling(
                    algebra.central_bracket(algebra.from_falling(a), algebra.from_falling(b))
                )
                if direct != expected or via != expected:
                    return done, f"n={n}; i={i}; k={k}"
    return done, None


@_check("grade_bijection")
def _check_grade_bijection(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for family in _FAMILIES:
            params = ModuleParams.formal(family, n)
            for g in range(-100, 101):
                k, r = reps.slot_of_grade(params, g)
                done += 1
                if not (1 <= r <= n) or reps.grade_index(params, k, r) != g:
                    return done, f"n={n} family={family.value}; grade={g}"
            seen: set[int] = set()
            for k in range(-25, 26):
                for r in range(1, n + 1):
                    g = reps.grade_index(params, k, r)
                    done += 1
                    if g in seen or reps.slot_of_grade(params, g) != (k, r):
                        return done, f"n={n} family={family.value}; k={k} r={r}"
                    seen.add(g)
    return done, None


@_check("module_grading")
def _check_module_grading(cfg, rng):
    done = 0
    for n in cfg.ranks:
        for family in _FAMILIES:
            for m in cfg.m_values:
                params = ModuleParams.formal(family, n, m)
                for _ in range(cfg.samples):
                    mono = sample_monomial(rng, n, cfg.i_bound, cfg.j_bound)
                    x = AlgebraElement.term(n, *mono)
                    k = rng.randint(-cfg.i_bound, cfg.i_bound)
                    r = rng.randint(1, n)
                    s = rng.randint(1, m)
                    v = ModuleVector.basis(params, k, r, s)
                    done += 1
                    shift = algebra.degree(mono, n)
                    base = reps.grade_index(params, k, r)
                    image = reps.act(x, v)
                    bad = any(
                        reps.grade_index(params, k2, r2) != base + shift
                        for (k2, r2, _s2) in image.entries
                    )
                    if bad:
                        return done, (
                            f"n={n} family={family.value} m={m}; "
                            f"x = {_fmt(x)}; v = {_fmt(v)}"
                        )
    return done, None


@_check("no_hw_lw")
def _check_no_hw_lw(cfg, rng):
    # With a formal parameter no vector of the generic family-V module is
    # extremal: some bounded generator of positive grade and some of
    # negative grade must act nonzero on every homogeneous vector.
    done = 0
    for n in cfg.ranks:
        params = ModuleParams.formal(Family.V, n)
        gens = [
            AlgebraElement.term(n, i, j, p, q)
            for i in range(-_EXTREMAL_I_BOUND, _EXTREMAL_I_BOUND + 1)
            for j in range(_EXTREMAL_J_BOUND + 1)
            for p in range(1, n + 1)
            for q in range(1, n + 1)
        ]
        positive = [g for g in gens if _generator_grade(g, n) > 0]
        negative = [g for g in gens if _generator_grade(g, n) < 0]
        for _ in range(cfg.samples):
            k = rng.randint(-cfg.i_bound, cfg.i_bound)
            r = rng.randint(1, n)
            v = ModuleVector(params, {(k, r, 1): Poly((_sample_coeff(rng),))})
            done += 1
            if not any(reps.act(g, v) for g in positive):
                return done, f"n={n}; v = {_fmt(v)}; annihilated by the positive box"
            if not any(reps.act(g, v) for g in negative):
                return done, f"n={n}; v = {_fmt(v)}; annihilated by the negative box"
    return done, None


def _generator_grade(g: AlgebraElement, n: int) -> int:
    mono = next(iter(g.terms))
    return algebra.degree(mono, n)


# ---------------------------------------------------------------------------


def run_suite(config: SuiteConfig) -> Report:
    """Run the selected checks and assemble a deterministic report."""
    if config.checks is None:
        names = sorted(_CHECKS)
    else:
        for name in config.checks:
            if name not in _CHECKS:
                raise ValueError(f"unknown check name: {name}")
        names = sorted(set(config.checks))
    results = []
    for name in names:
        rng = random.Random(f"{config.seed}:{name}")
        start = time.perf_counter()
        samples, counterexample = _CHECKS[name](config, rng)
        elapsed = time.perf_counter() - start
        results.append(
            CheckResult(name, samples, counterexample is None, counterexample, elapsed)
        )
    return Report(config=config, results=tuple(results))
