"""Generic involutive semirings, their difference rings and fraction fields.

Elements of a difference ring are raw pairs ``(a, b)`` read as ``a - b``;
elements of a fraction field are raw pairs ``(s, t)`` read as ``s / t``.
Neither is ever reduced: equality goes through the cross relations, so the
constructions work over semirings that have no subtraction or gcd.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .errors import ZeroDenominator, ZeroInverse
from .scalars import Kind, Scalar, ScalarBackend

SAMPLING_FLOOR = 1e-3


class InvolutiveSemiring:
    """Interface: commutative semiring with an involution ``conj``."""

    name = "semiring"

    def zero(self): raise NotImplementedError
    def one(self): raise NotImplementedError
    def add(self, a, b): raise NotImplementedError
    def mul(self, a, b): raise NotImplementedError
    def conj(self, a): return a
    def equals(self, a, b) -> bool: return a == b
    def sample(self, rng: np.random.Generator): raise NotImplementedError

    def generators(self) -> list:
        """Small elements tried first by the probes."""
        return [self.one()]

    def is_zero(self, a) -> bool:
        return self.equals(a, self.zero())

    def nonzero_sample(self, rng: np.random.Generator, attempts: int = 100):
        for _ in range(attempts):
            a = self.sample(rng)
            if not self.is_zero(a):
                return a
        return self.one()

    def encode(self, a) -> Any:
        return a

    def __repr__(self):
        return self.name


class Naturals(InvolutiveSemiring):
    name = "nat"

    def zero(self): return 0
    def one(self): return 1
    def add(self, a, b): return a + b
    def mul(self, a, b): return a * b

    def sample(self, rng):
        return int(rng.integers(0, 1000))


class NonnegativeRationals(InvolutiveSemiring):
    name = "rational"

    def zero(self): return Fraction(0)
    def one(self): return Fraction(1)
    def add(self, a, b): return a + b
    def mul(self, a, b): return a * b

    def sample(self, rng):
        return Fraction(int(rng.integers(0, 100)), int(rng.integers(1, 100)))

    def encode(self, a):
        return str(a)


class GaussianIntegers(InvolutiveSemiring):
    """``Z[i]`` as pairs ``(re, im)`` with complex conjugation."""

    name = "gauss"

    def zero(self): return (0, 0)
    def one(self): return (1, 0)
    def add(self, a, b): return (a[0] + b[0], a[1] + b[1])
    def mul(self, a, b): return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
    def conj(self, a): return (a[0], -a[1])

    def generators(self):
        return [(1, 0), (0, 1), (-1, 0), (0, -1), (1, 1)]

    def sample(self, rng):
        return (int(rng.integers(-50, 51)), int(rng.integers(-50, 51)))

    def encode(self, a):
        return list(a)


class BackendScalars(InvolutiveSemiring):
    """The scalar semiring of a matrix backend."""

    def __init__(self, backend: ScalarBackend):
        self.backend = backend
        self.name = f"backend:{backend.kind.value}"

    def zero(self): return self.backend.zero()
    def one(self): return self.backend.one()
    def add(self, a, b): return a + b
    def mul(self, a, b): return a * b
    def conj(self, a): return a.conj()
    def equals(self, a, b): return a == b

    def generators(self):
        gens = [self.one()]
        if self.backend.kind is Kind.COMPLEX:
            gens.append(self.backend.scalar(1j))
        return gens

    def is_zero(self, a):
        return a.is_zero()

    def nonzero_sample(self, rng, attempts=100):
        # on floats "nonzero" has to mean clearly away from rounding noise
        floor = SAMPLING_FLOOR if self.backend.kind is Kind.COMPLEX else 0.0
        for _ in range(attempts):
            a = self.sample(rng)
            if not a.is_zero() and abs(a) > floor:
                return a
        return self.one()

    def sample(self, rng):
        kind = self.backend.kind
        if kind is Kind.COMPLEX:
            return self.backend.scalar(complex(*rng.standard_normal(2)) * 10.0 ** rng.uniform(-2, 2))
        if kind is Kind.RATIONAL:
            return self.backend.scalar(Fraction(int(rng.integers(-100, 101)), int(rng.integers(1, 100))))
        return self.backend.scalar(bool(rng.integers(0, 2)))

    def encode(self, a: Scalar):
        return a.to_json()


# difference ring and fraction field


class DifferenceRing(InvolutiveSemiring):
    """Formal differences ``a - b`` over an additively cancellable semiring."""

    def __init__(self, base: InvolutiveSemiring):
        self.base = base
        self.name = f"D({base.name})"

    def embed(self, a):
        return (a, self.base.zero())

    def zero(self): return self.embed(self.base.zero())
    def one(self): return self.embed(self.base.one())

    def add(self, x, y):
        S = self.base
        return (S.add(x[0], y[0]), S.add(x[1], y[1]))

    def neg(self, x):
        return (x[1], x[0])

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        S = self.base
        (a, b), (c, d) = x, y
        return (S.add(S.mul(a, c), S.mul(b, d)), S.add(S.mul(a, d), S.mul(b, c)))

    def conj(self, x):
        return (self.base.conj(x[0]), self.base.conj(x[1]))

    def equals(self, x, y):
        S = self.base
        return S.equals(S.add(x[0], y[1]), S.add(y[0], x[1]))

    def generators(self):
        gens = [self.embed(g) for g in self.base.generators()]
        return gens + [self.neg(g) for g in gens]

    def sample(self, rng):
        return (self.base.sample(rng), self.base.sample(rng))

    def encode(self, x):
        return [self.base.encode(x[0]), self.base.encode(x[1])]


class FractionField(InvolutiveSemiring):
    """Formal fractions ``s / t`` over a multiplicatively cancellable ring."""

    def __init__(self, base: InvolutiveSemiring):
        self.base = base
        self.name = f"Q({base.name})"

    def make(self, s, t):
        if self.base.is_zero(t):
            raise ZeroDenominator(f"denominator {self.base.encode(t)!r} is zero")
        return (s, t)

    def embed(self, r):
        return (r, self.base.one())

    def zero(self): return self.embed(self.base.zero())
    def one(self): return self.embed(self.base.one())

    def add(self, x, y):
        R = self.base
        (s, t), (u, v) = x, y
        return (R.add(R.mul(s, v), R.mul(u, t)), R.mul(t, v))

    def mul(self, x, y):
        R = self.base
        return (R.mul(x[0], y[0]), R.mul(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), x[1])

    def inverse(self, x):
        if self.base.is_zero(x[0]):
            raise ZeroInverse("zero has no multiplicative inverse")
        return (x[1], x[0])

    def conj(self, x):
        return (self.base.conj(x[0]), self.base.conj(x[1]))

    def equals(self, x, y):
        R = self.base
        return R.equals(R.mul(x[0], y[1]), R.mul(y[0], x[1]))

    def generators(self):
        return [self.embed(g) for g in self.base.generators()]

    def sample(self, rng):
        return (self.base.sample(rng), self.base.nonzero_sample(rng))

    def encode(self, x):
        return [self.base.encode(x[0]), self.base.encode(x[1])]


def field_of(base: InvolutiveSemiring) -> tuple[FractionField, Any]:
    """``Q(D(S))`` together with the embedding ``S -> Q(D(S))``."""
    diff = DifferenceRing(base)
    frac = FractionField(diff)
    return frac, lambda a: frac.embed(diff.embed(a))


# probes


@dataclass(frozen=True)
class ProbeVerdict:
    probe: str
    ok: bool
    checked: int
    witness: Any = None
    detail: str = ""

    def to_json(self) -> dict:
        out = {"probe": self.probe, "ok": self.ok, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


def characteristic_probe(s: InvolutiveSemiring, n_max: int) -> ProbeVerdict:
    """Check ``n . 1 != 0`` for ``1 <= n <= n_max``; report the first ``n`` that fails."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    acc = s.zero()
    for n in range(1, n_max + 1):
        acc = s.add(acc, s.one())
        if s.equals(acc, s.zero()):
            return ProbeVerdict("characteristic", False, n, n, f"{n} . 1 = 0")
    return ProbeVerdict("characteristic", True, n_max)


def _norm_sum(s: InvolutiveSemiring, items: Sequence) -> Any:
    total = s.zero()
    for a in items:
        total = s.add(total, s.mul(a, s.conj(a)))
    return total


def order_probe(s: InvolutiveSemiring, seed: int, trials: int, max_len: int = 4) -> ProbeVerdict:
    """Look for nonzero elements whose norms ``a . conj(a)`` sum to zero.

    Short lists of generators are tried before random lists, so small
    witnesses are found deterministically.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    checked = 0
    gens = [g for g in s.generators() if not s.is_zero(g)]
    for size in range(1, 4):
        for items in itertools.combinations_with_replacement(gens, size):
            checked += 1
            if s.is_zero(_norm_sum(s, items)):
                return ProbeVerdict("order", False, checked, [s.encode(a) for a in items])
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        items = [s.nonzero_sample(rng) for _ in range(int(rng.integers(1, max_len + 1)))]
        checked += 1
        if s.is_zero(_norm_sum(s, items)):
            return ProbeVerdict("order", False, checked, [s.encode(a) for a in items])
    return ProbeVerdict("order", True, checked)


def embedding_probe(s: InvolutiveSemiring, seed: int, trials: int) -> ProbeVerdict:
    """``S -> Q(D(S))`` is injective, additive, multiplicative and involution-preserving on samples."""
    frac, emb = field_of(s)
    rng = np.random.default_rng(seed)
    for k in range(trials):
        a, b = s.sample(rng), s.sample(rng)
        checks = {
            "add": frac.equals(emb(s.add(a, b)), frac.add(emb(a), emb(b))),
            "mul": frac.equals(emb(s.mul(a, b)), frac.mul(emb(a), emb(b))),
            "conj": frac.equals(emb(s.conj(a)), frac.conj(emb(a))),
            "faithful": frac.equals(emb(a), emb(b)) == s.equals(a, b),
        }
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            return ProbeVerdict("embedding", False, k + 1, [s.encode(a), s.encode(b)], ", ".join(bad))
    return ProbeVerdict("embedding", True, trials)


class Classification(str, enum.Enum):
    NONNEGATIVE_REALS = "NonnegativeReals"
    REALS = "Reals"
    COMPLEX_WITH_CONJUGATION = "ComplexWithConjugation"
    OTHER = "Other"


@dataclass(frozen=True)
class BackendClass:
    classification: Classification
    reason: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"classification": self.classification.value, "reason": self.reason,
                "evidence": self.evidence}


def _rational_sqrt2(bound: int) -> Fraction | None:
    for q in range(1, bound + 1):
        p = math.isqrt(2 * q * q)
        if p * p == 2 * q * q:
            return Fraction(p, q)
    return None


def _imaginary_unit(backend: ScalarBackend, bound: int = 20) -> Scalar | None:
    s = BackendScalars(backend)
    minus_one = -backend.one()
    if backend.kind is Kind.COMPLEX:
        candidates = [backend.scalar(1j), backend.scalar(-1j)]
    else:
        candidates = [backend.from_rational(Fraction(p, q))
                      for q in range(1, bound + 1) for p in range(-bound, bound + 1)]
    for j in candidates:
        if s.equals(s.mul(j, j), minus_one) and s.equals(j.conj(), -j):
            return j
    return None


def classify_backend(b: ScalarBackend, sqrt_bound: int = 1000) -> BackendClass:
    """Place a backend's scalars among the three involutive fields the theory allows."""
    s = BackendScalars(b)
    one = b.one()
    if s.equals(s.add(one, one), one):
        return BackendClass(Classification.OTHER,
                            "addition is not cancellable (1 + 1 = 1), no embedding into a field",
                            {"witness": "1 + 1 = 1"})
    char = characteristic_probe(s, 100)
    if not char.ok:
        return BackendClass(Classification.OTHER, f"positive characteristic {char.witness}")
    j = _imaginary_unit(b)
    if j is not None:
        return BackendClass(Classification.COMPLEX_WITH_CONJUGATION,
                            "has j with j^2 = -1 and conj(j) = -j", {"j": j.to_json()})
    if b.kind is Kind.RATIONAL:
        root = _rational_sqrt2(sqrt_bound)
        if root is None:
            return BackendClass(
                Classification.OTHER,
                "orderable characteristic-0 field, not Dedekind-complete",
                {"sqrt2_denominator_bound": sqrt_bound},
            )
    return BackendClass(Classification.REALS if b.has_negation else Classification.NONNEGATIVE_REALS,
                        "trivial involution without a square root of -1")


SEMIRINGS = {"nat": Naturals, "rational": NonnegativeRationals, "gauss": GaussianIntegers}
