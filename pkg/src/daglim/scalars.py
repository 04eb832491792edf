"""Involutive scalar backends.

Complex doubles compare up to a tolerance.  Rationals are exact, and the
Boolean semiring {0, 1} has ``1 + 1 = 1``.  Everything above this module is
written against :class:`ScalarBackend` and :class:`Scalar`.
"""
from __future__ import annotations

import enum
import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from .errors import BackendMismatch, InvalidInput, NegativeInput, UnsupportedOperation

DEFAULT_EPSILON = 1e-9


class Kind(str, enum.Enum):
    COMPLEX = "complex-f64"
    RATIONAL = "rational"
    BOOLEAN = "boolean"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidInput(f"cannot parse {text!r} as a fraction") from exc


@dataclass(frozen=True)
class ScalarBackend:
    kind: Kind = Kind.COMPLEX
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.COMPLEX and not self.epsilon > 0:
            raise ValueError("ComplexDouble backend needs epsilon > 0")
        if self.epsilon < 0:
            raise ValueError("epsilon must be nonnegative")

    # capabilities

    @property
    def exact(self) -> bool:
        return self.kind is not Kind.COMPLEX

    @property
    def has_negation(self) -> bool:
        return self.kind is not Kind.BOOLEAN

    @property
    def dtype(self):
        return {Kind.COMPLEX: np.complex128, Kind.RATIONAL: object, Kind.BOOLEAN: np.bool_}[self.kind]

    # payload handling

    def coerce(self, value: Any):
        """Convert a Python/JSON value into this backend's raw payload."""
        if isinstance(value, Scalar):
            self.check(value.backend)
            return value.value
        if self.kind is Kind.COMPLEX:
            if isinstance(value, (list, tuple)):
                if len(value) != 2:
                    raise InvalidInput(f"complex scalar must be [re, im], got {value!r}")
                return complex(float(value[0]), float(value[1]))
            if isinstance(value, str):
                if "/" in value:
                    return complex(float(parse_fraction(value)))
                try:
                    return complex(value.replace(" ", ""))
                except ValueError as exc:
                    raise InvalidInput(f"cannot parse {value!r} as a complex number") from exc
            if isinstance(value, numbers.Number):
                return complex(value)
        elif self.kind is Kind.RATIONAL:
            if isinstance(value, str):
                return parse_fraction(value)
            if isinstance(value, (numbers.Rational, bool)):
                return Fraction(int(value)) if isinstance(value, bool) else Fraction(value)
            if isinstance(value, float) and math.isfinite(value):
                return Fraction(value)
        else:
            if isinstance(value, (bool, np.bool_)):
                return bool(value)
            if isinstance(value, numbers.Integral) and int(value) in (0, 1):
                return bool(value)
        raise InvalidInput(f"{value!r} is not a valid {self.kind.value} scalar")

    def scalar(self, value: Any) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def zero(self) -> "Scalar":
        return self.scalar(0)

    def one(self) -> "Scalar":
        return self.scalar(1)

    def from_rational(self, q) -> "Scalar":
        q = Fraction(q)
        if self.kind is Kind.COMPLEX:
            return Scalar(self, complex(q.numerator / q.denominator))
        if self.kind is Kind.RATIONAL:
            return Scalar(self, q)
        if q not in (0, 1):
            raise UnsupportedOperation(f"{q} is not an element of the Boolean semiring")
        return Scalar(self, bool(q))

    def check(self, other: "ScalarBackend") -> None:
        if other.kind is not self.kind:
            raise BackendMismatch(f"{self.kind.value} vs {other.kind.value}")

    # raw array helpers used by the matrix layer

    def asarray(self, rows) -> np.ndarray:
        rows = list(rows)
        if not rows:
            return np.zeros((0, 0), dtype=self.dtype)
        out = np.empty((len(rows), len(rows[0])), dtype=self.dtype)
        for i, row in enumerate(rows):
            if len(row) != out.shape[1]:
                raise InvalidInput("ragged matrix rows")
            for j, v in enumerate(row):
                out[i, j] = self.coerce(v)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.kind is Kind.RATIONAL:
            return np.full((rows, cols), Fraction(0), dtype=object)
        return np.zeros((rows, cols), dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros(n, n)
        for i in range(n):
            out[i, i] = self.coerce(1)
        return out

    def conj_array(self, a: np.ndarray) -> np.ndarray:
        if self.kind is Kind.COMPLEX:
            return a.conj()
        return a.copy()

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.kind is Kind.RATIONAL and (a.size == 0 or b.size == 0):
            return self.zeros(a.shape[0], b.shape[1])
        out = a @ b
        if self.kind is Kind.RATIONAL:
            out = _fractions(out)
        return out

    def distance(self, a: np.ndarray, b: np.ndarray) -> float:
        """Max-absolute-entry distance; Boolean entries count as 0/1."""
        if a.shape != b.shape:
            return math.inf
        if a.size == 0:
            return 0.0
        if self.kind is Kind.BOOLEAN:
            return float(np.any(a != b))
        if self.kind is Kind.RATIONAL:
            return float(max(abs(x - y) for x, y in zip(a.flat, b.flat)))
        return float(np.max(np.abs(a - b)))

    def allclose(self, a: np.ndarray, b: np.ndarray) -> bool:
        if a.shape != b.shape:
            return False
        if self.exact:
            return bool(np.array_equal(a, b))
        return self.distance(a, b) <= self.epsilon

    def __str__(self):
        return self.kind.value


def _fractions(a: np.ndarray) -> np.ndarray:
    # object matmul of Fractions can produce plain ints for empty sums
    out = np.empty(a.shape, dtype=object)
    for idx, v in np.ndenumerate(a):
        out[idx] = Fraction(v)
    return out


COMPLEX = ScalarBackend(Kind.COMPLEX)
RATIONAL = ScalarBackend(Kind.RATIONAL, 0.0)
BOOLEAN = ScalarBackend(Kind.BOOLEAN, 0.0)


def backend_named(name: str, epsilon: float = DEFAULT_EPSILON) -> ScalarBackend:
    aliases = {"complex": Kind.COMPLEX, "complex-f64": Kind.COMPLEX, "rational": Kind.RATIONAL,
               "boolean": Kind.BOOLEAN, "bool": Kind.BOOLEAN}
    try:
        kind = aliases[name.lower()]
    except KeyError:
        raise InvalidInput(f"unknown backend {name!r}") from None
    return ScalarBackend(kind, epsilon if kind is Kind.COMPLEX else 0.0)


@dataclass(frozen=True, eq=False)
class Scalar:
    """Immutable scalar; ``==`` is tolerance-aware on the complex backend."""

    backend: ScalarBackend
    value: Any

    __hash__ = None

    def _other(self, other) -> "Scalar":
        if not isinstance(other, Scalar):
            other = self.backend.scalar(other)
        self.backend.check(other.backend)
        return other

    def __add__(self, other):
        other = self._other(other)
        if self.backend.kind is Kind.BOOLEAN:
            return Scalar(self.backend, self.value or other.value)
        return Scalar(self.backend, self.value + other.value)

    __radd__ = __add__

    def __mul__(self, other):
        other = self._other(other)
        if self.backend.kind is Kind.BOOLEAN:
            return Scalar(self.backend, self.value and other.value)
        return Scalar(self.backend, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        if not self.backend.has_negation:
            raise UnsupportedOperation("the Boolean semiring has no additive inverses")
        return Scalar(self.backend, -self.value)

    def __sub__(self, other):
        return self + (-self._other(other))

    def conj(self) -> "Scalar":
        if self.backend.kind is Kind.COMPLEX:
            return Scalar(self.backend, self.value.conjugate())
        return self

    def __abs__(self) -> float:
        return float(abs(self.value))

    def is_zero(self) -> bool:
        if self.backend.kind is Kind.COMPLEX:
            return abs(self.value) <= self.backend.epsilon
        return not self.value

    def is_self_adjoint(self) -> bool:
        return self == self.conj()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = self.backend.scalar(other)
            except InvalidInput:
                return NotImplemented
        if other.backend.kind is not self.backend.kind:
            return False
        if self.backend.kind is Kind.COMPLEX:
            return abs(self.value - other.value) <= self.backend.epsilon
        return self.value == other.value

    def to_json(self):
        if self.backend.kind is Kind.COMPLEX:
            return [self.value.real, self.value.imag]
        if self.backend.kind is Kind.RATIONAL:
            return f"{self.value.numerator}/{self.value.denominator}"
        return int(self.value)

    def __repr__(self):
        return f"Scalar({self.backend.kind.value}, {self.value!r})"

    def __str__(self):
        if self.backend.kind is Kind.COMPLEX:
            return format_complex(self.value)
        if self.backend.kind is Kind.RATIONAL:
            return str(self.value)
        return str(int(self.value))


def format_complex(z: complex, digits: int = 12) -> str:
    re, im = z.real, z.imag
    if im == 0:
        return f"{re:.{digits}g}"
    if re == 0:
        return f"{im:.{digits}g}i"
    sign = "+" if im > 0 else "-"
    return f"{re:.{digits}g}{sign}{abs(im):.{digits}g}i"


def sqrt_nonneg(a: Scalar) -> Scalar:
    """Nonnegative square root of a self-adjoint, nonnegative complex scalar."""
    if a.backend.kind is not Kind.COMPLEX:
        raise UnsupportedOperation(f"no square roots on the {a.backend.kind.value} backend")
    eps = a.backend.epsilon
    z = a.value
    if abs(z.imag) > eps:
        raise NegativeInput(f"{z} is not self-adjoint")
    if z.real < -eps:
        raise NegativeInput(f"{z.real} is negative")
    return Scalar(a.backend, complex(math.sqrt(max(z.real, 0.0)), 0.0))

