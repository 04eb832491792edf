"""Finite-dimensional spaces and matrices as a dagger category.

Convention: a morphism ``f: A -> B`` stores a ``B.dim x A.dim`` matrix
acting on column vectors.  Composition is written in diagrammatic order,
``compose(f, g)`` meaning "first f, then g", whose matrix is ``G @ F``.
The monoidal structure is strict.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, NotEndomorphism, ObjectMismatch
from .scalars import COMPLEX, Kind, Scalar, ScalarBackend


@dataclass(frozen=True)
class SpaceObject:
    name: str
    dim: int
    unit: bool = False

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dimension must be nonnegative")
        if self.unit and self.dim != 1:
            raise ValueError("the tensor unit has dimension 1")

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    def __str__(self):
        return self.name


ZERO = SpaceObject("0", 0)
UNIT = SpaceObject("I", 1, unit=True)


@dataclass(frozen=True, eq=False)
class Morphism:
    dom: SpaceObject
    cod: SpaceObject
    matrix: np.ndarray = field(repr=False)
    backend: ScalarBackend = COMPLEX

    def __post_init__(self):
        m = np.asarray(self.matrix)
        if m.dtype != np.dtype(self.backend.dtype):
            m = m.astype(self.backend.dtype)
        if m.ndim != 2 or m.shape != (self.cod.dim, self.dom.dim):
            raise DimensionMismatch(
                f"matrix of shape {m.shape} does not fit {self.dom.name}({self.dom.dim}) -> "
                f"{self.cod.name}({self.cod.dim})"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_rows(cls, dom, cod, rows, backend: ScalarBackend = COMPLEX) -> "Morphism":
        if cod.dim == 0 or dom.dim == 0:
            return cls(dom, cod, backend.zeros(cod.dim, dom.dim), backend)
        return cls(dom, cod, backend.asarray(rows), backend)

    def entry(self, row: int, col: int) -> Scalar:
        return Scalar(self.backend, self.backend.coerce(self.matrix[row, col]))

    def distance(self, other: "Morphism") -> float:
        return self.backend.distance(self.matrix, other.matrix)

    def close(self, other: "Morphism") -> bool:
        return (
            self.dom == other.dom
            and self.cod == other.cod
            and self.backend.allclose(self.matrix, other.matrix)
        )

    def norm(self) -> float:
        return self.backend.distance(self.matrix, self.backend.zeros(*self.matrix.shape))

    # operator sugar: ``f >> g`` is ``compose(f, g)``

    def __rshift__(self, other):
        return compose(self, other)

    def __add__(self, other):
        return add(self, other)

    @property
    def dagger(self) -> "Morphism":
        return dagger(self)

    def is_isometry(self) -> bool:
        return compose(self, dagger(self)).close(identity(self.dom, self.backend))

    def is_unitary(self) -> bool:
        return self.is_isometry() and compose(dagger(self), self).close(identity(self.cod, self.backend))

    def is_self_adjoint(self) -> bool:
        return self.close(dagger(self))

    def __repr__(self):
        return f"Morphism({self.dom.name} -> {self.cod.name}, {self.matrix.tolist()!r})"


def identity(obj: SpaceObject, backend: ScalarBackend = COMPLEX) -> Morphism:
    return Morphism(obj, obj, backend.eye(obj.dim), backend)


def zero_morphism(dom: SpaceObject, cod: SpaceObject, backend: ScalarBackend = COMPLEX) -> Morphism:
    return Morphism(dom, cod, backend.zeros(cod.dim, dom.dim), backend)


def _same_backend(*fs: Morphism) -> ScalarBackend:
    backend = fs[0].backend
    for f in fs[1:]:
        backend.check(f.backend)
    return backend


def dagger(f: Morphism) -> Morphism:
    return Morphism(f.cod, f.dom, f.backend.conj_array(f.matrix.T), f.backend)


def compose(f: Morphism, g: Morphism, *rest: Morphism) -> Morphism:
    """Diagrammatic composite ``f ; g ; ...``."""
    backend = _same_backend(f, g, *rest)
    if f.cod != g.dom:
        raise ObjectMismatch(f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}")
    out = Morphism(f.dom, g.cod, backend.matmul(g.matrix, f.matrix), backend)
    return compose(out, *rest) if rest else out


def add(f: Morphism, g: Morphism, *rest: Morphism) -> Morphism:
    backend = _same_backend(f, g, *rest)
    for h in (g, *rest):
        if (h.dom, h.cod) != (f.dom, f.cod):
            raise ObjectMismatch(f"cannot add {f.dom}->{f.cod} and {h.dom}->{h.cod}")
    total = f.matrix.copy()
    for h in (g, *rest):
        total = total + h.matrix
    return Morphism(f.dom, f.cod, total, backend)


def sum_morphisms(fs: Sequence[Morphism], dom: SpaceObject, cod: SpaceObject,
                  backend: ScalarBackend = COMPLEX) -> Morphism:
    """Sum of a possibly empty family of parallel morphisms."""
    out = zero_morphism(dom, cod, backend)
    for f in fs:
        out = add(out, f)
    return out


def n_fold(n: int, f: Morphism) -> Morphism:
    """``n . f = f + ... + f`` (n copies); ``0 . f`` is the zero morphism."""
    return sum_morphisms([f] * n, f.dom, f.cod, f.backend)


def scalar_action(a: Scalar, f: Morphism) -> Morphism:
    f.backend.check(a.backend)
    if f.backend.kind is Kind.BOOLEAN:
        m = f.matrix & a.value
    elif f.backend.kind is Kind.RATIONAL:
        m = np.array([[a.value * x for x in row] for row in f.matrix], dtype=object).reshape(f.matrix.shape)
    else:
        m = a.value * f.matrix
    return Morphism(f.dom, f.cod, m, f.backend)


def trace(f: Morphism) -> Scalar:
    if f.dom != f.cod:
        raise NotEndomorphism(f"{f.dom} -> {f.cod} is not an endomorphism")
    total = f.backend.zero()
    for i in range(f.dom.dim):
        total = total + f.entry(i, i)
    return total


# monoidal structure


def tensor_objects(a: SpaceObject, b: SpaceObject) -> SpaceObject:
    if a.unit:
        return b
    if b.unit:
        return a
    return SpaceObject(f"{a.name}⊗{b.name}", a.dim * b.dim)


def tensor(f: Morphism, g: Morphism) -> Morphism:
    backend = _same_backend(f, g)
    m = np.kron(f.matrix, g.matrix)
    if backend.kind is Kind.RATIONAL:
        m = np.array([Fraction(x) for x in m.flat], dtype=object).reshape(m.shape)
    return Morphism(tensor_objects(f.dom, g.dom), tensor_objects(f.cod, g.cod), m, backend)


# biproducts


def biproduct_object(objects: Sequence[SpaceObject]) -> SpaceObject:
    if not objects:
        return ZERO
    if len(objects) == 1:
        return objects[0]
    return SpaceObject("⊕".join(o.name for o in objects), sum(o.dim for o in objects))


@dataclass(frozen=True)
class Biproduct:
    object: SpaceObject
    factors: tuple
    injections: tuple
    projections: tuple
    diagonal: Morphism | None = None
    codiagonal: Morphism | None = None

    def offsets(self) -> list[int]:
        out, pos = [], 0
        for o in self.factors:
            out.append(pos)
            pos += o.dim
        return out


def biproduct_pack(objects: Sequence[SpaceObject], backend: ScalarBackend = COMPLEX) -> Biproduct:
    """Dagger biproduct of a list of objects, with block injections.

    When all factors are the same object the n-fold diagonal and codiagonal
    are included as well.
    """
    objects = tuple(objects)
    total = biproduct_object(objects)
    injections, pos = [], 0
    for o in objects:
        m = backend.zeros(total.dim, o.dim)
        for k in range(o.dim):
            m[pos + k, k] = backend.coerce(1)
        injections.append(Morphism(o, total, m, backend))
        pos += o.dim
    projections = tuple(dagger(i) for i in injections)
    diag = codiag = None
    if objects and all(o == objects[0] for o in objects):
        diag = pair([identity(objects[0], backend) for _ in objects], target=total)
        codiag = copair([identity(objects[0], backend) for _ in objects], source=total)
    return Biproduct(total, objects, tuple(injections), projections, diag, codiag)


def diagonal(obj: SpaceObject, n: int, backend: ScalarBackend = COMPLEX) -> Morphism:
    return biproduct_pack([obj] * n, backend).diagonal


def codiagonal(obj: SpaceObject, n: int, backend: ScalarBackend = COMPLEX) -> Morphism:
    return biproduct_pack([obj] * n, backend).codiagonal


def pair(maps: Sequence[Morphism], target: SpaceObject | None = None) -> Morphism:
    """The unique ``x: X -> (+)_k B_k`` with ``x ; p_k = maps[k]``."""
    backend = _same_backend(*maps)
    dom = maps[0].dom
    for m in maps:
        if m.dom != dom:
            raise ObjectMismatch("pairing needs a common domain")
    target = target or biproduct_object([m.cod for m in maps])
    return Morphism(dom, target, np.vstack([m.matrix for m in maps]), backend)


def copair(maps: Sequence[Morphism], source: SpaceObject | None = None) -> Morphism:
    """The unique ``(f g ...): (+)_k A_k -> B`` with ``i_k ; (f g ...) = maps[k]``."""
    backend = _same_backend(*maps)
    cod = maps[0].cod
    for m in maps:
        if m.cod != cod:
            raise ObjectMismatch("copairing needs a common codomain")
    source = source or biproduct_object([m.dom for m in maps])
    return Morphism(source, cod, np.hstack([m.matrix for m in maps]), backend)


def direct_sum(maps: Sequence[Morphism]) -> Morphism:
    """Block-diagonal ``f1 (+) f2 (+) ...``."""
    backend = _same_backend(*maps)
    dom = biproduct_object([m.dom for m in maps])
    cod = biproduct_object([m.cod for m in maps])
    out = backend.zeros(cod.dim, dom.dim)
    r = c = 0
    for m in maps:
        out[r:r + m.cod.dim, c:c + m.dom.dim] = m.matrix
        r += m.cod.dim
        c += m.dom.dim
    return Morphism(dom, cod, out, backend)


def enriched_sum(f: Morphism, g: Morphism) -> Morphism:
    """``f + g`` rebuilt from biproduct structure alone: ``Delta ; (f (+) g) ; Nabla``."""
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise ObjectMismatch("enriched sum needs parallel morphisms")
    b = f.backend
    return compose(diagonal(f.dom, 2, b), direct_sum([f, g]), codiagonal(f.cod, 2, b))


def boxplus(f: Morphism, g: Morphism) -> Morphism:
    """``Delta ; alpha^-1 ; (f g)`` with ``alpha^-1 = p1;i1 + p2;i2``."""
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise ObjectMismatch("boxplus needs parallel morphisms")
    bp = biproduct_pack([f.dom, f.dom], f.backend)
    (i1, i2), (p1, p2) = bp.injections, bp.projections
    alpha_inv = add(compose(p1, i1), compose(p2, i2))
    return compose(bp.diagonal, alpha_inv, copair([f, g], source=bp.object))
