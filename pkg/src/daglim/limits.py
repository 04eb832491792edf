"""Dagger limits built from dagger equalizers and dagger biproducts.

The production path is the constructive one: a limit over a supporting
subset is the dagger intersection of one dagger equalizer per object, each
living inside the biproduct of the supporting objects.  Nothing here
solves the cone equations directly.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from . import linalg
from .diagram import Diagram, close, resolve_omega
from .errors import EmptyFamily, NotComparable, NotIsometry, ObjectMismatch, UnsupportedOperation
from .matcat import (
    ZERO,
    Morphism,
    SpaceObject,
    biproduct_pack,
    compose,
    dagger,
    identity,
    sum_morphisms,
    trace,
)
from .scalars import COMPLEX, Kind, Scalar, ScalarBackend


class Equalizer(NamedTuple):
    object: SpaceObject
    map: Morphism


class Intersection(NamedTuple):
    object: SpaceObject
    map: Morphism
    projections: list


def _require_complex(backend: ScalarBackend, what: str) -> None:
    if backend.kind is not Kind.COMPLEX:
        raise UnsupportedOperation(f"{what} needs the complex-f64 backend, not {backend.kind.value}")


def dagger_equalizer(
    family: Sequence[Morphism], *, rng: np.random.Generator | None = None, name: str = "E"
) -> Equalizer:
    """Isometry ``e: E -> A`` onto the subspace where every ``f_i`` agrees.

    ``rng`` rotates the returned basis by a random unitary; the equalizer is
    only defined up to such a rotation.  On the rational backend the basis
    is computed exactly when every norm involved is rational.
    """
    if not family:
        raise EmptyFamily("the equalizer of an empty family is undefined here")
    first = family[0]
    backend = first.backend
    for f in family[1:]:
        backend.check(f.backend)
        if (f.dom, f.cod) != (first.dom, first.cod):
            raise ObjectMismatch("equalizer family must be parallel")
    n = first.dom.dim
    if backend.kind is Kind.BOOLEAN:
        raise UnsupportedOperation("the Boolean backend has no dagger equalizers")
    diffs = [f.matrix - first.matrix for f in family[1:]]
    stacked = np.vstack(diffs) if diffs else backend.zeros(0, n)
    if backend.kind is Kind.RATIONAL:
        vectors = linalg.rational_orthonormalize(linalg.rational_nullspace(stacked, n))
        basis = backend.zeros(n, len(vectors))
        for j, v in enumerate(vectors):
            for i, x in enumerate(v):
                basis[i, j] = x
    else:
        basis = linalg.orthonormal_nullspace(stacked, backend.epsilon)
        if rng is not None:
            basis = basis @ linalg.random_unitary(basis.shape[1], rng)
    obj = SpaceObject(name, basis.shape[1])
    return Equalizer(obj, Morphism(obj, first.dom, basis, backend))


def sqrt_scale(obj: SpaceObject, n: int, backend: ScalarBackend) -> Morphism:
    """Isomorphism ``r: A -> A`` with ``r ; r^dagger = n . id_A``.

    Built as ``m ; u`` where ``m`` mediates between the n-fold diagonal and
    the dagger equalizer of the n projections out of ``A^(+n)``, and ``u``
    is a unitary chosen so that ``r`` comes out positive.
    """
    _require_complex(backend, "sqrt_scale")
    if n < 1:
        raise ValueError("n must be a positive integer")
    if obj.dim == 0 or n == 1:
        return identity(obj, backend)
    bp = biproduct_pack([obj] * n, backend)
    eq = dagger_equalizer(list(bp.projections))
    m = compose(bp.diagonal, dagger(eq.map))
    u = Morphism(eq.object, obj, linalg.positive_unitary_factor(m.matrix), backend)
    return compose(m, u)


def dagger_intersection(
    isometries: Sequence[Morphism], *, rng: np.random.Generator | None = None, name: str = "P"
) -> Intersection:
    """Intersection of the subspaces carried by a family of isometries into ``A``.

    Returns ``(P, s, projections)`` where ``s: P -> A`` is an isometry and each
    projection ``P -> X_i`` is an isometry with ``projection_i ; x_i = s``.
    """
    if not isometries:
        raise EmptyFamily("dagger intersection of an empty family")
    backend = isometries[0].backend
    _require_complex(backend, "dagger_intersection")
    target = isometries[0].cod
    for x in isometries:
        if x.cod != target:
            raise ObjectMismatch("intersected isometries must share a codomain")
        if not _isometric(x):
            raise NotIsometry(f"{x.dom} -> {x.cod} is not an isometry")
    bp = biproduct_pack([x.dom for x in isometries], backend)
    legs = [compose(p, x) for p, x in zip(bp.projections, isometries)]
    eq = dagger_equalizer(legs, rng=rng, name=name)
    r = sqrt_scale(eq.object, len(isometries), backend)
    projections = [compose(r, eq.map, p) for p in bp.projections]
    s = compose(projections[0], isometries[0])
    return Intersection(eq.object, s, projections)


def _isometric(x: Morphism, slack: float = 100.0) -> bool:
    gram = compose(x, dagger(x))
    return gram.distance(identity(x.dom, x.backend)) <= slack * x.backend.epsilon


def fraction_morphism(obj: SpaceObject, n: int, backend: ScalarBackend) -> Morphism:
    """``id_A / n`` as ``e_1^dagger ; e_1`` for the equalizer ``e`` of the n projections."""
    _require_complex(backend, "fraction_morphism")
    if n < 1:
        raise ValueError("n must be a positive integer")
    bp = biproduct_pack([obj] * n, backend)
    eq = dagger_equalizer(list(bp.projections))
    e1 = compose(eq.map, bp.projections[0])
    return compose(dagger(e1), e1)


@dataclass(frozen=True)
class DaggerLimitResult:
    limit_object: SpaceObject
    limit_maps: Mapping[str, Morphism]
    omega: tuple[str, ...]
    normalization_residual: float
    weights: Mapping[str, Scalar] = field(default_factory=dict)
    backend: ScalarBackend = COMPLEX

    @property
    def trace_id_L(self) -> Scalar:
        return trace(identity(self.limit_object, self.backend))

    def canonical_morphisms(self) -> dict[str, Morphism]:
        """The basis-independent self-adjoint ``l_J^dagger ; l_J`` on each object."""
        return {name: compose(dagger(l), l) for name, l in self.limit_maps.items()}


def _normalization(maps: Mapping[str, Morphism], omega, limit_object, backend) -> float:
    total = sum_morphisms(
        [compose(maps[s], dagger(maps[s])) for s in omega], limit_object, limit_object, backend
    )
    return total.distance(identity(limit_object, backend))


def weights(result: DaggerLimitResult) -> dict[str, Scalar]:
    """``Tr(l_J^dagger ; l_J)`` for every object J."""
    return {name: trace(m) for name, m in result.canonical_morphisms().items()}


def dagger_limit(
    d: Diagram,
    omega: str | Sequence[str] | None = None,
    *,
    rng: np.random.Generator | None = None,
) -> DaggerLimitResult:
    """Dagger limit of ``d`` normalized over the supporting subset ``omega``.

    Steps: biproduct of the supporting objects; for every object T, the
    dagger equalizer of ``p_dom(f) ; F(f)`` over arrows f from the support
    into T; dagger intersection of those equalizers; limit maps by
    projecting, then pushed along arrows to objects outside the support.
    """
    _require_complex(d.backend, "dagger_limit")
    backend = d.backend
    if not d.closed:
        d = close(d)
    omega = resolve_omega(d, omega)
    if not d.objects:
        return DaggerLimitResult(ZERO, {}, (), 0.0, {}, backend)

    bp = biproduct_pack([d.objects[s] for s in omega], backend)
    proj = dict(zip(omega, bp.projections))
    support = set(omega)

    incoming: dict[str, list[Morphism]] = {}
    equalizers = []
    for t in d.objects:
        arrows = [f for _, f in d.arrows_between(cod=t) if f.dom.name in support]
        incoming[t] = arrows
        bracket = [compose(proj[f.dom.name], f) for f in arrows]
        equalizers.append(dagger_equalizer(bracket, rng=rng, name=f"E_{t}").map)

    inter = dagger_intersection(equalizers, rng=rng, name="L")
    L = SpaceObject("L", inter.object.dim)
    s = Morphism(L, bp.object, inter.map.matrix, backend)

    maps: dict[str, Morphism] = {name: compose(s, proj[name]) for name in omega}
    for t in d.objects:
        if t not in maps:
            f = incoming[t][0]
            maps[t] = compose(maps[f.dom.name], f)
    maps = {name: maps[name] for name in d.objects}

    residual = _normalization(maps, omega, L, backend)
    result = DaggerLimitResult(L, maps, omega, residual, backend=backend)
    return replace(result, weights=weights(result))


def cone_residual(d: Diagram, maps: Mapping[str, Morphism]) -> float:
    """Largest ``|| l_A ; F(f) - l_B ||`` over the arrows of ``d``."""
    worst = 0.0
    for f in d.arrows.values():
        lhs = compose(maps[f.dom.name], f)
        worst = max(worst, lhs.distance(maps[f.cod.name]))
    return worst


def normalization_residual(result: DaggerLimitResult) -> float:
    return _normalization(result.limit_maps, result.omega, result.limit_object, result.backend)


def unitary_comparison(r1: DaggerLimitResult, r2: DaggerLimitResult, slack: float = 100.0) -> Morphism:
    """The comparison ``c: L1 -> L2`` with ``c ; m_S = l_S``.

    Normalization of the second limit forces ``c = sum_S l_S ; m_S^dagger``.
    """
    if set(r1.omega) != set(r2.omega) or set(r1.limit_maps) != set(r2.limit_maps):
        raise NotComparable("limits over different diagrams or supporting subsets")
    backend = r1.backend
    L1, L2 = r1.limit_object, r2.limit_object
    c = sum_morphisms(
        [compose(r1.limit_maps[s], dagger(r2.limit_maps[s])) for s in r1.omega], L1, L2, backend
    )
    tol = slack * backend.epsilon
    for name, l in r1.limit_maps.items():
        if compose(c, r2.limit_maps[name]).distance(l) > tol:
            raise NotComparable(f"comparison map does not factor the cone at {name}")
    return c
