"""Randomized law checks for the dagger-category structure of a matrix backend.

Each law is a predicate ``violated(backend, instance) -> bool`` plus a
sampler.  On the complex backend implications are checked through their
contrapositive with an input separation ``TAU``, so a hit is a genuine
numerical counterexample rather than rounding noise.  Exact backends check
the implications literally.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import NotAState
from .matcat import (
    Morphism,
    SpaceObject,
    add,
    biproduct_pack,
    boxplus,
    compose,
    dagger,
    enriched_sum,
    identity,
    n_fold,
    sum_morphisms,
    zero_morphism,
)
from .scalars import Kind, Scalar, ScalarBackend
from .serialize import morphism_from_json, morphism_to_json

TAU = 1e-3
MAX_DIM = 6


class Law(str, enum.Enum):
    NONDEGENERACY = "Nondegeneracy"
    ADDITIVE_CANCELLATION = "AdditiveCancellation"
    NFOLD_CANCELLATION = "NFoldCancellation"
    EXCHANGE = "Exchange"
    ENRICHMENT_UNIQUE = "EnrichmentUnique"
    BIPRODUCT_EQUATIONS = "BiproductEquations"
    DIAGONAL_DAGGER = "DiagonalDagger"
    SCALAR_COMMUTATIVITY = "ScalarCommutativity"
    SCALAR_MULT_CANCELLATION = "ScalarMultCancellation"
    ABAB_IMPLICATION = "ABabImplication"
    INNER_PRODUCT_PD = "InnerProductPD"


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    FAILS = "FailsWithWitness"
    NOT_APPLICABLE = "NotApplicable"


# laws that need cancellable addition or multiplication do not hold for relations
_BOOLEAN_EXPECTED = {
    Law.NONDEGENERACY,
    Law.ENRICHMENT_UNIQUE,
    Law.BIPRODUCT_EQUATIONS,
    Law.DIAGONAL_DAGGER,
    Law.SCALAR_COMMUTATIVITY,
    Law.INNER_PRODUCT_PD,
}


def expected_to_hold(law: Law, backend: ScalarBackend) -> bool:
    if backend.kind is Kind.BOOLEAN:
        return law in _BOOLEAN_EXPECTED
    return True


@dataclass(frozen=True)
class LawReport:
    law: Law
    backend: ScalarBackend
    verdict: Verdict
    trials: int
    witness: dict | None = None
    note: str = ""

    @property
    def expected(self) -> bool:
        return expected_to_hold(self.law, self.backend)

    @property
    def unexpected_failure(self) -> bool:
        return self.verdict is Verdict.FAILS and self.expected

    def to_json(self) -> dict:
        out = {
            "law": self.law.value,
            "backend": self.backend.kind.value,
            "verdict": self.verdict.value,
            "trials": self.trials,
            "expected_to_hold": self.expected,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        if self.note:
            out["note"] = self.note
        return out


# instances are plain dicts keyed by role; witnesses are their JSON form


def _encode(value):
    if isinstance(value, Morphism):
        return {"morphism": morphism_to_json(value)}
    if isinstance(value, Scalar):
        return {"scalar": value.to_json()}
    return value


def _decode(value, backend):
    if isinstance(value, dict) and "morphism" in value:
        return morphism_from_json(value["morphism"], backend)
    if isinstance(value, dict) and "scalar" in value:
        return backend.scalar(value["scalar"])
    return value


def encode_instance(instance: dict) -> dict:
    return {k: _encode(v) for k, v in instance.items()}


def decode_instance(witness: dict, backend: ScalarBackend) -> dict:
    return {k: _decode(v, backend) for k, v in witness.items()}


# random data


def _random_entries(backend: ScalarBackend, rng: np.random.Generator, shape, scale=1.0):
    rows, cols = shape
    if backend.kind is Kind.COMPLEX:
        return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))
    if backend.kind is Kind.RATIONAL:
        out = backend.zeros(rows, cols)
        for idx in np.ndindex(rows, cols):
            out[idx] = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 5)))
        return out
    return rng.random(shape) < rng.uniform(0.2, 0.7)


def random_morphism(backend, rng, dom: SpaceObject, cod: SpaceObject) -> Morphism:
    scale = 10.0 ** rng.uniform(-4, 1)
    m = _random_entries(backend, rng, (cod.dim, dom.dim), scale)
    if backend.kind is Kind.COMPLEX and rng.random() < 0.3 and min(dom.dim, cod.dim) > 1:
        k = int(rng.integers(1, min(dom.dim, cod.dim)))
        left = _random_entries(backend, rng, (cod.dim, k))
        right = _random_entries(backend, rng, (k, dom.dim), scale)
        m = left @ right
    return Morphism(dom, cod, m, backend)


def random_scalar(backend, rng) -> Scalar:
    roll = rng.random()
    if roll < 0.1:
        return backend.zero()
    if roll < 0.2:
        return backend.one()
    return backend.scalar(_random_entries(backend, rng, (1, 1))[0, 0])


def _objects(rng, count=2):
    return [SpaceObject(name, int(rng.integers(1, MAX_DIM + 1))) for name in "AB"[:count]]


def _perturbed(f: Morphism, rng) -> Morphism:
    """A morphism near or equal to ``f``, to probe the boundary of an implication."""
    backend = f.backend
    roll = rng.random()
    if roll < 0.3:
        return f
    if backend.kind is Kind.COMPLEX and roll < 0.6:
        delta = random_morphism(backend, rng, f.dom, f.cod)
        size = 10.0 ** rng.uniform(-14, -2)
        return add(f, Morphism(f.dom, f.cod, delta.matrix * size / max(delta.norm(), 1e-300), backend))
    return random_morphism(backend, rng, f.dom, f.cod)


# individual laws


def _dist(f: Morphism, g: Morphism) -> float:
    return f.distance(g)


def _separated(f: Morphism, g: Morphism) -> bool:
    if f.backend.exact:
        return not f.close(g)
    return _dist(f, g) > TAU


def _nondegeneracy(backend, inst):
    f = inst["f"]
    gram = compose(f, dagger(f))
    if backend.exact:
        return gram.norm() == 0 and f.norm() != 0
    # every diagonal entry of f;f^dagger is a squared column norm
    return f.norm() > math.sqrt(gram.norm()) * (1 + 1e-9) + backend.epsilon


def _sample_nondegeneracy(backend, rng):
    a, b = _objects(rng)
    if rng.random() < 0.1:
        return {"f": zero_morphism(a, b, backend)}
    return {"f": random_morphism(backend, rng, a, b)}


def _additive_cancellation(backend, inst):
    f, g, h = inst["f"], inst["g"], inst["h"]
    if not _separated(f, g):
        return False
    return add(f, h).distance(add(g, h)) <= (0.0 if backend.exact else backend.epsilon)


def _sample_triple(backend, rng):
    a, b = _objects(rng)
    f = random_morphism(backend, rng, a, b)
    return {"f": f, "g": _perturbed(f, rng), "h": random_morphism(backend, rng, a, b)}


def _canonical_triple(backend):
    one = SpaceObject("I", 1, unit=True)
    ident = identity(one, backend)
    return [{"f": ident, "g": zero_morphism(one, one, backend), "h": ident}]


def _nfold_cancellation(backend, inst):
    f, g, n = inst["f"], inst["g"], int(inst["n"])
    gap = n_fold(n, f).distance(n_fold(n, g))
    if backend.exact:
        return gap == 0 and not f.close(g)
    return gap <= backend.epsilon and _dist(f, g) > 10 * backend.epsilon


def _sample_nfold(backend, rng):
    inst = _sample_triple(backend, rng)
    del inst["h"]
    inst["n"] = int(rng.choice([2, 3, 5]))
    return inst


def _exchange(backend, inst):
    f, g = inst["f"], inst["g"]
    lhs = add(compose(f, dagger(f)), compose(g, dagger(g)))
    rhs = add(compose(f, dagger(g)), compose(g, dagger(f)))
    if backend.exact:
        return lhs.close(rhs) and not f.close(g)
    gap = _dist(f, g)
    if gap <= TAU:
        return False
    # lhs - rhs is the Gram matrix of f - g, whose norm is at least gap^2
    return lhs.distance(rhs) < 0.5 * gap * gap


def _sample_exchange(backend, rng):
    a, b = _objects(rng)
    f = random_morphism(backend, rng, a, b)
    if rng.random() < 0.2:
        return {"f": f, "g": zero_morphism(a, b, backend)}
    return {"f": f, "g": _perturbed(f, rng)}


def _sum_tolerance(backend, *fs):
    if backend.exact:
        return 0.0
    return 10 * backend.epsilon * max(1.0, sum(f.norm() for f in fs))


def _enrichment_unique(backend, inst):
    f, g = inst["f"], inst["g"]
    plus = add(f, g)
    tol = _sum_tolerance(backend, f, g)
    return boxplus(f, g).distance(plus) > tol or enriched_sum(f, g).distance(plus) > tol


def _sample_pair(backend, rng):
    a, b = _objects(rng)
    return {"f": random_morphism(backend, rng, a, b), "g": random_morphism(backend, rng, a, b)}


def _biproduct_equations(backend, inst):
    objs = [SpaceObject(f"X{k}", int(d)) for k, d in enumerate(inst["dims"])]
    bp = biproduct_pack(objs, backend)
    total = sum_morphisms(
        [compose(p, i) for p, i in zip(bp.projections, bp.injections)], bp.object, bp.object, backend
    )
    if not total.close(identity(bp.object, backend)):
        return True
    for j, (i_j, x_j) in enumerate(zip(bp.injections, objs)):
        for k, (p_k, x_k) in enumerate(zip(bp.projections, objs)):
            expect = identity(x_j, backend) if j == k else zero_morphism(x_j, x_k, backend)
            if not compose(i_j, p_k).close(expect):
                return True
        if not bp.projections[j].close(dagger(i_j)):
            return True
    return False


def _sample_dims(backend, rng):
    return {"dims": [int(d) for d in rng.integers(0, MAX_DIM + 1, size=int(rng.integers(1, 5)))]}


def _diagonal_dagger(backend, inst):
    obj = SpaceObject("A", int(inst["dim"]))
    bp = biproduct_pack([obj] * int(inst["n"]), backend)
    return not np.array_equal(dagger(bp.diagonal).matrix, bp.codiagonal.matrix)


def _sample_diagonal(backend, rng):
    return {"dim": int(rng.integers(1, MAX_DIM + 1)), "n": int(rng.integers(1, 6))}


def _scalar_commutativity(backend, inst):
    a, b = inst["a"], inst["b"]
    one = SpaceObject("I", 1, unit=True)
    fa = Morphism(one, one, np.array([[a.value]], dtype=backend.dtype), backend)
    fb = Morphism(one, one, np.array([[b.value]], dtype=backend.dtype), backend)
    return not (a * b == b * a) or not compose(fa, fb).close(compose(fb, fa))


def _sample_scalars(backend, rng, names="ab"):
    return {k: random_scalar(backend, rng) for k in names}


def _scalar_apart(a: Scalar, b: Scalar) -> bool:
    if a.backend.exact:
        return a.value != b.value
    return abs(a.value - b.value) > TAU


def _scalar_nonzero(a: Scalar) -> bool:
    return a.value != 0 if a.backend.exact else abs(a.value) > TAU


def _scalar_collide(a: Scalar, b: Scalar) -> bool:
    if a.backend.exact:
        return a.value == b.value
    return abs(a.value - b.value) <= a.backend.epsilon


def _scalar_mult_cancellation(backend, inst):
    a, b, c = inst["a"], inst["b"], inst["c"]
    return _scalar_apart(a, b) and _scalar_nonzero(c) and _scalar_collide(a * c, b * c)


def _abab(backend, inst):
    a, b, A, B = inst["a"], inst["b"], inst["A"], inst["B"]
    if not (_scalar_apart(a, b) and _scalar_apart(A, B)):
        return False
    return _scalar_collide(a * A + b * B, a * B + b * A)


def _sample_abab(backend, rng):
    inst = _sample_scalars(backend, rng, ["a", "b", "A", "B"])
    if rng.random() < 0.2:
        inst["B"] = inst["A"]
    return inst


def _inner_product_pd(backend, inst):
    phi, psi = inst["phi"], inst["psi"]
    pp = inner_product_from_dagger(phi, phi)
    forward = inner_product_from_dagger(phi, psi)
    backward = inner_product_from_dagger(psi, phi).conj()
    if backend.kind is Kind.COMPLEX:
        scale = max(1.0, phi.norm() * psi.norm(), phi.norm() ** 2)
        sym = abs(forward.value - backward.value) <= backend.epsilon * scale
        # <phi, phi> is a sum of squared moduli, so it dominates the largest one
        positive = abs(pp.value.imag) <= backend.epsilon * scale and (
            pp.value.real >= phi.norm() ** 2 * (1 - 1e-9)
        )
    else:
        sym = forward == backward
        positive = bool(pp.value) == bool(phi.norm())
        if backend.kind is Kind.RATIONAL:
            positive = positive and pp.value >= 0
    return not (sym and positive)


def _sample_states(backend, rng):
    one = SpaceObject("I", 1, unit=True)
    a = SpaceObject("A", int(rng.integers(1, MAX_DIM + 1)))
    phi = zero_morphism(one, a, backend) if rng.random() < 0.1 else random_morphism(backend, rng, one, a)
    return {"phi": phi, "psi": random_morphism(backend, rng, one, a)}


@dataclass(frozen=True)
class _LawCheck:
    violated: Callable[[ScalarBackend, dict], bool]
    sample: Callable[[ScalarBackend, np.random.Generator], dict]
    canonical: Callable[[ScalarBackend], list] = field(default=lambda backend: [])


LAWS: dict[Law, _LawCheck] = {
    Law.NONDEGENERACY: _LawCheck(_nondegeneracy, _sample_nondegeneracy),
    Law.ADDITIVE_CANCELLATION: _LawCheck(_additive_cancellation, _sample_triple, _canonical_triple),
    Law.NFOLD_CANCELLATION: _LawCheck(_nfold_cancellation, _sample_nfold),
    Law.EXCHANGE: _LawCheck(_exchange, _sample_exchange),
    Law.ENRICHMENT_UNIQUE: _LawCheck(_enrichment_unique, _sample_pair),
    Law.BIPRODUCT_EQUATIONS: _LawCheck(_biproduct_equations, _sample_dims),
    Law.DIAGONAL_DAGGER: _LawCheck(_diagonal_dagger, _sample_diagonal),
    Law.SCALAR_COMMUTATIVITY: _LawCheck(_scalar_commutativity, _sample_scalars),
    Law.SCALAR_MULT_CANCELLATION: _LawCheck(
        _scalar_mult_cancellation, lambda b, rng: _sample_scalars(b, rng, "abc")
    ),
    Law.ABAB_IMPLICATION: _LawCheck(_abab, _sample_abab),
    Law.INNER_PRODUCT_PD: _LawCheck(_inner_product_pd, _sample_states),
}


def check_law(law: Law, backend: ScalarBackend, seed: int, trials: int) -> LawReport:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    check = LAWS[law]
    rng = np.random.default_rng([seed, list(Law).index(law)])
    for inst in check.canonical(backend):
        if check.violated(backend, inst):
            return LawReport(law, backend, Verdict.FAILS, 0, encode_instance(inst))
    for k in range(trials):
        inst = check.sample(backend, rng)
        if check.violated(backend, inst):
            return LawReport(law, backend, Verdict.FAILS, k + 1, encode_instance(inst))
    return LawReport(law, backend, Verdict.HOLDS, trials)


def run_law_suite(backend: ScalarBackend, seed: int = 0, trials: int = 500) -> list[LawReport]:
    """One report per law, deterministic in ``seed``."""
    return [check_law(law, backend, seed, trials) for law in Law]


def replay_witness(report: LawReport) -> bool:
    """True when the report's witness still violates its law."""
    if report.witness is None:
        return False
    inst = decode_instance(report.witness, report.backend)
    return LAWS[report.law].violated(report.backend, inst)


def inner_product_from_dagger(phi: Morphism, psi: Morphism) -> Scalar:
    """``<phi, psi>`` as the scalar ``psi ; phi^dagger``; conjugate-linear in ``phi``."""
    for state in (phi, psi):
        if state.dom.dim != 1:
            raise NotAState(f"{state.dom.name} -> {state.cod.name} does not start at the unit")
    if phi.cod != psi.cod:
        raise NotAState(f"states live in different spaces {phi.cod.name}, {psi.cod.name}")
    return compose(psi, dagger(phi)).entry(0, 0)

