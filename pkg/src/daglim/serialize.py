"""JSON encodings for scalars, morphisms, diagrams and limit results.

Scalars: complex as ``[re, im]``, rationals as ``"p/q"``, Booleans as 0/1.
Matrices are row-major with one row per codomain dimension.
"""
from __future__ import annotations

from typing import Any, Mapping

from .diagram import Diagram
from .matcat import Morphism, SpaceObject
from .scalars import Scalar, ScalarBackend


def scalar_to_json(s: Scalar):
    return s.to_json()


def matrix_to_json(f: Morphism) -> list:
    return [[f.entry(i, j).to_json() for j in range(f.dom.dim)] for i in range(f.cod.dim)]


def morphism_to_json(f: Morphism) -> dict:
    return {"dom": f.dom.name, "cod": f.cod.name, "matrix": matrix_to_json(f)}


def morphism_from_json(data: Mapping[str, Any], backend: ScalarBackend,
                       objects: Mapping[str, SpaceObject] | None = None) -> Morphism:
    """Inverse of :func:`morphism_to_json`; dimensions come from ``objects`` or the matrix shape."""
    rows = data["matrix"]
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    objects = objects or {}
    dom = objects.get(data["dom"]) or SpaceObject(data["dom"], n_cols)
    cod = objects.get(data["cod"]) or SpaceObject(data["cod"], n_rows)
    return Morphism.from_rows(dom, cod, rows, backend)


def diagram_to_json(d: Diagram, include_identities: bool = False) -> dict:
    out = {
        "backend": d.backend.kind.value,
        "epsilon": d.backend.epsilon,
        "shape": d.shape.value,
        "objects": [{"name": o.name, "dim": o.dim} for o in d.objects.values()],
        "arrows": [
            {"name": name, **morphism_to_json(f)}
            for name, f in d.arrows.items()
            if include_identities or not d.is_identity(name)
        ],
    }
    if d.supporting is not None:
        out["supporting"] = list(d.supporting)
    return out


def result_to_json(result) -> dict:
    return {
        "limit_dim": result.limit_object.dim,
        "omega": list(result.omega),
        "limit_maps": {name: matrix_to_json(f) for name, f in result.limit_maps.items()},
        "weights": {name: w.to_json() for name, w in result.weights.items()},
        "normalization_residual": result.normalization_residual,
        "trace_id_L": result.trace_id_L.to_json(),
    }


def limit_maps_from_json(data: Mapping[str, Any], d: Diagram) -> dict[str, Morphism]:
    """Rebuild the limit maps of a serialized result against diagram ``d``."""
    L = SpaceObject("L", int(data["limit_dim"]))
    return {
        name: Morphism.from_rows(L, d.objects[name], rows, d.backend)
        for name, rows in data["limit_maps"].items()
    }
