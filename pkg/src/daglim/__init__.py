"""Dagger limits of finite diagrams of matrices."""
from .diagram import Diagram, Shape, build_diagram, close, leaves, parse_validate, resolve_omega
from .errors import DaglimError
from .laws import Law, LawReport, Verdict, inner_product_from_dagger, run_law_suite
from .limits import (
    DaggerLimitResult,
    cone_residual,
    dagger_equalizer,
    dagger_intersection,
    dagger_limit,
    fraction_morphism,
    sqrt_scale,
    unitary_comparison,
    weights,
)
from .matcat import (
    UNIT,
    ZERO,
    Morphism,
    SpaceObject,
    add,
    biproduct_pack,
    compose,
    dagger,
    identity,
    scalar_action,
    tensor,
    trace,
    zero_morphism,
)
from .scalars import BOOLEAN, COMPLEX, RATIONAL, Scalar, ScalarBackend, backend_named, sqrt_nonneg

__all__ = [
    "BOOLEAN", "COMPLEX", "RATIONAL", "UNIT", "ZERO",
    "DaggerLimitResult", "DaglimError", "Diagram", "Law", "LawReport", "Morphism", "Scalar",
    "ScalarBackend", "Shape", "SpaceObject", "Verdict",
    "add", "backend_named", "biproduct_pack", "build_diagram", "close", "compose", "cone_residual",
    "dagger", "dagger_equalizer", "dagger_intersection", "dagger_limit", "fraction_morphism",
    "identity", "inner_product_from_dagger", "leaves", "parse_validate", "resolve_omega",
    "run_law_suite", "scalar_action", "sqrt_nonneg", "sqrt_scale", "tensor", "trace",
    "unitary_comparison", "weights", "zero_morphism",
]
