from pathlib import Path

import pytest

from daglim.diagram import (
    Shape,
    build_diagram,
    close,
    close_and_support,
    leaves,
    parse_validate,
    resolve_omega,
)
from daglim.errors import (
    ClosureDiverged,
    DimensionMismatch,
    NotAForest,
    UnknownObject,
    UnsupportedOmega,
    WrongShape,
)
from daglim.matcat import Morphism, SpaceObject, compose, identity

DIAGRAMS = Path(__file__).resolve().parent.parent / "diagrams"


def _obj(name, dim):
    return {"name": name, "dim": dim}


def test_weighted_triple_parses_as_general():
    d = parse_validate(DIAGRAMS / "weighted_triple.json")
    assert d.shape is Shape.GENERAL
    closed = close(d)
    assert closed.closed and len(closed.arrows) >= len(d.arrows) + 3


def test_single_object_with_identity_is_valid_in_both_shapes():
    spec = {"objects": [_obj("A", 2)],
            "arrows": [{"name": "i", "dom": "A", "cod": "A", "matrix": [[1, 0], [0, 1]]}]}
    for shape in ("forest", "general"):
        assert parse_validate({**spec, "shape": shape}).shape.value == shape
    assert leaves(parse_validate({**spec, "shape": "forest"})) == {"A"}


def test_dimension_mismatch():
    spec = {"objects": [_obj("A", 2), _obj("B", 3)],
            "arrows": [{"dom": "A", "cod": "B", "matrix": [[1, 0], [0, 1]]}]}
    with pytest.raises(DimensionMismatch):
        parse_validate(spec)


def test_unknown_object():
    with pytest.raises(UnknownObject):
        parse_validate({"objects": [_obj("A", 1)], "arrows": [{"dom": "A", "cod": "Z", "matrix": [[1]]}]})


def test_declared_forest_with_cycle_is_rejected():
    spec = {"shape": "forest", "objects": [_obj("A", 1), _obj("B", 1)],
            "arrows": [{"dom": "A", "cod": "B", "matrix": [[1]]}, {"dom": "B", "cod": "A", "matrix": [[1]]}]}
    with pytest.raises(NotAForest):
        parse_validate(spec)


def test_forest_six_leaves_leaves():
    d = parse_validate(DIAGRAMS / "forest_six_leaves.json")
    assert leaves(d) == set("ABCDEF")
    assert resolve_omega(d) == tuple("ABCDEF")


def test_two_level_tree_leaves():
    spec = {"objects": [_obj("A", 1), _obj("B", 1), _obj("G", 1)],
            "arrows": [{"dom": "A", "cod": "G", "matrix": [[1]]}, {"dom": "B", "cod": "G", "matrix": [[1]]}]}
    assert leaves(parse_validate(spec)) == {"A", "B"}


def test_leaves_needs_a_forest():
    with pytest.raises(WrongShape):
        leaves(parse_validate(DIAGRAMS / "closed_general.json"))


def test_general_example_closes_with_stated_composites():
    d = close(parse_validate(DIAGRAMS / "closed_general.json"))
    a = d.arrows
    assert compose(a["g"], a["j"]).close(a["h"])
    assert compose(a["f"], a["h"]).close(a["j"])
    assert compose(a["g"], a["f"]).close(identity(d.objects["A"]))
    assert compose(a["f"], a["g"]).close(identity(d.objects["B"]))
    assert compose(a["m"], a["m"]).close(a["m"])
    # nothing beyond the identities and the stated composites is new
    assert len(d.arrows) == 7 + 5
    for f in d.arrows.values():
        for g in d.arrows.values():
            if f.cod == g.dom:
                h = compose(f, g)
                assert any(h.close(k) for k in d.arrows.values())


def test_supporting_subsets_from_the_general_example():
    d = parse_validate(DIAGRAMS / "closed_general.json")
    assert close_and_support(d, "A,C,E").supporting == ("A", "C", "E")
    with pytest.raises(UnsupportedOmega):
        close_and_support(d, "C,D,E")
    with pytest.raises(UnsupportedOmega):
        resolve_omega(d, "A,Q")


def test_non_idempotent_loop_diverges():
    a = SpaceObject("A", 1)
    d = build_diagram([a], {"double": Morphism(a, a, [[2.0]])})
    with pytest.raises(ClosureDiverged):
        close(d, budget=50)
