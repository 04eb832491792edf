from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from daglim.errors import DimensionMismatch, NotEndomorphism, ObjectMismatch
from daglim.matcat import (
    UNIT,
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
    scalar_action,
    tensor,
    trace,
    zero_morphism,
)
from daglim.scalars import BOOLEAN, COMPLEX, RATIONAL

A2 = SpaceObject("A", 2)
C1 = SpaceObject("C", 1)


def m(dom, cod, rows, backend=COMPLEX):
    return Morphism.from_rows(dom, cod, rows, backend)


def test_dagger_examples():
    d = m(A2, A2, [[2, 0], [0, 1]])
    assert dagger(d).close(d)
    assert dagger(m(C1, C1, [[1j]])).close(m(C1, C1, [[-1j]]))
    col = m(C1, A2, [[1], [0]])
    assert dagger(col).dom == A2 and np.array_equal(dagger(col).matrix, [[1, 0]])


def test_compose_examples():
    g = m(A2, A2, [[2, 0], [0, 1]])
    f = m(A2, A2, [["1/2", 0], [0, 1]])
    assert compose(g, f).close(identity(A2))
    assert compose(m(C1, A2, [[1], [0]]), g).close(m(C1, A2, [[2], [0]]))
    with pytest.raises(ObjectMismatch):
        compose(g, m(C1, A2, [[1], [0]]))


def test_add_examples():
    one = SpaceObject("I", 1)
    assert add(m(one, one, [[1]]), m(one, one, [[2]])).close(m(one, one, [[3]]))
    ident = identity(one, BOOLEAN)
    assert add(ident, ident).close(ident)
    with pytest.raises(ObjectMismatch):
        add(identity(A2), identity(C1))


def test_shape_is_checked():
    with pytest.raises(DimensionMismatch):
        Morphism(A2, SpaceObject("B", 3), np.zeros((2, 2)))


def test_biproduct_examples():
    a, b = SpaceObject("A", 2), SpaceObject("B", 3)
    bp = biproduct_pack([a, b])
    assert bp.object.dim == 5
    assert np.array_equal(bp.injections[0].matrix, np.vstack([np.eye(2), np.zeros((3, 2))]))
    single = biproduct_pack([a])
    assert single.object == a and single.injections[0].close(identity(a))
    ones = biproduct_pack([C1, C1])
    total = add(*(compose(p, i) for p, i in zip(ones.projections, ones.injections)))
    assert total.close(identity(ones.object))
    assert dagger(ones.diagonal).close(ones.codiagonal)


def test_tensor_examples():
    t = tensor(identity(A2), identity(SpaceObject("B", 3)))
    assert t.dom.dim == 6 and np.array_equal(t.matrix, np.eye(6))
    assert tensor(m(UNIT, UNIT, [[2]]), m(UNIT, UNIT, [[3j]])).close(m(UNIT, UNIT, [[6j]]))
    d = tensor(m(A2, A2, [[1, 0], [0, 2]]), m(C1, C1, [[3]]))
    assert np.array_equal(d.matrix, np.diag([3, 6]))
    # the unit is strict
    assert tensor(identity(UNIT), identity(A2)).dom == A2


def test_trace_examples():
    assert trace(identity(C1)) == 1
    assert trace(zero_morphism(A2, A2)) == 0
    assert trace(m(A2, A2, [["1/6", 0], [0, 0]], RATIONAL)).value == Fraction(1, 6)
    with pytest.raises(NotEndomorphism):
        trace(m(C1, A2, [[1], [0]]))


def test_scalar_action_examples():
    f = m(A2, A2, [[1, 2], [3, 4]])
    assert scalar_action(COMPLEX.one(), f).close(f)
    assert scalar_action(COMPLEX.zero(), f).close(zero_morphism(A2, A2))
    third = scalar_action(RATIONAL.scalar("1/3"), identity(A2, RATIONAL))
    assert n_fold(3, third).close(identity(A2, RATIONAL))


def _matrices(rows, cols):
    entry = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
    return st.lists(st.lists(entry, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@settings(max_examples=50)
@given(st.data())
def test_dagger_category_laws(data):
    da, db, dc = (data.draw(st.integers(1, 4)) for _ in range(3))
    A, B, C = SpaceObject("A", da), SpaceObject("B", db), SpaceObject("C", dc)
    f = m(A, B, data.draw(_matrices(db, da)))
    g = m(B, C, data.draw(_matrices(dc, db)))
    h = m(A, B, data.draw(_matrices(db, da)))
    assert np.array_equal(dagger(dagger(f)).matrix, f.matrix)
    assert dagger(compose(f, g)).distance(compose(dagger(g), dagger(f))) < 1e-9
    assert dagger(add(f, h)).close(add(dagger(f), dagger(h)))
    assert compose(identity(A), f).close(f) and compose(f, identity(B)).close(f)
    assert boxplus(f, h).close(add(f, h))
    assert enriched_sum(f, h).close(add(f, h))


def test_rational_backend_stays_exact():
    f = m(A2, A2, [["1/3", 0], [0, "2/7"]], RATIONAL)
    prod = compose(f, f)
    assert prod.entry(0, 0).value == Fraction(1, 9)
    assert all(isinstance(x, Fraction) for x in prod.matrix.flat)
