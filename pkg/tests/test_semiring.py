from fractions import Fraction

import numpy as np
import pytest

from helpers import GaussianPolyTrivial, IntegersMod5
from daglim.errors import ZeroDenominator, ZeroInverse
from daglim.scalars import BOOLEAN, COMPLEX, RATIONAL
from daglim.semiring import (
    BackendScalars,
    Classification,
    DifferenceRing,
    FractionField,
    GaussianIntegers,
    Naturals,
    NonnegativeRationals,
    characteristic_probe,
    classify_backend,
    embedding_probe,
    field_of,
    order_probe,
)

Z = DifferenceRing(Naturals())
Q = FractionField(Z)


def num(n):
    return Z.embed(n) if n >= 0 else Z.neg(Z.embed(-n))


def frac(p, q):
    return Q.make(num(p), num(q))


def test_difference_examples():
    assert Z.equals((3, 1), (5, 3))
    assert Z.equals(Z.mul((2, 0), (0, 1)), (0, 2))
    g = DifferenceRing(GaussianIntegers())
    assert g.conj(((0, 1), (0, 0))) == ((0, -1), (0, 0))


def test_fraction_examples():
    assert Q.equals(frac(2, 4), frac(1, 2))
    assert Q.equals(Q.add(frac(1, 2), frac(1, 3)), frac(5, 6))
    assert Q.equals(Q.inverse(frac(3, 5)), frac(5, 3))
    with pytest.raises(ZeroDenominator):
        frac(1, 0)
    with pytest.raises(ZeroInverse):
        Q.inverse(frac(0, 7))


def test_embeddings_are_faithful_and_keep_the_involution():
    for s in (Naturals(), NonnegativeRationals(), GaussianIntegers(), BackendScalars(COMPLEX)):
        assert embedding_probe(s, seed=0, trials=300).ok, s


def test_equivalences_on_sampled_triples():
    rng = np.random.default_rng(0)
    for _ in range(300):
        x, y = Z.sample(rng), Z.sample(rng)
        z = (y[0] + 7, y[1] + 7)  # same class as y
        assert Z.equals(x, x)
        assert Z.equals(x, y) == Z.equals(y, x)
        assert Z.equals(y, z)
        assert Z.equals(x, y) == Z.equals(x, z)


def test_boolean_difference_relation_is_not_transitive():
    d = DifferenceRing(BackendScalars(BOOLEAN))
    one, zero = BOOLEAN.one(), BOOLEAN.zero()
    x, y, z = (one, zero), (one, one), (zero, zero)
    assert d.equals(x, y) and d.equals(y, z)
    assert not d.equals(x, z)


def test_characteristic():
    assert characteristic_probe(Naturals(), 100).ok
    assert characteristic_probe(BackendScalars(COMPLEX), 100).ok
    bad = characteristic_probe(IntegersMod5(), 100)
    assert not bad.ok and bad.witness == 5


def test_order_probe():
    assert order_probe(GaussianIntegers(), seed=0, trials=500).ok
    assert order_probe(BackendScalars(COMPLEX), seed=0, trials=500).ok
    found = order_probe(GaussianPolyTrivial(), seed=0, trials=10)
    assert not found.ok and sorted(map(tuple, found.witness)) == [(0, 1), (1, 0)]


def test_field_of_naturals_matches_fractions():
    field, emb = field_of(Naturals())
    rng = np.random.default_rng(1)
    as_frac = lambda q: Fraction(q[0][0] - q[0][1], q[1][0] - q[1][1])
    for _ in range(200):
        a, b = int(rng.integers(0, 50)), int(rng.integers(0, 50))
        assert as_frac(field.add(emb(a), emb(b))) == a + b
        assert as_frac(field.mul(emb(a), emb(b))) == a * b


def test_classification():
    assert classify_backend(COMPLEX).classification is Classification.COMPLEX_WITH_CONJUGATION
    assert classify_backend(BOOLEAN).classification is Classification.OTHER
    rational = classify_backend(RATIONAL, sqrt_bound=200)
    assert rational.classification is Classification.OTHER
    assert rational.reason == "orderable characteristic-0 field, not Dedekind-complete"
