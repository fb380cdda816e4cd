import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from klext import ONE, V, V_INV, ZERO, LaurentPoly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys)
def test_bar_is_ring_involution(a, b):
    assert a.bar().bar() == a
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a + b).bar() == a.bar() + b.bar()


@given(polys)
def test_json_round_trip(a):
    assert LaurentPoly.from_json(json.loads(json.dumps(a.to_json()))) == a


@given(polys)
def test_at_neg_v_and_evaluation(a):
    assert a.at_neg_v().at_neg_v() == a
    assert a.at_neg_v()(1) == a(-1)


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({0: 0, 2: 3, -1: 0})
    assert p.coeffs == {2: 3}
    assert LaurentPoly({}) == ZERO == 0
    assert not ZERO


def test_canonical_text():
    assert str(V + V * V * V) == "v + v^3"
    assert str(ZERO) == "0"
    assert str(ONE) == "1"
    assert str(V_INV + V.shift(1) * 2) == "v^-1 + 2*v^2"
    assert str(LaurentPoly({0: -1, 1: -2})) == "-1 - 2*v"


def test_degrees_and_shift():
    p = LaurentPoly({-2: 1, 3: 4})
    assert (p.min_degree(), p.max_degree()) == (-2, 3)
    assert p.shift(2) == LaurentPoly({0: 1, 5: 4})
    assert V * V_INV == ONE


def test_from_json_rejects_garbage():
    with pytest.raises((ValueError, TypeError)):
        LaurentPoly.from_json({"x": 1})
    with pytest.raises((ValueError, TypeError)):
        LaurentPoly.from_json({"1": 1.5})
