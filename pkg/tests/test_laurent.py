from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fctool.laurent import ONE, P, Q, ZERO, LaurentPoly, LinComb, bareiss_rank, exact_div, rank

polys = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=4).map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, polys)
def test_evaluation_is_a_ring_map(a, b):
    for v in (2, -3, Fraction(1, 2)):
        assert (a * b)(v) == a(v) * b(v)
        assert (a + b)(v) == a(v) + b(v)


@given(polys, polys)
def test_exact_division(a, b):
    if b:
        assert exact_div(a * b, b) == a


@given(polys)
def test_json_round_trip(a):
    assert LaurentPoly.from_json(a.to_json()) == a


def test_p_is_inverse_of_q():
    assert P * Q == ONE
    assert Q ** -1 == P
    assert (Q - 1) ** 2 == Q * Q - 2 * Q + 1


def test_inexact_division():
    with pytest.raises(ValueError):
        exact_div(Q + 2, Q + 1)


def test_rank():
    m = [[Q, ONE], [Q * Q, Q]]
    assert rank(m) == 1
    assert bareiss_rank(m) == 1
    m = [[Q, ONE], [ONE, Q]]
    # singular at q = 1 and q = -1, regular over Q(q)
    assert rank(m, values=(1, -1)) == 2
    assert bareiss_rank(m) == 2


def test_lincomb_cancels():
    a = LinComb({("s1",): Q, (): ONE})
    b = LinComb({("s1",): Q})
    assert (a - b) == LinComb({(): ONE})
    assert not (a - a)
    assert a.coeff(("s2",)) == ZERO


@settings(max_examples=50)
@given(st.lists(st.lists(polys, min_size=3, max_size=3), min_size=1, max_size=3))
def test_rank_methods_agree(rows):
    assert rank(rows) == bareiss_rank(rows)
