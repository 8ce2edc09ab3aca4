from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from meanflow import _intervals as iv
from meanflow.rational import as_rational, format_rational


def test_as_rational_forms():
    assert as_rational(3) == 3
    assert as_rational("7/2") == Fraction(7, 2)
    assert as_rational(" 4 ") == 4
    assert as_rational(Fraction(1, 3)) == Fraction(1, 3)


@pytest.mark.parametrize("bad", [0.5, True, None, [1]])
def test_as_rational_refuses(bad):
    with pytest.raises(TypeError):
        as_rational(bad)


def test_format_always_has_denominator():
    assert format_rational(5) == "5/1"
    assert format_rational(Fraction(-3, 6)) == "-1/2"


@given(st.fractions())
def test_format_round_trip(x):
    assert as_rational(format_rational(x)) == x


spans = st.lists(
    st.tuples(st.fractions(0, 20, max_denominator=6), st.fractions(0, 4, max_denominator=6)).map(
        lambda t: (t[0], t[0] + t[1])
    ),
    max_size=6,
)


def _point_in(x, t):
    return any(a <= t < b for a, b in x)


@given(spans, spans, st.fractions(0, 25, max_denominator=12))
def test_set_operations_pointwise(x, y, t):
    x, y = iv.normalize(x), iv.normalize(y)
    assert _point_in(iv.union(x, y), t) == (_point_in(x, t) or _point_in(y, t))
    assert _point_in(iv.intersection(x, y), t) == (_point_in(x, t) and _point_in(y, t))
    assert _point_in(iv.difference(x, y), t) == (_point_in(x, t) and not _point_in(y, t))


@given(spans)
def test_measure_is_additive(x):
    x = iv.normalize(x)
    assert iv.measure(x) == sum(b - a for a, b in x)
    assert all(a < b for a, b in x)
    assert all(b1 < a2 for (_, b1), (a2, _) in zip(x, x[1:]))


@given(spans, st.fractions(0, 1))
def test_split_at_measure_is_smallest(x, frac):
    x = iv.normalize(x)
    if not x:
        return
    amount = iv.measure(x) * frac
    t = iv.split_at_measure(x, amount)
    assert iv.measure(iv.clip(x, hi=t)) == amount
    if amount > 0:
        # any earlier point leaves strictly less
        assert iv.measure(iv.clip(x, hi=t - Fraction(1, 10**6))) < amount


def test_split_at_measure_integer_on_unit_slots():
    x = [(Fraction(0), Fraction(1)), (Fraction(3), Fraction(6))]
    assert iv.split_at_measure(x, Fraction(2)) == 4


def test_integral_moment():
    assert iv.integral_moment([(Fraction(0), Fraction(2))]) == 2
