from fractions import Fraction
from math import ceil, floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contact_spectra.exact import (
    EPS,
    InfRat,
    format_infrat,
    format_rat,
    inf_ceil,
    inf_floor,
    parse_infrat,
    rat_arith,
)
from contact_spectra.exceptions import ValidationError
from oracles import EPS0

rats = st.fractions(max_denominator=10**6).filter(lambda x: abs(x) <= 10**6)
infrats = st.builds(InfRat, rats, rats)


def test_rat_arith_examples():
    assert rat_arith(Fraction(1, 2), Fraction(1, 3), "+") == Fraction(5, 6)
    assert rat_arith(Fraction(13, 11), 1, "-") == Fraction(2, 11)
    assert rat_arith(Fraction(7, 9), 1, "*") == Fraction(7, 9)
    assert rat_arith(6, 4, "/") == Fraction(3, 2)


def test_rat_arith_canonical_and_errors():
    r = rat_arith(Fraction(2, 4), Fraction(-6, 8), "+")
    assert (r.numerator, r.denominator) == (-1, 4)
    with pytest.raises(ZeroDivisionError):
        rat_arith(1, 0, "/")
    with pytest.raises(ValidationError):
        rat_arith(1, 2, "^")
    with pytest.raises(ValidationError):
        rat_arith(0.5, 1, "+")


@pytest.mark.parametrize("x, fl, ce", [
    (InfRat(3, 1), 3, 4),
    (InfRat(3, -1), 2, 3),
    (InfRat(Fraction(7, 2), 5), 3, 4),
    (InfRat(1, Fraction(2, 7)), 1, 2),
    (InfRat(-2, 0), -2, -2),
    (InfRat(Fraction(-1, 3), -9), -1, 0),
])
def test_floor_ceil_examples(x, fl, ce):
    assert inf_floor(x) == fl
    assert inf_ceil(x) == ce


def _guarded(x):
    dist = min(x.std - floor(x.std), ceil(x.std) - x.std)
    return x.std.denominator == 1 or abs(x.inf) * EPS0 < dist


@settings(max_examples=400)
@given(infrats)
def test_floor_ceil_match_concrete_eps(x):
    if not _guarded(x):
        return
    concrete = x.std + x.inf * EPS0
    assert inf_floor(x) == floor(concrete)
    assert inf_ceil(x) == ceil(concrete)


@given(infrats)
def test_floor_ceil_bracket(x):
    lo, hi = inf_floor(x), inf_ceil(x)
    assert hi - lo in (0, 1)
    assert InfRat(lo) <= x <= InfRat(hi)


@given(infrats, infrats, infrats)
def test_order_total_and_translation_invariant(x, y, z):
    assert (x < y) + (x == y) + (x > y) == 1
    if x <= y:
        assert x + z <= y + z


@given(rats, rats, rats.filter(lambda c: c != 0), rats)
def test_first_order_division(a, b, c, d):
    q = InfRat(a, b) / InfRat(c, d)
    eps = Fraction(1, 10**12)
    if c + d * eps == 0:
        return
    concrete = (a + b * eps) / (c + d * eps)
    # the truncation error is exactly second order
    assert concrete - q.at(eps) == eps * eps * d * (a * d - b * c) / (c * c * (c + d * eps))


def test_division_by_one_plus_eps():
    assert InfRat(2) / (1 + EPS) == InfRat(2, -2)
    assert InfRat(2) / (1 - EPS) == InfRat(2, 2)
    with pytest.raises(ZeroDivisionError):
        InfRat(1) / EPS


def test_eps_is_smaller_than_every_positive_rational():
    assert InfRat(0) < EPS < InfRat(Fraction(1, 10**50))
    assert InfRat(5, 10**9) < InfRat(Fraction(5) + Fraction(1, 10**40))


@pytest.mark.parametrize("text", ["2 - 2ε", "1/2 + ε", "-ε", "3", "-1/3 - 5/7ε", "4ε"])
def test_format_parse_round_trip(text):
    x = parse_infrat(text)
    assert format_infrat(x) == text
    assert parse_infrat(format_infrat(x)) == x


def test_parse_accepts_ascii_eps_and_rejects_garbage():
    assert parse_infrat("2 + 3eps") == InfRat(2, 3)
    with pytest.raises(ValidationError):
        parse_infrat("two")
    with pytest.raises(ValidationError):
        parse_infrat("")


def test_format_rat_never_float():
    assert format_rat(Fraction(-6, 4)) == "-3/2"
    assert format_rat(Fraction(8, 4)) == "2"
