from fractions import Fraction
import random

import pytest

from utils.errors import AmbientMismatchError, ArithmeticOverflowError, InputFormatError, NormalizationError
from utils.settings import GlobalConfig, set_settings
from values import (NormValue, PExponent, RationalNorm, exp_add, exp_mul, exp_sub, format_norm, norm_div, norm_max,
                    norm_mul, norm_nth_root, norm_pow)


def e(text, p=2):
    return PExponent.parse(text, p)


@pytest.mark.parametrize("a,b,expected", [("1/2", "1/2", "1"), ("0", "3/4", "3/4"), ("3/4", "1/2", "5/4")])
def test_exp_add(a, b, expected):
    assert exp_add(e(a), e(b)) == e(expected)


def test_exponents_are_normalized():
    x = PExponent.of(4, 2, 2)
    assert (x.numerator, x.denom_pow) == (1, 0)
    assert PExponent.of(0, 5, 3) == PExponent.zero(3)
    assert e("6/4") == PExponent.of(3, 1, 2)


def test_exponent_order_matches_rationals():
    rng = random.Random(7)
    values = [PExponent.of(rng.randint(-20, 20), rng.randint(0, 3), 3) for _ in range(40)]
    for a in values:
        for b in values:
            assert (a < b) == (a.fraction < b.fraction)
            assert exp_sub(exp_add(a, b), b) == a


def test_exponent_group_laws():
    rng = random.Random(11)
    values = [PExponent.of(rng.randint(-9, 9), rng.randint(0, 2), 2) for _ in range(12)]
    for a in values:
        for b in values:
            assert a + b == b + a
            for c in values[:4]:
                assert (a + b) + c == a + (b + c)
                if a <= b:
                    assert a + c <= b + c


def test_exp_mul():
    assert exp_mul(e("3/2"), e("1/2")) == e("3/4")


def test_exponent_outside_z_1_over_p():
    with pytest.raises(NormalizationError):
        PExponent.parse("1/3", 2)
    with pytest.raises(InputFormatError):
        PExponent.parse("one half", 2)


def test_exponent_json():
    assert e("3/4").to_json() == {"num": 3, "kpow": 2}
    assert PExponent.from_json({"num": 3, "kpow": 2}, 2) == e("3/4")
    assert PExponent.from_json("5/2", 2) == e("5/2")


def test_exponents_of_different_primes_do_not_mix():
    with pytest.raises(AmbientMismatchError):
        PExponent.integer(1, 2) + PExponent.integer(1, 3)


def test_numerator_capacity():
    set_settings(GlobalConfig.build(max_numerator_bits=16))
    with pytest.raises(ArithmeticOverflowError):
        PExponent.integer(2 ** 20, 2)


def test_norm_mul():
    assert norm_mul(NormValue.of(1, 2), NormValue.of(Fraction(1, 2), 2)) == NormValue.of(Fraction(3, 2), 2)
    assert norm_mul(NormValue.zero(2), NormValue.of(3, 2)).is_zero
    assert norm_mul(NormValue.of(-1, 2), NormValue.of(1, 2)) == NormValue.one(2)


def test_norm_order_and_max():
    assert norm_max(NormValue.of(1, 2), NormValue.of(2, 2)) == NormValue.of(1, 2)
    assert norm_max(NormValue.zero(2), NormValue.of(5, 2)) == NormValue.of(5, 2)
    assert NormValue.zero(2) < NormValue.of(100, 2)
    assert not NormValue.of(3, 2) < NormValue.zero(2)


def test_norm_max_rejects_exponents_outside_value_group():
    with pytest.raises(NormalizationError):
        norm_max(NormValue.of(Fraction(1, 2), 2), NormValue.of(Fraction(1, 3), 2))


def test_norm_nth_root():
    assert norm_nth_root(NormValue.of(2, 2), 2) == NormValue.of(1, 2)
    assert norm_nth_root(NormValue.zero(2), 5).is_zero
    root = norm_nth_root(NormValue.of(1, 2), 3)
    assert isinstance(root, RationalNorm)
    assert root.exponent == Fraction(1, 3)
    assert not root.in_value_group
    assert NormValue.of(1, 2) < root < NormValue.one(2)


def test_norm_pow_and_div():
    assert norm_pow(NormValue.of(Fraction(1, 2), 2), PExponent.integer(3, 2)) == NormValue.of(Fraction(3, 2), 2)
    assert norm_pow(NormValue.zero(2), 0) == NormValue.one(2)
    assert norm_div(NormValue.of(1, 2), NormValue.one(2)) == NormValue.of(1, 2)
    with pytest.raises(ZeroDivisionError):
        norm_div(NormValue.one(2), NormValue.zero(2))


def test_format_norm():
    assert format_norm(NormValue.of(Fraction(3, 2), 2)) == "2^(-3/2)"
    assert format_norm(NormValue.zero(2)) == "0"
    assert format_norm(NormValue.bound(PExponent.integer(8, 2))) == "<= 2^(-8) (below precision)"
    assert format_norm(NormValue.one(3)) == "3^(0)"


def test_norm_json():
    value = NormValue.of(Fraction(1, 4), 2)
    assert value.to_json() == {"exp": {"num": 1, "kpow": 2}}
    assert NormValue.from_json(value.to_json(), 2) == value
    assert NormValue.from_json({"zero": True}, 2).is_zero
