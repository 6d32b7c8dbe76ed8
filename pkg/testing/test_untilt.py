import pytest

from charp import CharPSeries, cps_norm
from helpers.samples import Samples
from untilt import (UntiltElement, canonicalize, digit0, from_digits, sharp, untilt_add, untilt_from_int, untilt_mul,
                    untilt_norm, untilt_one, untilt_pow, untilt_pow_p, untilt_sub, untilt_zero)
from utils.errors import AmbientMismatchError, InputFormatError, NonIntegralError
from values import NormValue, PExponent, norm_mul
from witt import WittVector, teichmuller

P, N_WITT, N_T = 2, 3, 8


def series(p, terms, prec=N_T):
    return CharPSeries.make(p, [(PExponent.parse(str(e), p), c) for e, c in terms], prec)


def test_teichmuller_of_t_is_p():
    x = canonicalize(teichmuller(CharPSeries.t(P, N_T), N_WITT))
    assert x.digits[0].is_zero()
    assert x.digits[1].terms == CharPSeries.one(P, N_T).terms
    assert x.digits[2].is_zero()
    assert x.agrees_with(untilt_from_int(P, P, N_WITT, N_T))


def test_teichmuller_below_t_is_its_own_digit():
    a = series(P, [("1/2", 1), ("3/4", 1)])
    x = canonicalize(teichmuller(a, N_WITT))
    assert x.digits[0].terms == a.terms
    assert all(d.is_zero() for d in x.digits[1:])
    assert untilt_norm(x) == cps_norm(a)


def test_canonical_zero():
    x = canonicalize(WittVector.zero(P, N_WITT, N_T))
    assert x.is_zero()
    assert untilt_norm(x).below_precision


def test_sharp_t_plus_sharp_t_is_2p():
    t = sharp(CharPSeries.t(P, N_T), N_WITT, N_T)
    total = untilt_add(t, t)
    assert total.digits[0].is_zero() and total.digits[1].is_zero()
    assert total.digits[2].terms == CharPSeries.one(P, N_T).terms
    assert untilt_norm(total) == NormValue.of(2, P)


def test_adding_zero():
    x = sharp(series(P, [("1/2", 1), (2, 1)]), N_WITT, N_T)
    assert untilt_add(x, untilt_zero(P, N_WITT, N_T)).agrees_with(x)


def test_sharp_is_multiplicative_on_roots():
    root = sharp(series(P, [("1/2", 1)]), N_WITT, N_T)
    assert untilt_pow(root, P).agrees_with(sharp(CharPSeries.t(P, N_T), N_WITT, N_T))


def test_norm_from_digits():
    assert untilt_norm(from_digits([CharPSeries.zero(P, N_T), CharPSeries.one(P, N_T)], 2, N_T)) == NormValue.of(1, P)
    x = from_digits([series(P, [("1/2", 1)]), CharPSeries.one(P, N_T)], 2, N_T)
    assert untilt_norm(x) == NormValue.pow(PExponent.parse("1/2", P))


def test_sharp_examples():
    assert sharp(CharPSeries.one(P, N_T), N_WITT, N_T).agrees_with(untilt_one(P, N_WITT, N_T))
    assert sharp(CharPSeries.t(P, N_T), N_WITT, N_T).agrees_with(untilt_from_int(P, P, N_WITT, N_T))


@pytest.mark.parametrize("p,n,N", [(2, 3, 8), (3, 2, 9), (2, 2, 4)])
def test_norm_identity(p, n, N):
    samples = Samples(17, p)
    for _ in range(20):
        f = samples.series(N, upper=n - 1 if n > 1 else 1)
        assert untilt_norm(sharp(f, n, N)).exact() == cps_norm(f)


def test_norm_is_multiplicative_above_precision():
    samples = Samples(23, P)
    compared = 0
    for _ in range(30):
        x, y = samples.untilt(N_WITT, N_T), samples.untilt(N_WITT, N_T)
        z = untilt_mul(x, y)
        vx, vy = x.valuation(), y.valuation()
        if vx is None or vy is None or not vx + vy < z.abs_precision():
            continue
        compared += 1
        assert untilt_norm(z) == norm_mul(untilt_norm(x), untilt_norm(y))
    assert compared > 0


def test_digit0():
    f = series(P, [(0, 1), ("1/2", 1)])
    assert digit0(sharp(f, N_WITT, N_T)).terms == f.terms
    assert digit0(untilt_from_int(P, P, N_WITT, N_T)).is_zero()
    x = sharp(series(P, [("1/4", 1)]), N_WITT, N_T)
    y = sharp(series(P, [("1/2", 1)]), N_WITT, N_T)
    shifted = untilt_add(x, untilt_mul(untilt_from_int(P, P, N_WITT, N_T), y))
    assert digit0(shifted).terms == digit0(x).terms


def test_laurent_elements():
    t = CharPSeries.t(P, N_T)
    inverse = sharp(CharPSeries.monomial(P, -1, N_T), N_WITT, N_T)
    assert inverse.shift == 1
    assert untilt_norm(inverse) == NormValue.of(-1, P)
    assert untilt_mul(inverse, sharp(t, N_WITT, N_T)).agrees_with(untilt_one(P, N_WITT, N_T))
    with pytest.raises(NonIntegralError):
        digit0(inverse)


def test_subtraction_cancels():
    x = sharp(series(P, [("1/2", 1), (1, 1)]), N_WITT, N_T)
    difference = untilt_sub(x, x)
    assert difference.is_zero()


def test_ambients_do_not_mix():
    with pytest.raises(AmbientMismatchError):
        untilt_add(untilt_one(2, 3, 8), untilt_one(2, 2, 8))


def test_json_round_trip():
    x = sharp(series(P, [("1/2", 1), (1, 1)]), N_WITT, N_T)
    again = UntiltElement.from_json(x.to_json())
    assert again.agrees_with(x)
    assert again.precision == x.precision


def test_json_without_top_level_prime():
    x = sharp(series(3, [("1/3", 2)], 9), N_WITT, 9)
    payload = {key: value for key, value in x.to_json().items() if key != "p"}
    again = UntiltElement.from_json(payload)
    assert again.p == 3
    assert again.agrees_with(x)
    with pytest.raises(InputFormatError):
        UntiltElement.from_json(dict(payload, digits=payload["digits"][:2]))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_repeated_pth_powers_match_direct_power(m):
    x = untilt_add(sharp(series(P, [("1/2", 1), ("3/4", 1)]), N_WITT, N_T), untilt_one(P, N_WITT, N_T))
    chained = untilt_pow_p(x, m)
    assert chained.precision == PExponent.integer(N_WITT, P)
    assert chained.agrees_with(untilt_pow(x, P ** m))


def test_repeated_pth_powers_of_a_multi_digit_element():
    x = Samples(7, 3).untilt(3, 9)
    assert untilt_pow_p(x, 0) is x
    assert untilt_pow_p(x, 1).agrees_with(untilt_pow(x, 3))
