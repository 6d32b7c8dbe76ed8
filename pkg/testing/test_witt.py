import pytest
import simplejson as json

from charp import CharPSeries, frobenius
from helpers.samples import Samples
from utils.errors import NonIntegralError, PrecisionMismatchError, WittCacheCorruptError, WittCapExceededError
from utils.settings import GlobalConfig, set_settings
from values import PExponent
from witt import (WittVector, build_witt_polys, clear_memory_cache, evaluate_int, ghost_oracle, int_to_witt,
                  load_cache_file, primitive_z, teichmuller, verify_ghost_identities, verschiebung, witt_add,
                  witt_frobenius, witt_mul, witt_neg, witt_sub)


def same(a, b):
    return all(x.agrees_with(y) for x, y in zip(a.components, b.components))


def test_s0_is_plain_sum():
    cache = build_witt_polys(2, 2)
    assert dict(cache.sum_polys[0]) == {(1, 0, 0, 0): 1, (0, 0, 1, 0): 1}


def test_s1_for_p2():
    cache = build_witt_polys(2, 2)
    assert dict(cache.sum_polys[1]) == {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}


def test_p1_for_p2():
    cache = build_witt_polys(2, 2)
    assert dict(cache.prod_polys[1]) == {(2, 0, 0, 1): 1, (0, 1, 2, 0): 1, (0, 1, 0, 1): 2}


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_ghost_identities(p, n):
    cache = build_witt_polys(p, n)
    assert verify_ghost_identities(cache)
    assert all(isinstance(c, int) for poly in cache.sum_polys + cache.prod_polys for _, c in poly)


def test_ghost_components_of_integer_sums():
    cache = build_witt_polys(3, 2)
    x, y = [2, 5], [4, 1]
    total = [evaluate_int(poly, x + y) for poly in cache.sum_polys]
    product = [evaluate_int(poly, x + y) for poly in cache.prod_polys]
    assert ghost_oracle(total, 3) == [a + b for a, b in zip(ghost_oracle(x, 3), ghost_oracle(y, 3))]
    assert ghost_oracle(product, 3) == [a * b for a, b in zip(ghost_oracle(x, 3), ghost_oracle(y, 3))]
    assert ghost_oracle([7, 0], 3) == [7, 7 ** 3]


def test_one_plus_one_is_v_of_one():
    one = int_to_witt(1, 2, 2, 4)
    two = witt_add(one, one)
    assert two.components[0].is_zero()
    assert two.components[1].terms == CharPSeries.one(2, 4).terms
    assert same(two, verschiebung(one))


def test_additive_identity():
    t = teichmuller(CharPSeries.t(2, 4), 3)
    assert witt_add(t, WittVector.zero(2, 3, 4)) == t


def test_teichmuller_is_multiplicative():
    samples = Samples(5, 3)
    for _ in range(10):
        a, b = samples.series(6), samples.series(6)
        assert same(witt_mul(teichmuller(a, 2, 6), teichmuller(b, 2, 6)), teichmuller((a * b).truncate(6), 2, 6))


def test_teichmuller_shapes():
    t = CharPSeries.t(2, 4)
    lift = teichmuller(t, 3)
    assert lift.components[0] == t
    assert all(c.is_zero() for c in lift.components[1:])
    assert teichmuller(CharPSeries.zero(2, 4), 3).is_zero()
    with pytest.raises(NonIntegralError):
        teichmuller(CharPSeries.t(2, 4).shift(-2), 2)


def test_frobenius_of_teichmuller():
    a = CharPSeries.make(2, [(PExponent.parse("1/2", 2), 1), (PExponent.integer(1, 2), 1)], 4)
    assert same(witt_frobenius(teichmuller(a, 2)), teichmuller(frobenius(a).truncate(4), 2))


def test_verschiebung_then_frobenius_is_multiplication_by_p():
    samples = Samples(9, 2)
    x = WittVector.make(2, [samples.series(4, upper=1), samples.series(4, upper=1)], 4)
    two = int_to_witt(2, 2, 2, 4)
    assert same(witt_frobenius(verschiebung(x)), witt_mul(two, x))


def test_ring_axioms_on_random_vectors():
    samples = Samples(3, 2)
    vectors = [WittVector.make(2, samples.digits(2, 3), 3) for _ in range(4)]
    for a in vectors:
        for b in vectors:
            assert same(witt_add(a, b), witt_add(b, a))
            assert same(witt_sub(witt_add(a, b), b), a)
            assert same(witt_mul(a, witt_add(b, vectors[0])), witt_add(witt_mul(a, b), witt_mul(a, vectors[0])))
        assert witt_add(a, witt_neg(a)).is_zero()


def test_primitive_element():
    z = primitive_z(2, 3, 4)
    t = CharPSeries.t(2, 4)
    assert z.components[0].terms == t.terms
    assert same(witt_add(z, int_to_witt(2, 2, 3, 4)), teichmuller(t, 3))


def test_precision_mismatch():
    with pytest.raises(PrecisionMismatchError):
        witt_add(WittVector.zero(2, 2, 4), WittVector.zero(2, 2, 3))


def test_caps():
    with pytest.raises(WittCapExceededError):
        build_witt_polys(2, 0)
    set_settings(GlobalConfig.build(witt_max_degree=4))
    with pytest.raises(WittCapExceededError):
        build_witt_polys(3, 3)


def test_cache_file_round_trip(tmp_path):
    clear_memory_cache()
    cache = build_witt_polys(2, 2, cache_dir=tmp_path)
    path = tmp_path / "witt_p2_n2.json"
    assert path.exists()
    assert load_cache_file(path) == cache


def test_tampered_cache_fails_integrality(tmp_path):
    clear_memory_cache()
    payload = build_witt_polys(2, 2).to_json()
    payload["polys"]["sum"][1][0][1] = 0.5
    (tmp_path / "witt_p2_n2.json").write_text(json.dumps(payload), encoding="utf-8")
    clear_memory_cache()
    with pytest.raises(WittCacheCorruptError, match="Integrality assertion failed"):
        build_witt_polys(2, 2, cache_dir=tmp_path)
    clear_memory_cache()


def test_tampered_cache_fails_ghost_identity(tmp_path):
    clear_memory_cache()
    payload = build_witt_polys(2, 2).to_json()
    payload["polys"]["prod"][1][0][1] += 2
    (tmp_path / "witt_p2_n2.json").write_text(json.dumps(payload), encoding="utf-8")
    clear_memory_cache()
    with pytest.raises(WittCacheCorruptError, match="Ghost identity"):
        build_witt_polys(2, 2, cache_dir=tmp_path)
    clear_memory_cache()


def test_non_integral_component():
    with pytest.raises(NonIntegralError):
        WittVector.make(2, [CharPSeries.t(2, 4).shift(-2)], 4)
