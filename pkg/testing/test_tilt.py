import pytest

from charp import CharPSeries
from gauss import CharPField, EvalPoint, GaussElement, GaussRadius, ProductCoordinate, UntiltField
from helpers.samples import Samples
from tilt import (MonomialIdeal, TiltSequence, approx_construct, approx_verify, check_disjunction, compare_kernels,
                  descriptor_kernel, dominant_monomial, gauss_sharp, ideal_sharp, ideal_sum, ideal_tilt, is_radical,
                  is_spectrally_reduced, primality_witness, quotient_domain_check, seminorm_tilt,
                  sharp_contract_holds, spectral_radical, tilt_add_limit)
from untilt import from_digits, sharp, untilt_add, untilt_from_int, untilt_mul, untilt_zero
from utils.errors import (AmbientMismatchError, DescriptorMismatchError, NonIntegralError, UnsupportedFamilyError,
                          UnsupportedIdealError)
from values import NormValue, PExponent

P, N_WITT, N_T = 2, 3, 8
TILT = CharPField.of(P, N_T)
UNTILT = UntiltField.of(P, N_WITT, N_T)


def exp(text):
    return PExponent.parse(text, P)


def principal(text, side="untilt"):
    return MonomialIdeal.principal(side, exp(text))


def test_sequence_of_t_is_compatible():
    base = CharPSeries.t(P, PExponent.integer(N_T, P).mul_p(2))
    check = TiltSequence.of(base, N_WITT, N_T).verify(2)
    assert check.frobenius_compatible
    assert check.norm_identity
    assert check.ok


def test_sequence_needs_integral_base():
    with pytest.raises(NonIntegralError):
        TiltSequence.of(CharPSeries.monomial(P, -1, N_T), N_WITT, N_T)


def test_addition_limit_of_t_plus_t_is_zero():
    t = CharPSeries.t(P, PExponent.integer(N_T, P).mul_p(3))
    report = tilt_add_limit(t, t, 0, m_max=3, witt_n=N_WITT, N=N_T)
    assert report.stabilized_at is not None
    assert report.stabilized_at <= N_WITT
    assert report.stable_value.is_zero()
    assert report.matches
    assert report.to_json()["stabilized"]


def test_tilting_a_principal_ideal_gives_zero():
    assert ideal_tilt(principal("1")) == MonomialIdeal.zero("tilt")
    assert ideal_tilt(MonomialIdeal.augmentation("untilt")) == MonomialIdeal.augmentation("tilt")


def test_tilt_and_sharp_sides():
    with pytest.raises(UnsupportedIdealError):
        ideal_tilt(principal("1", "tilt"))
    with pytest.raises(UnsupportedIdealError):
        ideal_sharp(principal("1", "tilt"))
    assert ideal_sharp(MonomialIdeal.augmentation("tilt")) == MonomialIdeal.augmentation("untilt")


def test_principal_bound_must_be_positive():
    with pytest.raises(UnsupportedIdealError):
        principal("0")


def test_ideal_json():
    ideal = MonomialIdeal.from_json({"kind": "principal", "bound": "1"}, P)
    assert ideal == principal("1")
    assert ideal_tilt(ideal).to_json() == {"kind": "zero"}
    two = MonomialIdeal.make("untilt", 2, {1: MonomialIdeal.augmentation("untilt").bound(0)})
    payload = two.to_json()
    assert payload["kind"] == "monomial"
    assert MonomialIdeal.from_json(payload, P) == two
    named = MonomialIdeal.from_json({"kind": "augmentation", "var": "X2"}, P, d=2)
    assert named == two


def test_sum_and_inclusion():
    assert ideal_sum(principal("1"), principal("1/2")) == principal("1/2")
    m_x = MonomialIdeal.augmentation("untilt")
    assert ideal_sum(principal("1"), m_x) == m_x
    assert principal("1") <= principal("1/2")
    assert not principal("1/2") <= principal("1")
    assert principal("1") <= m_x
    assert MonomialIdeal.zero("untilt") <= principal("1")
    with pytest.raises(AmbientMismatchError):
        principal("1") <= principal("1", "tilt")


@pytest.mark.parametrize("text", ["1", "2", "1/2"])
def test_spectral_radical_of_principal_is_augmentation(text):
    assert spectral_radical(principal(text, "tilt")) == MonomialIdeal.augmentation("tilt")


def test_radical_and_spectrally_reduced_differ():
    assert not is_radical(principal("1"), P)
    assert is_radical(MonomialIdeal.augmentation("untilt"), P)
    assert not is_spectrally_reduced(principal("1"), P)
    assert is_spectrally_reduced(MonomialIdeal.augmentation("untilt"), P)
    assert is_spectrally_reduced(MonomialIdeal.zero("untilt"), P)


def test_primality():
    report = primality_witness(principal("1"), P)
    assert not report.prime
    u, v = report.witness
    assert principal("1").contains_term(tuple(a + b for a, b in zip(u, v)))
    assert primality_witness(MonomialIdeal.augmentation("untilt"), P).prime
    assert primality_witness(MonomialIdeal.augmentation("untilt", 2, [0]), P).prime
    assert quotient_domain_check(MonomialIdeal.augmentation("untilt"), P) == (True, True)
    with pytest.raises(UnsupportedIdealError):
        quotient_domain_check(principal("1"), P)


def test_membership():
    m_x = MonomialIdeal.augmentation("tilt")
    inside = GaussElement.variable(TILT, 1, 0, "1/2")
    assert m_x.contains(inside)
    assert not m_x.contains(inside + GaussElement.one(TILT, 1))
    with pytest.raises(AmbientMismatchError):
        MonomialIdeal.augmentation("untilt").contains(inside)


def test_descriptor_kernels():
    assert descriptor_kernel(GaussRadius((NormValue.zero(P),)), 1) == MonomialIdeal.augmentation("untilt")
    assert descriptor_kernel(GaussRadius.unit(P, 1), 1).is_zero
    assert descriptor_kernel(EvalPoint.origin(P, 1, N_T), 1) == MonomialIdeal.augmentation("untilt")
    assert descriptor_kernel(EvalPoint((CharPSeries.t(P, N_T),)), 1) is None


def test_seminorm_tilt_changes_side_only():
    phi = GaussRadius((NormValue.of(1, P),), side="untilt")
    flat = seminorm_tilt(phi)
    assert flat.side == "charp"
    assert flat.radii == phi.radii
    with pytest.raises(DescriptorMismatchError):
        seminorm_tilt(flat)
    with pytest.raises(UnsupportedFamilyError):
        seminorm_tilt(ProductCoordinate(0))


def test_sharp_contract_on_monomials():
    root = CharPSeries.make(P, [(exp("1/2"), 1)], N_T)
    g = GaussElement.monomial(TILT, ["1/2"], root)
    phi = GaussRadius((NormValue.of(1, P),), side="untilt")
    assert sharp_contract_holds(phi, g, UNTILT)
    with pytest.raises(UnsupportedFamilyError):
        gauss_sharp(g + GaussElement.one(TILT, 1), UNTILT)


def test_kernel_comparison():
    killing = compare_kernels(GaussRadius((NormValue.zero(P),)), 1)
    assert killing.compatible
    assert not killing.absolute_value
    gauss = compare_kernels(GaussRadius.unit(P, 1), 1)
    assert gauss.compatible
    assert gauss.absolute_value and gauss.tilted_absolute_value
    point = compare_kernels(EvalPoint((CharPSeries.t(P, N_T),)), 1)
    assert point.kernel is None and point.compatible


def untilt_poly(coefficients):
    pairs = [((PExponent.integer(i, P),), untilt_from_int(c, P, N_WITT, N_T)) for i, c in enumerate(coefficients)]
    return GaussElement.make(UNTILT, 1, pairs)


def test_approximation_of_p_plus_p_squared_x():
    f = untilt_poly([P, P * P])
    eps = NormValue.of(3, P)
    g = approx_construct(f, eps)
    assert g.side == "charp"
    assert [(exps[0], c.terms) for exps, c in g.terms] == [
        (PExponent.zero(P), CharPSeries.t(P, N_T).terms),
        (PExponent.integer(1, P), CharPSeries.monomial(P, 2, N_T).terms),
    ]
    assert check_disjunction(f, g, eps).holds


def test_approximation_drops_small_terms():
    f = untilt_poly([P, P * P])
    eps = NormValue.one(P)
    g = approx_construct(f, eps)
    assert g.is_zero()
    assert check_disjunction(f, g, eps).holds


def test_dominant_monomial():
    assert dominant_monomial(untilt_zero(P, N_WITT, N_T)) is None
    exponent, coeff = dominant_monomial(untilt_from_int(P, P, N_WITT, N_T))
    assert exponent == PExponent.integer(1, P)
    assert coeff == 1


def test_dominant_monomial_picks_the_largest_digit():
    digits = [CharPSeries.zero(P, N_T), CharPSeries.make(P, [(PExponent.parse("1/2", P), 1)], N_T),
              CharPSeries.make(P, [(PExponent.zero(P), 1)], N_T)]
    exponent, coeff = dominant_monomial(from_digits(digits, N_WITT, N_T))
    assert exponent == PExponent.parse("3/2", P)
    assert coeff == 1


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_approximation_with_multi_digit_coefficients(seed):
    samples = Samples(seed, P)
    f = samples.gauss(UNTILT, lambda: samples.untilt(N_WITT, PExponent.integer(N_T, P)), terms=3, upper=1)
    for eps in (NormValue.one(P), NormValue.of(1, P), NormValue.of(3, P)):
        assert check_disjunction(f, approx_construct(f, eps), eps).holds


def test_approx_verify_fixtures():
    t = CharPSeries.t(P, N_T)
    one = CharPSeries.one(P, N_T)
    p_value = untilt_from_int(P, P, N_WITT, N_T)
    assert approx_verify(sharp(t, N_WITT, N_T), t, NormValue.one(P)).passes
    shifted = untilt_add(sharp(t, N_WITT, N_T), untilt_mul(p_value, sharp(one, N_WITT, N_T)))
    assert approx_verify(shifted, t, NormValue.one(P)).passes
    assert approx_verify(p_value, t, NormValue.of(2, P)).passes


def test_approx_verify_on_gauss_elements():
    f = GaussElement.make(UNTILT, 1, [((PExponent.integer(1, P),), untilt_from_int(P, P, N_WITT, N_T))])
    g = GaussElement.monomial(TILT, ["1"], CharPSeries.t(P, N_T))
    report = approx_verify(f, g, NormValue.of(2, P))
    assert report.passes
    assert len(report.rows) == 3
    with pytest.raises(DescriptorMismatchError):
        approx_verify(untilt_from_int(P, P, N_WITT, N_T), g, NormValue.one(P))


@pytest.mark.parametrize("seed", [11, 12])
def test_addition_limit_of_random_series_at_three(seed):
    samples = Samples(seed, 3)
    prec = PExponent.integer(9, 3).mul_p(3)
    f = samples.series(prec, terms=2, upper=1)
    g = samples.series(prec, terms=2, upper=1)
    report = tilt_add_limit(f, g, 0, m_max=3, witt_n=3, N=9)
    assert report.stabilized_at is not None
    assert report.matches
