import pytest

from gauss import CharPField, DualNumbers, GaussRing, PolyGaussCRing
from spectra import (IN, OUT, CandidatePrime, ProductOfFields, QuotientByMonomial, berkovich_points,
                     default_candidates, is_topological_zero_divisor, point_from_text, quasi_compact_check,
                     quotient_by, shilov_bruteforce, sobriety_check, topspec_enumerate, topspec_zar_compare)
from tilt import MonomialIdeal
from utils.errors import (AmbientMismatchError, FamilyIncompleteError, InputFormatError,
                          UnsupportedPresentationError)
from values import NormValue, PExponent

P, N_T = 2, 8
FIELD = CharPField.of(P, N_T)


@pytest.fixture
def k2():
    return ProductOfFields(FIELD, 2)


@pytest.fixture
def poly():
    return PolyGaussCRing(FIELD, NormValue.of(1, P))


def linear(*texts):
    return [CandidatePrime.linear(point_from_text(text, P, N_T)) for text in texts]


def test_product_shilov_boundary_is_both_coordinates(k2):
    report = shilov_bruteforce(k2, [k2.element([1, 0]), k2.element([0, 1]), k2.element([1, 1])])
    assert report.unique
    assert report.boundary() == (0, 1)
    assert report.to_json()["minimal_boundaries"] == [["coord[1]", "coord[2]"]]
    assert shilov_bruteforce(k2).boundary() == (0, 1)


def test_gauss_point_is_the_only_single_boundary():
    report = shilov_bruteforce(GaussRing(FIELD, 1))
    assert [subset for subset in report.minimal if len(subset) == 1] == [(0,)]
    assert report.candidates[0].startswith("phi_r[")


def test_empty_family_is_incomplete(k2):
    with pytest.raises(FamilyIncompleteError):
        shilov_bruteforce(k2, candidates=[])


@pytest.mark.parametrize("values, expected", [
    ([1, 0], True),
    ([0, 0], True),
    ([1, 1], False),
])
def test_zero_divisor_criteria_agree(k2, values, expected):
    verdict = is_topological_zero_divisor(k2, k2.element(values))
    assert verdict.direct is expected
    assert verdict.escassut is expected
    assert verdict.agree


def test_zero_divisor_with_small_unit_coordinate(k2):
    f = k2.element([FIELD.uniformizer(), 1])
    verdict = is_topological_zero_divisor(k2, f)
    assert verdict.direct is False
    assert not verdict.escassut
    assert verdict.to_json()["agree"]


def test_polynomial_topspec(poly):
    table = topspec_enumerate(poly, linear("0", "p", "1"))
    assert table.verdicts() == [IN, IN, OUT]
    assert len(table.members()) == 2
    assert table.to_json()["rows"][2]["verdict"] == OUT


def test_polynomial_zariskisation(poly):
    rows = topspec_zar_compare(poly, linear("0", "p", "1"))
    assert all(row.contraction_recovers for row in rows if row.member)
    outside = rows[2]
    assert not outside.member
    assert outside.extension == "unit ideal"
    assert outside.contraction_recovers is False


def test_zariskisation_needs_a_polynomial_ring():
    with pytest.raises(UnsupportedPresentationError):
        topspec_zar_compare(GaussRing(FIELD, 1))


def test_gauss_ring_topspec_and_sobriety():
    ring = GaussRing(FIELD, 1)
    table = topspec_enumerate(ring)
    assert table.verdicts() == [IN, IN, IN]
    assert table.to_json()["rows"][2]["candidate"] == "(X - 1)"
    sober = sobriety_check(table)
    assert sober.generic_points_unique
    assert sober.closed_sets == 4
    assert sober.irreducible == 3
    report = quasi_compact_check(ring, table)
    assert report.consistent
    assert report.covers > 0
    assert report.witnessed == report.covers


def test_missing_prime_breaks_quasi_compactness():
    ring = GaussRing(FIELD, 1)
    augmentation = CandidatePrime.monomial(MonomialIdeal.augmentation("tilt"))
    report = quasi_compact_check(ring, topspec_enumerate(ring, [augmentation]))
    assert not report.consistent
    one_minus_x = str(ring.sub(ring.constant(1), ring.variable(0)))
    assert ((one_minus_x,), "eval[" + str(FIELD.one()) + "]") in report.gaps
    assert report.witnessed < report.covers
    assert not report.to_json()["consistent"]


def test_product_cover_missing_a_coordinate(k2):
    report = quasi_compact_check(k2, topspec_enumerate(k2, [CandidatePrime.coordinate(0)]))
    assert not report.consistent
    assert ((str(k2.idempotent(0)),), "coord[2]") in report.gaps
    assert quasi_compact_check(k2, topspec_enumerate(k2)).consistent


def test_linear_candidate_outside_the_disc_is_not_a_member():
    ring = GaussRing(FIELD, 1)
    far = CandidatePrime.linear(point_from_text("t^(-1)", P, N_T), "X")
    assert topspec_enumerate(ring, [far]).verdicts() == [OUT]


def test_principal_candidate_is_not_a_member():
    ring = GaussRing(FIELD, 1)
    candidate = CandidatePrime.monomial(MonomialIdeal.principal("tilt", PExponent.integer(1, P)))
    table = topspec_enumerate(ring, [candidate])
    assert table.verdicts() == [OUT]


def test_quotient_by_augmentation():
    ring = quotient_by(GaussRing(FIELD, 1))
    assert ring.power_multiplicative
    assert ring.is_domain
    assert ring.is_zero(ring.variable(0))
    assert topspec_enumerate(ring).verdicts() == [IN]
    assert len(berkovich_points(ring)) > 0


def test_quotient_by_principal_ideal():
    ring = quotient_by(GaussRing(FIELD, 1), MonomialIdeal.principal("tilt", PExponent.integer(1, P)))
    assert not ring.power_multiplicative
    assert not ring.is_domain
    assert not ring.is_zero(ring.variable(0, "1/2"))


def test_quotient_presentation_checks(poly):
    with pytest.raises(UnsupportedPresentationError):
        QuotientByMonomial(poly, MonomialIdeal.augmentation("tilt"))
    with pytest.raises(AmbientMismatchError):
        QuotientByMonomial(GaussRing(FIELD, 1), MonomialIdeal.augmentation("tilt", 2))


def test_declared_families(k2, poly):
    assert len(berkovich_points(k2)) == 2
    assert len(berkovich_points(poly)) == 6
    with pytest.raises(UnsupportedPresentationError):
        berkovich_points(DualNumbers(FIELD))


def test_default_candidates(k2, poly):
    assert [c.label() for c in default_candidates(k2)] == ["ker(coord[1])", "ker(coord[2])"]
    assert [c.label() for c in default_candidates(poly)] == ["(0)", "(T - 0)", "(T - p)", "(T - 1)"]


def test_candidate_json():
    candidate = CandidatePrime.from_json({"kind": "linear", "lambda": "p"}, P, N_T)
    assert candidate.label() == "(T - p)"
    assert candidate.to_json()["lambda"] == "p"
    assert CandidatePrime.from_json({"kind": "coordinate", "index": 1}, P, N_T) == CandidatePrime.coordinate(1)
    with pytest.raises(InputFormatError):
        CandidatePrime.from_json({"kind": "maximal"}, P, N_T)
    with pytest.raises(InputFormatError):
        CandidatePrime.from_json({"kind": "coordinate"}, P, N_T)
