import itertools
import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from charp import CharPSeries
from gauss import GaussRing, PolyGaussCRing
from tilt import Principal, spectral_radical
from utils.errors import UnsupportedPresentationError
from values import NormValue, PExponent, format_norm
from zariski import Verdict, ZarFraction, zar_eq

from .boundary import berkovich_points, family_name
from .candidates import default_candidates, kernel_descriptor, point_norm, point_text, vanishes
from .toyrings import probe_elements

logger = logging.getLogger('perfectoid.spectra.topspec')
logger.setLevel(logging.DEBUG)

IN = "in"
OUT = "out"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class TopSpecRow:
    candidate: Any
    verdict: str
    reason: str
    descriptor: Optional[Any] = None
    bounded: Optional[bool] = None

    def to_json(self):
        return {
            "candidate": self.candidate.label(),
            "verdict": self.verdict,
            "reason": self.reason,
            "descriptor": None if self.descriptor is None else self.descriptor.label(),
            "bounded": self.bounded,
        }


@dataclass(frozen=True)
class TopSpecTable:
    ring: str
    family: str
    rows: Tuple[TopSpecRow, ...]

    def members(self):
        return [row.candidate for row in self.rows if row.verdict == IN]

    def verdicts(self):
        return [row.verdict for row in self.rows]

    def to_json(self):
        return {"ring": self.ring, "family": self.family, "rows": [row.to_json() for row in self.rows]}


def _bounded(ring, phi, tests):
    return all(ring.evaluate(phi, f) <= ring.norm(f) for f in tests)


def _linear_bound(ring):
    if isinstance(ring, PolyGaussCRing):
        return ring.c
    if isinstance(ring, GaussRing):
        return NormValue.one(ring.p)
    return None


def _classify(ring, candidate, tests):
    bound = _linear_bound(ring) if candidate.kind == "linear" else None
    if bound is not None:
        size = point_norm(candidate.point)
        if size > bound:
            return TopSpecRow(candidate, OUT, f"phi({candidate.var}) = {format_norm(size)} > "
                                              f"||{candidate.var}|| = {format_norm(bound)} "
                                              "for any bounded seminorm killing the candidate")
    if candidate.kind == "monomial" and any(isinstance(b, Principal) for _, b in candidate.ideal.bounds):
        radical = spectral_radical(candidate.ideal)
        return TopSpecRow(candidate, OUT, f"every bounded power-multiplicative seminorm killing it kills {radical}")
    phi = kernel_descriptor(ring, candidate)
    if phi is None:
        return TopSpecRow(candidate, UNDECIDED, "no seminorm of the declared family has this kernel")
    generators_killed = all(vanishes(ring.evaluate(phi, f)) == candidate.contains(ring, f) for f in tests)
    if not generators_killed:
        return TopSpecRow(candidate, UNDECIDED, f"ker({phi.label()}) differs from the candidate on the test family", phi)
    return TopSpecRow(candidate, IN, f"kernel of {phi.label()}", phi, _bounded(ring, phi, tests))


def topspec_enumerate(ring, candidates=None):
    """Membership of each candidate prime in TopSpec, relative to the declared seminorm family."""
    candidates = candidates if candidates is not None else default_candidates(ring)
    tests = probe_elements(ring)
    rows = tuple(_classify(ring, candidate, tests) for candidate in candidates)
    return TopSpecTable(ring.describe(), family_name(ring), rows)


@dataclass(frozen=True)
class ZarExtensionRow:
    candidate: Any
    member: bool
    extension: str
    contraction_recovers: Optional[bool]
    prime: Optional[bool]
    reason: str

    def to_json(self):
        return {"candidate": self.candidate.label(), "member": self.member, "extension": self.extension,
                "contraction_recovers": self.contraction_recovers, "prime": self.prime, "reason": self.reason}


def _unit_witness(ring, candidate):
    """1 = (-(T - l)/l) / (1 - T/l) in A^Zar when |l| > c, checked by fraction arithmetic."""
    field = ring.field
    exp, coeff = candidate.point.leading_term()
    one = PExponent.integer(1, ring.p)
    lam = field.point_power(candidate.point, one)
    inverse = CharPSeries.monomial(ring.p, -exp, candidate.point.prec, pow(coeff, -1, ring.p))
    inv = field.point_power(inverse, one)
    generator = ring.polynomial([field.neg(lam), 1])
    numerator = ring.mul(ring.constant(field.neg(inv)), generator)
    fraction = ZarFraction.make(ring, numerator, ring.polynomial([1, field.neg(inv)]))
    return zar_eq(fraction, ZarFraction.make(ring, ring.one())) == Verdict.TRUE


def topspec_zar_compare(ring, candidates=None):
    """Extend each candidate to A^Zar and contract it back."""
    if not isinstance(ring, PolyGaussCRing):
        raise UnsupportedPresentationError("The Zariskisation comparison runs on c-normed polynomial rings")
    table = topspec_enumerate(ring, candidates)
    tests = probe_elements(ring)
    rows = []
    for row in table.rows:
        candidate = row.candidate
        member = row.verdict == IN
        if candidate.kind == "zero":
            rows.append(ZarExtensionRow(candidate, member, "(0)", True, True, "A is a domain inside A^Zar"))
            continue
        if candidate.kind != "linear":
            rows.append(ZarExtensionRow(candidate, member, UNDECIDED, None, None, "not a (T - lambda) candidate"))
            continue
        if member:
            outside = [f for f in tests if not candidate.contains(ring, f)]
            recovers = all(not vanishes(ring.evaluate(row.descriptor, f)) for f in outside)
            rows.append(ZarExtensionRow(
                candidate, True, f"(T - {point_text(candidate.point)}) A^Zar", recovers, True,
                "|s(lambda)| = 1 for every s in 1 + A_<1, so s a lies in the ideal only when a does; "
                "evaluation at lambda extends to A^Zar"))
        else:
            unit = _unit_witness(ring, candidate)
            rows.append(ZarExtensionRow(candidate, False, "unit ideal" if unit else UNDECIDED, False if unit else None,
                                        False if unit else None,
                                        "1 - T/lambda lies in 1 + A_<1 and in the extension"))
    return tuple(rows)


@dataclass(frozen=True)
class CompactnessReport:
    covers: int
    witnessed: int
    gaps: Tuple[Tuple[Tuple[str, ...], str], ...] = ()

    @property
    def consistent(self):
        return not self.gaps

    def to_json(self):
        return {"covers_checked": self.covers, "witnessed": self.witnessed, "consistent": self.consistent,
                "gaps": [{"family": list(family), "killed_by": point} for family, point in self.gaps]}


def quasi_compact_check(ring, table, max_family=3):
    """Families {f_i} whose opens D(f_i) cover the listed members must also cover the declared points.

    A declared point killing every f_i means the f_i do not generate the unit ideal, so the table
    is missing the prime that point cuts out.
    """
    members = table.members()
    points = berkovich_points(ring)
    tests = probe_elements(ring)
    covers = 0
    gaps = []
    for size in range(1, max_family + 1):
        for family in itertools.combinations(tests, size):
            if not all(any(not member.contains(ring, f) for f in family) for member in members):
                continue
            covers += 1
            killer = next((phi for phi in points if all(vanishes(ring.evaluate(phi, f)) for f in family)), None)
            if killer is not None:
                gaps.append((tuple(str(f) for f in family), killer.label()))
    if gaps:
        logger.warning(f"{len(gaps)} covering families of {table.ring} miss a declared point.")
    return CompactnessReport(covers, covers - len(gaps), tuple(gaps))


@dataclass(frozen=True)
class SobrietyReport:
    closed_sets: int
    irreducible: int
    generic_points_unique: bool

    def to_json(self):
        return {"closed_sets": self.closed_sets, "irreducible": self.irreducible,
                "generic_points_unique": self.generic_points_unique}


def sobriety_check(table):
    """Every irreducible closed subset of the member poset has a unique minimal element."""
    members = table.members()
    indices = range(len(members))
    closed = []
    for size in range(1, len(members) + 1):
        for subset in itertools.combinations(indices, size):
            chosen = set(subset)
            if all(j in chosen for i in chosen for j in indices if members[j].includes(members[i])):
                closed.append(frozenset(chosen))
    irreducible = 0
    unique = True
    for z in closed:
        proper = [c for c in closed if c < z]
        if any(a | b == z for a in proper for b in proper):
            continue
        irreducible += 1
        minimal = [i for i in z if not any(j != i and members[i].includes(members[j]) for j in z)]
        unique = unique and len(minimal) == 1
    return SobrietyReport(len(closed), irreducible, unique)

