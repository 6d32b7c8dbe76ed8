import itertools
import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from charp import CharPSeries
from gauss import EvalPoint, GaussRadius, GaussRing, PolyGaussCRing, ProductCoordinate
from tilt import Principal
from utils.errors import FamilyIncompleteError, UnsupportedPresentationError
from values import NormValue, format_norm, norm_mul

from .candidates import point_from_text, point_norm, vanishes
from .toyrings import ProductOfFields, QuotientByMonomial, probe_elements

logger = logging.getLogger('perfectoid.spectra.boundary')
logger.setLevel(logging.DEBUG)

RADIUS_DEPTH = 2


def _prec(ring):
    return ring.field.prec if ring.field.side == "charp" else ring.field.N


def _gauss_family(ring):
    p, d = ring.p, ring.d
    family = [GaussRadius.uniform(NormValue.of(k, p), d) for k in range(RADIUS_DEPTH + 1)]
    prec = _prec(ring)
    for i in range(d):
        radii = [NormValue.one(p)] * d
        radii[i] = NormValue.zero(p)
        family.append(GaussRadius(tuple(radii)))
    family.append(EvalPoint.origin(p, d, prec))
    family.append(EvalPoint((CharPSeries.one(p, prec),) * d))
    return family


def _kills(ring, phi, ideal):
    """phi vanishes on the generators of the monomial ideal (the root X_i^(1/p^depth) for an augmentation)."""
    for i, bound in ideal.bounds:
        exp = bound.a if isinstance(bound, Principal) else f"1/{ring.p ** RADIUS_DEPTH}"
        if not ring.base.evaluate(phi, ring.base.variable(i, exp)).is_zero:
            return False
    return True


def berkovich_points(ring, points=None):
    """The declared candidate family of bounded multiplicative seminorms of a toy presentation."""
    if isinstance(ring, ProductOfFields):
        return [ProductCoordinate(i) for i in range(ring.k)]
    if isinstance(ring, PolyGaussCRing):
        family = [GaussRadius((norm_mul(ring.c, NormValue.of(k, ring.p)),)) for k in range(RADIUS_DEPTH + 1)]
        prec = _prec(ring)
        texts = points or ["0", f"t^({ring.c.exp})", f"t^({ring.c.exp + 1})"]
        for text in texts:
            x = text if isinstance(text, CharPSeries) else point_from_text(text, ring.p, prec)
            if point_norm(x) > ring.c:
                logger.debug(f"Point of norm {format_norm(point_norm(x))} exceeds ||T|| = {format_norm(ring.c)}.")
                continue
            family.append(EvalPoint((x,)))
        return family
    if isinstance(ring, QuotientByMonomial):
        return [phi for phi in _gauss_family(ring.base) if _kills(ring, phi, ring.ideal)]
    if isinstance(ring, GaussRing):
        return _gauss_family(ring)
    raise UnsupportedPresentationError(f"No declared seminorm family for {ring.describe()}")


@dataclass(frozen=True)
class ShilovReport:
    family: str
    candidates: Tuple[str, ...]
    minimal: Tuple[Tuple[int, ...], ...]

    @property
    def unique(self):
        return len(self.minimal) == 1

    def boundary(self):
        return self.minimal[0] if self.unique else None

    def to_json(self):
        return {
            "family": self.family,
            "candidates": list(self.candidates),
            "minimal_boundaries": [[self.candidates[j] for j in subset] for subset in self.minimal],
            "unique": self.unique,
        }


def family_name(ring):
    return getattr(ring, "family", None) or ("c-norm-grid+points" if isinstance(ring, PolyGaussCRing)
                                             else "gauss-radius-grid+points")


def shilov_bruteforce(ring, tests=None, candidates=None):
    """All inclusion-minimal subsets S of the family with max_{phi in S} phi(f) = ||f|| for every test f."""
    candidates = candidates if candidates is not None else berkovich_points(ring)
    tests = tests if tests is not None else probe_elements(ring)
    attaining = []
    for f in tests:
        norm = ring.norm(f)
        hits = frozenset(j for j, phi in enumerate(candidates) if ring.evaluate(phi, f).same_value(norm))
        if not hits:
            raise FamilyIncompleteError(f"No seminorm of the family attains ||f|| = {format_norm(norm)} for f = {f}")
        attaining.append(hits)
    minimal = []
    for size in range(len(candidates) + 1):
        for subset in itertools.combinations(range(len(candidates)), size):
            chosen = set(subset)
            if any(set(found) <= chosen for found in minimal):
                continue
            if all(hits & chosen for hits in attaining):
                minimal.append(subset)
    logger.debug(f"{len(minimal)} minimal boundaries among {len(candidates)} candidates.")
    return ShilovReport(family_name(ring), tuple(phi.label() for phi in candidates), tuple(minimal))


@dataclass(frozen=True)
class ZeroDivisorVerdict:
    element: Any
    direct: Optional[bool]
    witness: Any
    reason: str
    escassut: bool
    shilov: Tuple[str, ...]

    @property
    def agree(self):
        return self.direct is None or self.direct == self.escassut

    def to_json(self):
        return {
            "element": self.element.to_json(),
            "direct": "undecided" if self.direct is None else self.direct,
            "witness": None if self.witness is None else self.witness.to_json(),
            "reason": self.reason,
            "escassut": self.escassut,
            "shilov_candidates": list(self.shilov),
            "agree": self.agree,
        }


def _direct_search(ring, f, budget):
    if ring.is_zero(f):
        return True, ring.one(), "f = 0"
    if isinstance(ring, ProductOfFields):
        witness = ring.zero_coordinate_witness(f)
        if witness is not None:
            return True, witness, "constant sequence x = e_i with f x = 0 and ||x|| = 1"
        return False, None, "every coordinate is a unit: ||f x|| >= min_i |f_i| ||x||"
    if ring.multiplicative:
        return False, None, "multiplicative norm: ||f x|| = ||f|| ||x||"
    for x in probe_elements(ring)[:budget]:
        if not ring.is_zero(x) and ring.is_zero(ring.mul(f, x)):
            return True, x, "f x = 0 for a test element x"
    return None, None, f"no witness within a budget of {budget} test elements"


def is_topological_zero_divisor(ring, f, witness_budget=16, tests=None):
    """Direct witness search against the Shilov-boundary vanishing criterion."""
    direct, witness, reason = _direct_search(ring, f, witness_budget)
    candidates = berkovich_points(ring)
    report = shilov_bruteforce(ring, tests, candidates)
    chosen = report.boundary() if report.unique else tuple(sorted(set().union(*report.minimal)))
    escassut = any(vanishes(ring.evaluate(candidates[j], f)) for j in chosen)
    return ZeroDivisorVerdict(f, direct, witness, reason, escassut, tuple(candidates[j].label() for j in chosen))
