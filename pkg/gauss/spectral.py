import logging
from dataclasses import dataclass
from typing import Any, Tuple

from utils.errors import NotPowerMultiplicativeError
from utils.settings import get_settings
from values import NormValue, PExponent, format_norm, norm_nth_root, norm_pow

from .element import GaussElement
from .fields import CharPField
from .rings import GaussRing

logger = logging.getLogger('perfectoid.gauss.spectral')
logger.setLevel(logging.DEBUG)


@dataclass(frozen=True)
class SpectralBound:
    """min_n ||f^n||^(1/n) over n <= max_n, with the sequence it was taken from."""

    bound: Any
    sequence: Tuple[Any, ...]
    certificate: Tuple[Any, ...]
    attained_at: int
    exact: bool

    def to_json(self):
        return {
            "bound": format_norm(self.bound),
            "sequence": [format_norm(a) for a in self.sequence],
            "certificate": [format_norm(a) for a in self.certificate],
            "attained_at": self.attained_at,
            "exact": self.exact,
            "n_max": len(self.sequence),
        }


def _exact_zero(value):
    return value.is_zero and not getattr(value, "below_precision", False)


def spectral_seminorm(f, ring=None, max_n=None):
    ring = ring or GaussRing(f.field, f.d)
    max_n = max_n or get_settings().max_spectral_n
    sequence, certificate = [], []
    best, attained_at = None, 0
    power = f
    for n in range(1, max_n + 1):
        if n > 1:
            power = ring.mul(power, f)
        a_n = norm_nth_root(ring.norm(power), n)
        sequence.append(a_n)
        if best is None or a_n < best:
            best, attained_at = a_n, n
        certificate.append(best)
        if _exact_zero(a_n):
            logger.debug(f"Power {n} vanishes exactly; the spectral seminorm is 0.")
            break
    exact = ring.power_multiplicative or _exact_zero(best)
    return SpectralBound(best, tuple(sequence), tuple(certificate), attained_at, exact)


def is_power_bounded(f, ring=None, allow_heuristic=False):
    """f in A° iff ||f|| <= 1 when the norm is power-multiplicative."""
    ring = ring or GaussRing(f.field, f.d)
    one = NormValue.one(ring.p)
    if ring.power_multiplicative:
        return ring.norm(f) <= one
    if not allow_heuristic:
        raise NotPowerMultiplicativeError(
            f"{ring.describe()} is not power-multiplicative; use the spectral bound instead")
    logger.warning(f"Power-boundedness in {ring.describe()} decided from a finite spectral bound.")
    return spectral_seminorm(f, ring).bound <= one


@dataclass(frozen=True)
class CauchyGapRow:
    m: int
    difference: NormValue
    expected: NormValue

    @property
    def matches(self):
        return self.difference == self.expected

    def to_json(self):
        return {"m": self.m, "next": self.m + 1, "difference_norm": format_norm(self.difference),
                "expected": format_norm(self.expected), "matches": self.matches}


@dataclass(frozen=True)
class CauchyGapTable:
    rows: Tuple[CauchyGapRow, ...]

    @property
    def monotone(self):
        return all(b.difference < a.difference for a, b in zip(self.rows, self.rows[1:]))

    def to_json(self):
        return {"rows": [row.to_json() for row in self.rows], "monotone": self.monotone,
                "all_match": all(row.matches for row in self.rows)}


def cauchy_gap_demo(m_max, field=None):
    """Successive differences of s_m = sum_{k <= m} pi^k X^(1/p^k) in the Gauss algebra."""
    if field is None:
        field = CharPField.of(get_settings().p, m_max + 2)
    ring = GaussRing(field, 1)
    pi = field.uniformizer()
    pi_norm = field.norm(pi)
    partial = ring.variable(0)
    rows = []
    term = field.one()
    for m in range(m_max):
        term = field.mul(term, pi)
        step = GaussElement.monomial(field, [PExponent.of(1, m + 1, field.p)], term)
        following = ring.add(partial, step)
        rows.append(CauchyGapRow(m, ring.norm(ring.sub(following, partial)), norm_pow(pi_norm, m + 1)))
        partial = following
    return CauchyGapTable(tuple(rows))
