import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any

from utils.errors import AmbientMismatchError, InvalidFractionError
from utils.settings import get_settings
from values import NormValue, format_norm

logger = logging.getLogger('perfectoid.zariski.fractions')
logger.setLevel(logging.DEBUG)


class Verdict(str, Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class ZarFraction:
    """a / s in A^Zar with s = 1 + x, ||x|| < 1."""

    ring: Any
    numerator: Any
    denominator: Any

    @classmethod
    def make(cls, ring, numerator, denominator=None):
        denominator = ring.one() if denominator is None else denominator
        small = ring.norm(ring.sub(denominator, ring.one()))
        if not small < NormValue.one(ring.p):
            raise InvalidFractionError(
                f"Denominator is not of the form 1 + x with ||x|| < 1 (||x|| = {format_norm(small)})")
        return cls(ring, numerator, denominator)

    def to_json(self):
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}


def _check(fr1, fr2):
    if fr1.ring is not fr2.ring and fr1.ring.describe() != fr2.ring.describe():
        raise AmbientMismatchError(f"Fractions over {fr1.ring.describe()} and {fr2.ring.describe()}")


def zar_add(fr1, fr2):
    _check(fr1, fr2)
    ring = fr1.ring
    numerator = ring.add(ring.mul(fr1.numerator, fr2.denominator), ring.mul(fr2.numerator, fr1.denominator))
    return ZarFraction(ring, numerator, ring.mul(fr1.denominator, fr2.denominator))


def zar_mul(fr1, fr2):
    _check(fr1, fr2)
    ring = fr1.ring
    return ZarFraction(ring, ring.mul(fr1.numerator, fr2.numerator), ring.mul(fr1.denominator, fr2.denominator))


def zar_norm(fr):
    return fr.ring.norm(fr.numerator)


def _exactly_zero(ring, a):
    return ring.is_zero(a) and not getattr(a, "inexact", False)


def zar_eq(fr1, fr2, depth=None):
    """a/s = b/t iff u (t a - s b) = 0 for some u in 1 + A_<1."""
    _check(fr1, fr2)
    ring = fr1.ring
    cross = ring.sub(ring.mul(fr2.denominator, fr1.numerator), ring.mul(fr1.denominator, fr2.numerator))
    if ring.is_zero(cross):
        if getattr(cross, "inexact", False):
            logger.info("Cross product vanishes only at the working precision.")
            return Verdict.UNDECIDED
        return Verdict.TRUE
    if ring.is_domain or ring.complete:
        return Verdict.FALSE
    depth = depth or get_settings().zar_search_depth
    for small in getattr(ring, "small_elements", lambda _: [])(depth):
        if _exactly_zero(ring, ring.mul(ring.add(ring.one(), small), cross)):
            logger.debug("Cross product killed by a multiplier of the form 1 + x.")
            return Verdict.TRUE
    logger.info(f"No multiplier found at search depth {depth}.")
    return Verdict.UNDECIDED
