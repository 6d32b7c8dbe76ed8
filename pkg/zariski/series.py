import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from utils.settings import get_settings
from values import NormValue, format_norm

logger = logging.getLogger('perfectoid.zariski.series')
logger.setLevel(logging.DEBUG)

CONVERGED = "converged"
DIVERGED_SUPPORT = "diverged-support"
INCONCLUSIVE = "inconclusive"
SKIPPED = "skipped"

NO_COUNTEREXAMPLE = "no counterexample found"
NOT_ZARISKIAN = "not Zariskian: divergence witness found"
UNDETERMINED = "inconclusive"


@dataclass(frozen=True)
class Inversion:
    inverse: Any
    status: str
    terms: int
    residual: Any
    supports: Tuple[int, ...]

    @property
    def converged(self):
        return self.status == CONVERGED

    def to_json(self):
        return {"inverse": self.inverse.to_json(), "status": self.status, "terms": self.terms,
                "residual_norm": format_norm(self.residual), "supports": list(self.supports)}


def _exactly_zero(ring, a):
    return ring.is_zero(a) and not getattr(a, "inexact", False)


def invert_one_plus(x, ring, term_max=None, target=None):
    """Partial sums s_m = sum_{k<m} (-x)^k of 1/(1+x), stopped once (1+x) s_m = 1 to the target.

    Complete rings accept a residual of norm <= target; other rings need it to vanish, and a
    partial-sum support that grows at every step is reported as divergence.
    """
    settings = get_settings()
    term_max = term_max or settings.zar_term_max
    target = target or NormValue.of(settings.witt_length, ring.p)
    one = ring.one()
    base = ring.add(one, x)
    step = ring.neg(x)
    partial = ring.zero()
    power = one
    supports = []
    residual_norm = NormValue.one(ring.p)
    for m in range(1, term_max + 1):
        partial = ring.add(partial, power)
        power = ring.mul(power, step)
        supports.append(ring.support_size(partial))
        residual = ring.sub(ring.mul(base, partial), one)
        residual_norm = ring.norm(residual)
        if _exactly_zero(ring, residual) or (ring.complete and residual_norm <= target):
            logger.debug(f"1/(1+x) converged after {m} terms, residual {format_norm(residual_norm)}.")
            return Inversion(partial, CONVERGED, m, residual_norm, tuple(supports))
    growing = len(supports) > 1 and all(b > a for a, b in zip(supports, supports[1:]))
    status = DIVERGED_SUPPORT if growing and not ring.complete else INCONCLUSIVE
    logger.debug(f"1/(1+x) in {ring.describe()}: {status} after {term_max} terms.")
    return Inversion(partial, status, term_max, residual_norm, tuple(supports))


@dataclass(frozen=True)
class ZariskianReport:
    ring: str
    rows: Tuple[Tuple[Any, Optional[Inversion]], ...]

    @property
    def witness(self):
        return next((x for x, inversion in self.rows if inversion is not None
                     and inversion.status == DIVERGED_SUPPORT), None)

    @property
    def verdict(self):
        if self.witness is not None:
            return NOT_ZARISKIAN
        tested = [inversion for _, inversion in self.rows if inversion is not None]
        if tested and all(inversion.converged for inversion in tested):
            return NO_COUNTEREXAMPLE
        return UNDETERMINED

    def to_json(self):
        rows = []
        for x, inversion in self.rows:
            row = {"sample": x.to_json(), "status": SKIPPED if inversion is None else inversion.status}
            if inversion is not None:
                row["terms"] = inversion.terms
            rows.append(row)
        return {"ring": self.ring, "samples": rows, "verdict": self.verdict}


def is_zariskian_sample(ring, samples, term_max=None, target=None):
    """Invert 1 + x for each sample of norm < 1; one divergence witness settles the question negatively."""
    one = NormValue.one(ring.p)
    rows = []
    for x in samples:
        if not ring.norm(x) < one:
            logger.info(f"Sample of norm {format_norm(ring.norm(x))} is not small; skipped.")
            rows.append((x, None))
            continue
        rows.append((x, invert_one_plus(x, ring, term_max, target)))
    return ZariskianReport(ring.describe(), tuple(rows))
