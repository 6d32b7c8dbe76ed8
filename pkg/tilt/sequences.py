import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from charp import CharPSeries, cps_add, cps_norm, pth_root
from untilt import UntiltElement, sharp, untilt_add, untilt_norm, untilt_pow, untilt_pow_p
from utils.errors import NonIntegralError
from utils.settings import get_settings
from values import PExponent, format_norm

logger = logging.getLogger('perfectoid.tilt.sequences')
logger.setLevel(logging.DEBUG)


def _root(f, m):
    for _ in range(m):
        f = pth_root(f)
    return f


@dataclass(frozen=True)
class TiltSequence:
    """The compatible p-power sequence f^(m) = (f^(1/p^m))^# of a tilt element f."""

    base: CharPSeries
    n: int
    N: PExponent

    @classmethod
    def of(cls, base, n=None, N=None):
        settings = get_settings()
        n = n or settings.witt_length
        N = N or settings.t_prec()
        if isinstance(N, int):
            N = PExponent.integer(N, base.p)
        if not base.is_integral():
            raise NonIntegralError(f"Tilt sequences are built from integral elements, got {base}")
        return cls(base, n, N)

    @property
    def p(self):
        return self.base.p

    def term(self, m):
        return sharp(_root(self.base, m), self.n, self.N)

    def roots(self, m_max):
        """f, f^(1/p), ..., f^(1/p^m_max), each from the previous one."""
        roots = [self.base]
        for _ in range(m_max):
            roots.append(pth_root(roots[-1]))
        return roots

    def terms(self, m_max):
        return [sharp(root, self.n, self.N) for root in self.roots(m_max)]

    def verify(self, m_max):
        """Frobenius compatibility of the materialized terms and |f^#| = |f|."""
        terms = self.terms(m_max)
        compatible = all(untilt_pow(terms[m + 1], self.p).agrees_with(terms[m]) for m in range(m_max))
        if self.base.is_zero():
            norm_identity = untilt_norm(terms[0]).is_zero or untilt_norm(terms[0]).below_precision
        else:
            norm_identity = untilt_norm(terms[0]).exact() == cps_norm(self.base)
        if not compatible:
            logger.warning(f"Frobenius compatibility failed for the sequence of {self.base}.")
        return SequenceCheck(m_max, compatible, norm_identity)


@dataclass(frozen=True)
class SequenceCheck:
    m_max: int
    frobenius_compatible: bool
    norm_identity: bool

    @property
    def ok(self):
        return self.frobenius_compatible and self.norm_identity

    def to_json(self):
        return {"m_max": self.m_max, "frobenius_compatible": self.frobenius_compatible,
                "norm_identity": self.norm_identity}


@dataclass(frozen=True)
class AdditionLimitReport:
    values: Tuple[UntiltElement, ...]
    stabilized_at: Optional[int]
    expected: UntiltElement

    @property
    def stable_value(self):
        return None if self.stabilized_at is None else self.values[self.stabilized_at]

    @property
    def matches(self):
        return self.stable_value is not None and self.stable_value.agrees_with(self.expected)

    def to_json(self):
        return {
            "values": [v.to_json() for v in self.values],
            "stabilized": self.stabilized_at is not None,
            "stabilized_at": self.stabilized_at,
            "stable_value": None if self.stable_value is None else self.stable_value.to_json(),
            "expected": self.expected.to_json(),
            "matches": self.matches,
            "norms": [format_norm(untilt_norm(v)) for v in self.values],
        }


def _first_stable_index(values):
    """Smallest m with values[m] = ... = values[-1], provided at least two entries agree."""
    last = values[-1]
    index = len(values) - 1
    while index > 0 and values[index - 1].agrees_with(last):
        index -= 1
    return index if index < len(values) - 1 else None


def tilt_add_limit(f, g, n=0, m_max=None, witt_n=None, N=None):
    """s_m = (f^(n+m) + g^(n+m))^(p^m) against (f + g)^(n)."""
    settings = get_settings()
    m_max = settings.tilt_m_max if m_max is None else m_max
    first = TiltSequence.of(f, witt_n, N)
    second = TiltSequence.of(g, first.n, first.N)
    pairs = zip(first.terms(n + m_max)[n:], second.terms(n + m_max)[n:])
    values = [untilt_pow_p(untilt_add(a, b), m) for m, (a, b) in enumerate(pairs)]
    stabilized_at = _first_stable_index(values)
    if stabilized_at is None:
        logger.info(f"No stabilization within m_max={m_max} for f={f}, g={g}.")
    else:
        logger.debug(f"Addition limit stabilized at m={stabilized_at}.")
    expected = TiltSequence.of(cps_add(f, g), first.n, first.N).term(n)
    return AdditionLimitReport(tuple(values), stabilized_at, expected)
