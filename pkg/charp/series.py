import logging
from dataclasses import dataclass
from typing import Tuple

from utils.errors import AmbientMismatchError, BelowPrecisionError, InputFormatError, TruncationOverflowError
from utils.settings import get_settings
from values import NormValue, PExponent

logger = logging.getLogger('perfectoid.charp.series')
logger.setLevel(logging.DEBUG)


def _collect(p, pairs, prec):
    """Sum coefficients per exponent mod p, drop zeros and everything at or above prec."""
    acc = {}
    for exp, coeff in pairs:
        if exp < prec:
            acc[exp] = (acc.get(exp, 0) + coeff) % p
    terms = tuple(sorted((e, c) for e, c in acc.items() if c))
    cap = get_settings().term_cap
    if len(terms) > cap:
        raise TruncationOverflowError(f"Series has {len(terms)} terms (cap {cap})", terms=len(terms), cap=cap)
    return terms


@dataclass(frozen=True)
class CharPSeries:
    """A truncated element of F_p((t^(1/p^oo))), known modulo t^prec."""

    p: int
    terms: Tuple[Tuple[PExponent, int], ...]
    prec: PExponent

    @classmethod
    def make(cls, p, pairs, prec):
        if isinstance(prec, int):
            prec = PExponent.integer(prec, p)
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(p, _collect(p, list(pairs), prec), prec)

    @classmethod
    def zero(cls, p, prec):
        return cls.make(p, (), prec)

    @classmethod
    def one(cls, p, prec):
        return cls.constant(p, 1, prec)

    @classmethod
    def constant(cls, p, c, prec):
        return cls.make(p, [(PExponent.zero(p), c)], prec)

    @classmethod
    def monomial(cls, p, exp, prec, coeff=1):
        if not isinstance(exp, PExponent):
            exp = PExponent.parse(exp, p)
        return cls.make(p, [(exp, coeff)], prec)

    @classmethod
    def t(cls, p, prec):
        return cls.monomial(p, PExponent.integer(1, p), prec)

    @classmethod
    def from_json(cls, payload, p=None):
        try:
            p = int(payload.get("p", p))
            prec = PExponent.from_json(payload["prec"], p)
            pairs = [(PExponent.from_json(term, p), int(term.get("coeff", 1))) for term in payload["terms"]]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputFormatError(f"Malformed series {payload!r}") from e
        return cls.make(p, pairs, prec)

    def to_json(self):
        return {
            "p": self.p,
            "terms": [dict(exp.to_json(), coeff=coeff) for exp, coeff in self.terms],
            "prec": self.prec.to_json(),
        }

    def _ambient(self, other):
        if other.p != self.p:
            raise AmbientMismatchError(f"Series over p={self.p} and p={other.p} do not mix")

    def is_zero(self):
        return not self.terms

    def valuation(self):
        """Smallest term exponent; the precision bound when no term is known."""
        return self.terms[0][0] if self.terms else self.prec

    def is_integral(self):
        return self.valuation() >= 0

    def leading_term(self):
        return self.terms[0] if self.terms else None

    def coefficient(self, exp):
        return dict(self.terms).get(exp, 0)

    def __add__(self, other):
        return cps_add(self, other)

    def __sub__(self, other):
        return cps_add(self, cps_neg(other))

    def __neg__(self):
        return cps_neg(self)

    def __mul__(self, other):
        return cps_mul(self, other)

    def __pow__(self, n):
        return cps_pow(self, n)

    def shift(self, exp):
        if isinstance(exp, int):
            exp = PExponent.integer(exp, self.p)
        return CharPSeries(self.p, tuple((e + exp, c) for e, c in self.terms), self.prec + exp)

    def truncate(self, prec):
        if isinstance(prec, int):
            prec = PExponent.integer(prec, self.p)
        if prec >= self.prec:
            return self
        return CharPSeries(self.p, tuple((e, c) for e, c in self.terms if e < prec), prec)

    def split(self, at):
        """(terms below t^at, terms at or above t^at) at this element's precision."""
        low = [(e, c) for e, c in self.terms if e < at]
        high = [(e, c) for e, c in self.terms if not e < at]
        return CharPSeries(self.p, tuple(low), self.prec), CharPSeries(self.p, tuple(high), self.prec)

    def agrees_with(self, other):
        self._ambient(other)
        bound = min(self.prec, other.prec)
        return self.truncate(bound).terms == other.truncate(bound).terms

    def __str__(self):
        parts = []
        for exp, coeff in self.terms:
            mono = "1" if exp.is_zero() else ("t" if exp == PExponent.integer(1, self.p) else f"t^({exp})")
            parts.append(mono if coeff == 1 else f"{coeff}*{mono}")
        parts.append(f"O(t^({self.prec}))")
        return " + ".join(parts)


def cps_add(f, g):
    f._ambient(g)
    prec = min(f.prec, g.prec)
    return CharPSeries(f.p, _collect(f.p, list(f.terms) + list(g.terms), prec), prec)


def cps_neg(f):
    return CharPSeries(f.p, tuple((e, (-c) % f.p) for e, c in f.terms), f.prec)


def cps_sub(f, g):
    return cps_add(f, cps_neg(g))


def cps_mul(f, g):
    f._ambient(g)
    prec = min(f.valuation() + g.prec, g.valuation() + f.prec)
    pairs = [(ef + eg, cf * cg) for ef, cf in f.terms for eg, cg in g.terms]
    return CharPSeries(f.p, _collect(f.p, pairs, prec), prec)


def frobenius(f):
    """f^p: exponents times p, coefficients fixed (a^p = a in F_p)."""
    return CharPSeries(f.p, tuple((e.mul_p(), c) for e, c in f.terms), f.prec.mul_p())


def pth_root(f):
    return CharPSeries(f.p, tuple((e.div_p(), c) for e, c in f.terms), f.prec.div_p())


def cps_pow(f, n):
    """f^n through the base-p digits of n, each p-power taken by Frobenius."""
    if n < 0:
        raise ValueError("negative powers of truncated series are not supported")
    result = CharPSeries.one(f.p, f.prec if f.is_integral() else f.prec - f.valuation())
    if n == 0:
        return result
    base = f
    first = True
    while n:
        n, digit = divmod(n, f.p)
        for _ in range(digit):
            result = base if first else cps_mul(result, base)
            first = False
        if n:
            base = frobenius(base)
    return result


def cps_norm(f, allow_below_precision=False):
    """|f| = p^(-v(f)) with |t| = p^(-1)."""
    if f.terms:
        return NormValue.pow(f.valuation())
    if allow_below_precision:
        return NormValue.bound(f.prec)
    raise BelowPrecisionError(f"Series is indistinguishable from 0 modulo t^({f.prec})",
                              bound=NormValue.bound(f.prec))
