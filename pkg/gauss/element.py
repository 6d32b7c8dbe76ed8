import logging
from dataclasses import dataclass
from typing import Any, Tuple

from utils.errors import AmbientMismatchError, InputFormatError, TruncationOverflowError
from utils.settings import get_settings
from values import PExponent

from .fields import check_same_field

logger = logging.getLogger('perfectoid.gauss.element')
logger.setLevel(logging.DEBUG)


def _collect(field, pairs):
    acc = {}
    for exps, coeff in pairs:
        acc[exps] = field.add(acc[exps], coeff) if exps in acc else coeff
    terms = tuple(sorted((e, c) for e, c in acc.items() if not field.is_zero(c)))
    cap = get_settings().term_cap
    if len(terms) > cap:
        raise TruncationOverflowError(f"Gauss element has {len(terms)} terms (cap {cap})", terms=len(terms), cap=cap)
    return terms


@dataclass(frozen=True)
class GaussElement:
    """Finite sum of c_nu X^nu with nu in (Z[1/p]_{>=0})^d over a coefficient field.

    inexact records that a product of nonzero coefficients vanished at the working precision.
    """

    field: Any
    d: int
    terms: Tuple[Tuple[Tuple[PExponent, ...], Any], ...]
    inexact: bool = False

    @property
    def p(self):
        return self.field.p

    @property
    def side(self):
        return self.field.side

    @classmethod
    def make(cls, field, d, pairs, inexact=False):
        pairs = list(pairs.items()) if isinstance(pairs, dict) else list(pairs)
        for exps, _ in pairs:
            if len(exps) != d:
                raise AmbientMismatchError(f"Monomial {exps} does not have {d} exponents")
            if any(e < 0 for e in exps):
                raise InputFormatError(f"Gauss exponents must be nonnegative, got {[str(e) for e in exps]}")
        return cls(field, d, _collect(field, pairs), inexact)

    @classmethod
    def zero(cls, field, d):
        return cls(field, d, ())

    @classmethod
    def constant(cls, field, d, c):
        if isinstance(c, int):
            c = field.from_int(c)
        return cls.make(field, d, [((PExponent.zero(field.p),) * d, c)])

    @classmethod
    def one(cls, field, d):
        return cls.constant(field, d, 1)

    @classmethod
    def monomial(cls, field, exps, coeff=1):
        exps = tuple(e if isinstance(e, PExponent) else PExponent.parse(str(e), field.p) for e in exps)
        if isinstance(coeff, int):
            coeff = field.from_int(coeff)
        return cls.make(field, len(exps), [(exps, coeff)])

    @classmethod
    def variable(cls, field, d, i, exp=1):
        exps = [PExponent.zero(field.p)] * d
        exps[i] = exp if isinstance(exp, PExponent) else PExponent.parse(str(exp), field.p)
        return cls.monomial(field, exps)

    @classmethod
    def from_json(cls, payload, field):
        try:
            d = int(payload["d"])
            side = payload.get("side", field.side)
            pairs = [(tuple(PExponent.from_json(e, field.p) for e in term["exps"]),
                      field.element_from_json(term["coeff"]))
                     for term in payload["terms"]]
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputFormatError(f"Malformed Gauss element {payload!r}") from e
        if side != field.side:
            raise AmbientMismatchError(f"Element is on the {side} side, the ring is on the {field.side} side")
        return cls.make(field, d, pairs)

    def to_json(self):
        payload = {
            "side": self.side,
            "d": self.d,
            "terms": [{"exps": [e.to_json() for e in exps], "coeff": c.to_json()} for exps, c in self.terms],
        }
        if self.inexact:
            payload["inexact"] = True
        return payload

    def is_zero(self):
        return not self.terms

    def coefficient(self, exps):
        return dict(self.terms).get(tuple(exps))

    def constant_term(self):
        return self.coefficient((PExponent.zero(self.p),) * self.d)

    def degree(self, i=0):
        """Largest exponent of X_i, None for 0."""
        return max((exps[i] for exps, _ in self.terms), default=None)

    def support_size(self):
        return len(self.terms)

    def __add__(self, other):
        return gauss_add(self, other)

    def __sub__(self, other):
        return gauss_sub(self, other)

    def __neg__(self):
        return gauss_neg(self)

    def __mul__(self, other):
        return gauss_mul(self, other)

    def __pow__(self, m):
        return gauss_pow(self, m)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.terms:
            mono = "*".join(f"X{i + 1}^({e})" for i, e in enumerate(exps) if not e.is_zero())
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


def _check(f, g):
    check_same_field(f.field, g.field)
    if f.d != g.d:
        raise AmbientMismatchError(f"Gauss elements in {f.d} and {g.d} variables do not mix")


def gauss_add(f, g):
    _check(f, g)
    return GaussElement(f.field, f.d, _collect(f.field, list(f.terms) + list(g.terms)), f.inexact or g.inexact)


def gauss_neg(f):
    return GaussElement(f.field, f.d, tuple((e, f.field.neg(c)) for e, c in f.terms), f.inexact)


def gauss_sub(f, g):
    return gauss_add(f, gauss_neg(g))


def gauss_scale(f, c):
    """c * f for a coefficient c."""
    lost = False
    pairs = []
    for exps, a in f.terms:
        product = f.field.mul(c, a)
        lost = lost or f.field.is_zero(product)
        pairs.append((exps, product))
    return GaussElement(f.field, f.d, _collect(f.field, pairs), f.inexact or lost)


def gauss_mul(f, g):
    _check(f, g)
    field = f.field
    lost = False
    pairs = []
    for ef, cf in f.terms:
        for eg, cg in g.terms:
            product = field.mul(cf, cg)
            lost = lost or field.is_zero(product)
            pairs.append((tuple(a + b for a, b in zip(ef, eg)), product))
    if lost:
        logger.debug(f"Coefficient products vanished at the working precision of {field.describe()}.")
    return GaussElement(field, f.d, _collect(field, pairs), f.inexact or g.inexact or lost)


def gauss_pow(f, m):
    if m < 0:
        raise ValueError("negative powers are not supported")
    result = GaussElement.one(f.field, f.d)
    base = f
    while m:
        if m & 1:
            result = gauss_mul(result, base)
        m >>= 1
        if m:
            base = gauss_mul(base, base)
    return result
