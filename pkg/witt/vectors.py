import logging
from dataclasses import dataclass
from typing import Tuple

from charp import CharPSeries, cps_neg, frobenius
from utils.errors import AmbientMismatchError, InputFormatError, NonIntegralError, PrecisionMismatchError
from values import PExponent

from .polynomials import build_witt_polys, evaluate_charp

logger = logging.getLogger('perfectoid.witt.vectors')
logger.setLevel(logging.DEBUG)


@dataclass(frozen=True)
class WittVector:
    """A length-n p-typical Witt vector over O_F / t^prec."""

    p: int
    components: Tuple[CharPSeries, ...]
    prec: PExponent

    @classmethod
    def make(cls, p, components, prec):
        if isinstance(prec, int):
            prec = PExponent.integer(prec, p)
        reduced = []
        for i, x in enumerate(components):
            if x.p != p:
                raise AmbientMismatchError(f"Component {i} lives over p={x.p}, expected p={p}")
            if not x.is_integral():
                raise NonIntegralError(f"Witt component {i} has negative valuation {x.valuation()}")
            if x.prec < prec:
                raise PrecisionMismatchError(f"Witt component {i} is only known modulo t^({x.prec})")
            reduced.append(x.truncate(prec))
        return cls(p, tuple(reduced), prec)

    @classmethod
    def zero(cls, p, length, prec):
        return cls.make(p, [CharPSeries.zero(p, prec)] * length, prec)

    @classmethod
    def from_json(cls, payload):
        try:
            p = int(payload["p"])
            prec = PExponent.from_json(payload["prec"], p)
            components = [CharPSeries.from_json(c, p) for c in payload["components"]]
        except (KeyError, TypeError) as e:
            raise InputFormatError(f"Malformed Witt vector {payload!r}") from e
        return cls.make(p, components, prec)

    def to_json(self):
        return {"p": self.p, "components": [c.to_json() for c in self.components], "prec": self.prec.to_json()}

    @property
    def length(self):
        return len(self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def truncate(self, prec):
        if isinstance(prec, int):
            prec = PExponent.integer(prec, self.p)
        prec = min(prec, self.prec)
        return WittVector(self.p, tuple(c.truncate(prec) for c in self.components), prec)

    def __add__(self, other):
        return witt_add(self, other)

    def __sub__(self, other):
        return witt_sub(self, other)

    def __neg__(self):
        return witt_neg(self)

    def __mul__(self, other):
        return witt_mul(self, other)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


def _check_pair(a, b):
    if a.p != b.p or a.length != b.length:
        raise AmbientMismatchError(
            f"Witt vectors of (p={a.p}, n={a.length}) and (p={b.p}, n={b.length}) do not mix")
    if a.prec != b.prec:
        raise PrecisionMismatchError(f"Witt vectors known modulo t^({a.prec}) and t^({b.prec})")


def _apply(role, a, b):
    cache = build_witt_polys(a.p, a.length)
    values = list(a.components) + list(b.components)
    polys = cache.role(role)
    return WittVector(a.p, tuple(evaluate_charp(polys[k], values, a.prec) for k in range(a.length)), a.prec)


def witt_add(a, b):
    _check_pair(a, b)
    if b.is_zero():
        return a
    if a.is_zero():
        return b
    return _apply("sum", a, b)


def witt_mul(a, b):
    _check_pair(a, b)
    if a.is_zero() or b.is_zero():
        return WittVector.zero(a.p, a.length, a.prec)
    return _apply("prod", a, b)


def int_to_witt(k, p, length, prec):
    """Witt vector of the integer k: components solved from ghost components (k, k, ..., k)."""
    lifted = []
    for m in range(length):
        rest = k - sum(p ** i * lifted[i] ** (p ** (m - i)) for i in range(m))
        lifted.append(rest // p ** m)
    return WittVector.make(p, [CharPSeries.constant(p, x % p, prec) for x in lifted], prec)


def witt_neg(a):
    # -1 = [-1] for odd p, so negation is componentwise there.
    if a.p == 2:
        return witt_mul(int_to_witt(-1, a.p, a.length, a.prec), a)
    return WittVector(a.p, tuple(cps_neg(c) for c in a.components), a.prec)


def witt_sub(a, b):
    return witt_add(a, witt_neg(b))


def teichmuller(a, length, prec=None):
    if not a.is_integral():
        raise NonIntegralError(f"Teichmuller lift needs an integral element, got valuation {a.valuation()}")
    prec = a.prec if prec is None else prec
    if isinstance(prec, int):
        prec = PExponent.integer(prec, a.p)
    zero = CharPSeries.zero(a.p, prec)
    return WittVector.make(a.p, [a.truncate(prec)] + [zero] * (length - 1), prec)


def verschiebung(a):
    zero = CharPSeries.zero(a.p, a.prec)
    return WittVector(a.p, (zero,) + a.components[:-1], a.prec)


def witt_frobenius(a):
    """Componentwise p-th power, which is the Witt Frobenius over a ring of characteristic p."""
    return WittVector(a.p, tuple(frobenius(c).truncate(a.prec) for c in a.components), a.prec)


def primitive_z(p, length, prec):
    """z = [t] - p, the primitive element of degree 1 cutting out the untilt."""
    t = CharPSeries.t(p, prec)
    return witt_sub(teichmuller(t, length, prec), int_to_witt(p, p, length, prec))


def ghost_oracle(components, p):
    """Ghost components w_k = sum_{i<=k} p^i x_i^(p^(k-i)) of an integer (torsion-free) lift."""
    return [sum(p ** i * components[i] ** (p ** (k - i)) for i in range(k + 1)) for k in range(len(components))]
