import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from utils.errors import AmbientMismatchError, InputFormatError, NormalizationError

from .exponents import PExponent

logger = logging.getLogger('perfectoid.values.norms')
logger.setLevel(logging.DEBUG)


class _NormOrder:
    """Order shared by exact and inexact norm values: 0 < p^(-e) and p^(-a) < p^(-b) iff a > b."""

    def log_value(self):
        raise NotImplementedError

    def _key(self):
        e = self.log_value()
        return (0, Fraction(0)) if e is None else (1, -e)

    def _other_key(self, other):
        if not isinstance(other, _NormOrder):
            return NotImplemented
        if other.p != self.p:
            raise AmbientMismatchError(f"Norm values over p={self.p} and p={other.p} do not compare")
        return other._key()

    def __lt__(self, other):
        key = self._other_key(other)
        return NotImplemented if key is NotImplemented else self._key() < key

    def __le__(self, other):
        key = self._other_key(other)
        return NotImplemented if key is NotImplemented else self._key() <= key

    def __gt__(self, other):
        key = self._other_key(other)
        return NotImplemented if key is NotImplemented else self._key() > key

    def __ge__(self, other):
        key = self._other_key(other)
        return NotImplemented if key is NotImplemented else self._key() >= key

    def same_value(self, other):
        return self._key() == self._other_key(other)


@dataclass(frozen=True)
class NormValue(_NormOrder):
    """0 (exp is None) or p^(-exp). below_precision marks an upper bound only."""

    p: int
    exp: Optional[PExponent] = None
    below_precision: bool = False

    in_value_group = True

    @classmethod
    def zero(cls, p):
        return cls(p, None)

    @classmethod
    def one(cls, p):
        return cls(p, PExponent.zero(p))

    @classmethod
    def pow(cls, exp):
        return cls(exp.p, exp)

    @classmethod
    def of(cls, value, p):
        """Pow(value) for an int, Fraction or exponent string."""
        if isinstance(value, PExponent):
            return cls(p, value)
        return cls(p, PExponent.from_fraction(Fraction(value), p))

    @classmethod
    def bound(cls, exp):
        return cls(exp.p, exp, below_precision=True)

    @classmethod
    def from_json(cls, payload, p):
        if payload.get("zero"):
            return cls.zero(p)
        if "exp" not in payload:
            raise InputFormatError(f"Malformed norm value {payload!r}")
        return cls(p, PExponent.from_json(payload["exp"], p), bool(payload.get("below_precision", False)))

    def to_json(self):
        if self.exp is None:
            return {"zero": True}
        payload = {"exp": self.exp.to_json()}
        if self.below_precision:
            payload["below_precision"] = True
        return payload

    @property
    def is_zero(self):
        return self.exp is None

    def log_value(self):
        return None if self.exp is None else self.exp.fraction

    def exact(self):
        return NormValue(self.p, self.exp)

    def __mul__(self, other):
        return norm_mul(self, other)

    def scale_p(self, k):
        if self.exp is None:
            return self
        return NormValue(self.p, self.exp - k, self.below_precision)

    def __str__(self):
        return format_norm(self)


@dataclass(frozen=True)
class RationalNorm(_NormOrder):
    """p^(-exponent) with exponent outside Z[1/p]: exact, but not in the value group."""

    p: int
    exponent: Fraction

    in_value_group = False

    def log_value(self):
        return self.exponent

    @property
    def is_zero(self):
        return False

    def to_json(self):
        return {"rational": {"num": self.exponent.numerator, "den": self.exponent.denominator},
                "inexact": True}

    def __str__(self):
        return format_norm(self)


def _ambient(a, b):
    if a.p != b.p:
        raise AmbientMismatchError(f"Norm values over p={a.p} and p={b.p} do not mix")


def norm_mul(a, b):
    _ambient(a, b)
    if a.exp is None or b.exp is None:
        return NormValue.zero(a.p)
    return NormValue(a.p, a.exp + b.exp, a.below_precision or b.below_precision)


def norm_div(a, b):
    """a / b for b nonzero; a quotient of norms need not be at most 1."""
    _ambient(a, b)
    if b.exp is None:
        raise ZeroDivisionError("division by the zero norm")
    if a.exp is None:
        return a
    return NormValue(a.p, a.exp - b.exp, a.below_precision)


def norm_max(a, b):
    _ambient(a, b)
    return a if a >= b else b

def norm_nth_root(a, n):
    if n < 1:
        raise ValueError("n must be positive")
    if a.exp is None:
        return a
    root = a.exp.fraction / n
    try:
        return NormValue(a.p, PExponent.from_fraction(root, a.p), a.below_precision)
    except NormalizationError:
        logger.debug(f"Root {root} of exponent {a.exp} leaves Z[1/{a.p}].")
        return RationalNorm(a.p, root)


def norm_pow(a, e):
    if isinstance(e, int):
        e = PExponent.integer(e, a.p)
    if a.exp is None:
        return NormValue.one(a.p) if e.is_zero() else a
    return NormValue(a.p, a.exp * e, a.below_precision)


def _format_exponent(p, e):
    value = -e
    if value.denominator == 1:
        return f"{p}^({value.numerator})"
    return f"{p}^({value.numerator}/{value.denominator})"


def format_norm(value):
    if isinstance(value, RationalNorm):
        return f"{_format_exponent(value.p, value.exponent)} (inexact)"
    if value.exp is None:
        return "0"
    text = _format_exponent(value.p, value.exp.fraction)
    if value.below_precision:
        return f"<= {text} (below precision)"
    return text
