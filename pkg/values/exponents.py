import logging
from dataclasses import dataclass
from fractions import Fraction

from utils.errors import AmbientMismatchError, ArithmeticOverflowError, InputFormatError, NormalizationError
from utils.settings import get_settings

logger = logging.getLogger('perfectoid.values.exponents')
logger.setLevel(logging.DEBUG)


def _check_capacity(numerator):
    cap = get_settings().max_numerator_bits
    if numerator.bit_length() > cap:
        raise ArithmeticOverflowError(
            f"Exponent numerator needs {numerator.bit_length()} bits (cap {cap})")


@dataclass(frozen=True)
class PExponent:
    """An element numerator / p^denom_pow of Z[1/p], kept normalized."""

    numerator: int
    denom_pow: int
    p: int

    @classmethod
    def of(cls, numerator, denom_pow=0, p=2):
        if denom_pow < 0:
            numerator *= p ** (-denom_pow)
            denom_pow = 0
        while denom_pow > 0 and numerator % p == 0:
            numerator //= p
            denom_pow -= 1
        if numerator == 0:
            denom_pow = 0
        _check_capacity(numerator)
        return cls(numerator, denom_pow, p)

    @classmethod
    def zero(cls, p):
        return cls(0, 0, p)

    @classmethod
    def integer(cls, value, p):
        return cls.of(value, 0, p)

    @classmethod
    def from_fraction(cls, value, p):
        value = Fraction(value)
        denominator = value.denominator
        denom_pow = 0
        while denominator % p == 0:
            denominator //= p
            denom_pow += 1
        if denominator != 1:
            raise NormalizationError(f"{value} is not in Z[1/{p}]", value=str(value), p=p)
        return cls.of(value.numerator, denom_pow, p)

    @classmethod
    def parse(cls, text, p):
        try:
            return cls.from_fraction(Fraction(str(text).strip()), p)
        except (ValueError, ZeroDivisionError) as e:
            raise InputFormatError(f"Cannot read exponent {text!r}") from e

    @classmethod
    def from_json(cls, payload, p):
        if isinstance(payload, (str, int)):
            return cls.parse(payload, p)
        try:
            return cls.of(int(payload["num"]), int(payload["kpow"]), p)
        except (KeyError, TypeError, ValueError) as e:
            raise InputFormatError(f"Malformed exponent {payload!r}") from e

    def to_json(self):
        return {"num": self.numerator, "kpow": self.denom_pow}

    @property
    def fraction(self):
        return Fraction(self.numerator, self.p ** self.denom_pow)

    def is_zero(self):
        return self.numerator == 0

    def is_integer(self):
        return self.denom_pow == 0

    def _common(self, other):
        if isinstance(other, int):
            other = PExponent.integer(other, self.p)
        if other.p != self.p:
            raise AmbientMismatchError(f"Exponents over p={self.p} and p={other.p} do not mix")
        k = max(self.denom_pow, other.denom_pow)
        return (self.numerator * self.p ** (k - self.denom_pow),
                other.numerator * self.p ** (k - other.denom_pow), k)

    def __add__(self, other):
        a, b, k = self._common(other)
        return PExponent.of(a + b, k, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        a, b, k = self._common(other)
        return PExponent.of(a - b, k, self.p)

    def __rsub__(self, other):
        return PExponent.integer(other, self.p) - self

    def __neg__(self):
        return PExponent(-self.numerator, self.denom_pow, self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return PExponent.of(self.numerator * other, self.denom_pow, self.p)
        if other.p != self.p:
            raise AmbientMismatchError(f"Exponents over p={self.p} and p={other.p} do not mix")
        return PExponent.of(self.numerator * other.numerator, self.denom_pow + other.denom_pow, self.p)

    __rmul__ = __mul__

    def div_p(self, times=1):
        return PExponent.of(self.numerator, self.denom_pow + times, self.p)

    def mul_p(self, times=1):
        return PExponent.of(self.numerator, self.denom_pow - times, self.p)

    def __eq__(self, other):
        if isinstance(other, int):
            return self.denom_pow == 0 and self.numerator == other
        if not isinstance(other, PExponent):
            return NotImplemented
        return (self.numerator, self.denom_pow, self.p) == (other.numerator, other.denom_pow, other.p)

    def __hash__(self):
        return hash(self.fraction)

    def __lt__(self, other):
        a, b, _ = self._common(other)
        return a < b

    def __le__(self, other):
        a, b, _ = self._common(other)
        return a <= b

    def __gt__(self, other):
        a, b, _ = self._common(other)
        return a > b

    def __ge__(self, other):
        a, b, _ = self._common(other)
        return a >= b

    def floor(self):
        return self.numerator // self.p ** self.denom_pow

    def ceil(self):
        return -((-self.numerator) // self.p ** self.denom_pow)

    def __str__(self):
        if self.denom_pow == 0:
            return str(self.numerator)
        return f"{self.numerator}/{self.p ** self.denom_pow}"

    def __repr__(self):
        return f"PExponent({self}, p={self.p})"


def exp_add(a, b):
    return a + b


def exp_sub(a, b):
    return a - b


def exp_mul(a, b):
    return a * b
