import logging
from dataclasses import dataclass

from charp import CharPSeries, cps_norm, cps_pow, pth_root
from untilt import (UntiltElement, sharp, untilt_add, untilt_from_int, untilt_mul, untilt_neg, untilt_norm,
                    untilt_one, untilt_pow, untilt_zero)
from utils.errors import AmbientMismatchError
from values import NormValue, PExponent

logger = logging.getLogger('perfectoid.gauss.fields')
logger.setLevel(logging.DEBUG)


def root_power(c, e):
    """c^e for a tilt element c and e >= 0 in Z[1/p]: (c^(1/p^k))^a."""
    for _ in range(e.denom_pow):
        c = pth_root(c)
    return cps_pow(c, e.numerator)


@dataclass(frozen=True)
class CharPField:
    """K^flat = F_p((t^(1/p^oo))) with coefficients known modulo t^prec."""

    p: int
    prec: PExponent

    side = "charp"

    @classmethod
    def of(cls, p, prec):
        return cls(p, PExponent.integer(prec, p) if isinstance(prec, int) else prec)

    def zero(self):
        return CharPSeries.zero(self.p, self.prec)

    def one(self):
        return CharPSeries.one(self.p, self.prec)

    def from_int(self, c):
        return CharPSeries.constant(self.p, c, self.prec)

    def uniformizer(self):
        return CharPSeries.t(self.p, self.prec)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def power(self, a, m):
        return cps_pow(a, m)

    def norm(self, a):
        return cps_norm(a, allow_below_precision=True)

    def is_zero(self, a):
        return a.is_zero()

    def owns(self, a):
        return isinstance(a, CharPSeries) and a.p == self.p

    def point_power(self, c, e):
        return root_power(c, e).truncate(self.prec)

    def element_from_json(self, payload):
        return CharPSeries.from_json(payload, self.p)

    def precision_bound(self):
        return NormValue.bound(self.prec)

    def describe(self):
        return f"F_{self.p}((t^(1/{self.p}^oo))) mod t^({self.prec})"


@dataclass(frozen=True)
class UntiltField:
    """The characteristic 0 untilt of K^flat: W_n(O_F / t^N) / ([t] - p), with Laurent elements."""

    p: int
    n: int
    N: PExponent

    side = "untilt"

    @classmethod
    def of(cls, p, n, N):
        return cls(p, n, PExponent.integer(N, p) if isinstance(N, int) else N)

    def zero(self):
        return untilt_zero(self.p, self.n, self.N)

    def one(self):
        return untilt_one(self.p, self.n, self.N)

    def from_int(self, c):
        return untilt_from_int(c, self.p, self.n, self.N)

    def uniformizer(self):
        return self.from_int(self.p)

    def sharp(self, c):
        return sharp(c, self.n, self.N)

    def add(self, a, b):
        return untilt_add(a, b)

    def neg(self, a):
        return untilt_neg(a)

    def sub(self, a, b):
        return untilt_add(a, untilt_neg(b))

    def mul(self, a, b):
        return untilt_mul(a, b)

    def power(self, a, m):
        return untilt_pow(a, m)

    def norm(self, a):
        return untilt_norm(a)

    def is_zero(self, a):
        return a.is_zero()

    def owns(self, a):
        return isinstance(a, UntiltElement) and (a.p, a.n, a.N) == (self.p, self.n, self.N)

    def point_power(self, c, e):
        """Value of X^e at the point whose coordinates are the sharps of the tilt coordinate c."""
        return self.sharp(root_power(c, e))

    def element_from_json(self, payload):
        return UntiltElement.from_json(payload, self.p)

    def precision_bound(self):
        return NormValue.bound(PExponent.integer(self.n, self.p))

    def describe(self):
        return f"W_{self.n}(O_F/t^({self.N}))/([t]-{self.p})"


def check_same_field(a, b):
    if a != b:
        raise AmbientMismatchError(f"Coefficient fields {a.describe()} and {b.describe()} differ")
