import logging
from dataclasses import dataclass
from typing import Any

from utils.errors import AmbientMismatchError, InputFormatError, UnsupportedPresentationError
from values import NormValue, PExponent, format_norm, norm_max

from .element import GaussElement, gauss_add, gauss_mul, gauss_neg, gauss_pow, gauss_sub
from .seminorms import GaussRadius, evaluate, gauss_eval, validate_descriptor

logger = logging.getLogger('perfectoid.gauss.rings')
logger.setLevel(logging.DEBUG)


class NormedRing:
    """Handle exposing exact arithmetic and a norm, shared by every ring the engines accept."""

    name = "normed-ring"
    power_multiplicative = True
    multiplicative = True
    complete = True
    is_domain = True

    def __init__(self, field):
        self.field = field

    @property
    def p(self):
        return self.field.p

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def power(self, a, m):
        result = self.one()
        for _ in range(m):
            result = self.mul(result, a)
        return result

    def norm(self, a):
        raise NotImplementedError

    def is_zero(self, a):
        return a.is_zero()

    def support_size(self, a):
        return 0 if self.is_zero(a) else 1

    def element_from_json(self, payload):
        raise NotImplementedError

    def evaluate(self, phi, a):
        return evaluate(phi, a)

    def describe(self):
        return f"{self.name} over {self.field.describe()}"

    def to_json(self):
        return {"ring": self.name, "field": self.field.describe()}


class _GaussElementRing(NormedRing):
    d = 1

    def zero(self):
        return GaussElement.zero(self.field, self.d)

    def one(self):
        return GaussElement.one(self.field, self.d)

    def add(self, a, b):
        return gauss_add(a, b)

    def neg(self, a):
        return gauss_neg(a)

    def sub(self, a, b):
        return gauss_sub(a, b)

    def mul(self, a, b):
        return gauss_mul(a, b)

    def power(self, a, m):
        return gauss_pow(a, m)

    def support_size(self, a):
        return a.support_size()

    def element_from_json(self, payload):
        element = GaussElement.from_json(payload, self.field)
        if element.d != self.d:
            raise AmbientMismatchError(f"{self.describe()} has {self.d} variables, element has {element.d}")
        return element

    def constant(self, c):
        return GaussElement.constant(self.field, self.d, c)

    def variable(self, i=0, exp=1):
        return GaussElement.variable(self.field, self.d, i, exp)


class GaussRing(_GaussElementRing):
    """K<X_1^(1/p^oo), ..., X_d^(1/p^oo)> with the Gauss norm."""

    name = "gauss"

    def __init__(self, field, d=1):
        super().__init__(field)
        self.d = d

    def norm(self, a):
        return gauss_eval(GaussRadius.unit(self.p, self.d), a)

    def describe(self):
        variables = ", ".join(f"X{i + 1}^(1/{self.p}^oo)" for i in range(self.d))
        return f"{self.field.describe()}<{variables}>"

    def to_json(self):
        return {"ring": self.name, "d": self.d, "field": self.field.describe()}


class PolyGaussCRing(_GaussElementRing):
    """K[T] with ||sum a_i T^i|| = max |a_i| c^i for a fixed c < 1; not complete, not Zariskian."""

    name = "poly-gauss-c"
    complete = False

    def __init__(self, field, c):
        super().__init__(field)
        if c.is_zero or not c < NormValue.one(field.p):
            raise UnsupportedPresentationError(f"c-norm needs 0 < c < 1, got {format_norm(c)}")
        self.c = c

    def norm(self, a):
        return gauss_eval(GaussRadius((self.c,)), a)

    def polynomial(self, coefficients):
        """sum_i coefficients[i] T^i."""
        pairs = []
        for i, c in enumerate(coefficients):
            if isinstance(c, int):
                c = self.field.from_int(c)
            pairs.append(((PExponent.integer(i, self.p),), c))
        return GaussElement.make(self.field, 1, pairs)

    def element_from_json(self, payload):
        element = super().element_from_json(payload)
        if any(not exps[0].is_integer() for exps, _ in element.terms):
            raise AmbientMismatchError("Polynomial ring elements take integer exponents only")
        return element

    def evaluate(self, phi, a):
        validate_descriptor(phi, self.c)
        return super().evaluate(phi, a)

    def describe(self):
        return f"{self.field.describe()}[T], ||T|| = {format_norm(self.c)}"

    def to_json(self):
        return {"ring": self.name, "c": self.c.to_json(), "field": self.field.describe()}


class CoefficientRing(_GaussElementRing):
    """The coefficient field itself, as constants of a Gauss algebra in no variables."""

    name = "coefficient-field"
    d = 0

    def norm(self, a):
        return gauss_eval(GaussRadius(()), a)

    def describe(self):
        return self.field.describe()


@dataclass(frozen=True)
class DualElement:
    """a + b eps with eps^2 = 0."""

    a: Any
    b: Any

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def to_json(self):
        return {"a": self.a.to_json(), "b": self.b.to_json()}


class DualNumbers(NormedRing):
    """K[eps]/(eps^2) with ||a + b eps|| = max(|a|, p |b|): a norm that is not power-multiplicative."""

    name = "dual-numbers"
    power_multiplicative = False
    multiplicative = False
    is_domain = False

    def __init__(self, field):
        super().__init__(field)
        self.scalars = CoefficientRing(field)

    def zero(self):
        return DualElement(self.scalars.zero(), self.scalars.zero())

    def one(self):
        return DualElement(self.scalars.one(), self.scalars.zero())

    def epsilon(self):
        return DualElement(self.scalars.zero(), self.scalars.one())

    def element(self, a, b):
        return DualElement(self.scalars.constant(a), self.scalars.constant(b))

    def add(self, x, y):
        return DualElement(gauss_add(x.a, y.a), gauss_add(x.b, y.b))

    def neg(self, x):
        return DualElement(gauss_neg(x.a), gauss_neg(x.b))

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        return DualElement(gauss_mul(x.a, y.a), gauss_add(gauss_mul(x.a, y.b), gauss_mul(x.b, y.a)))

    def norm(self, x):
        return norm_max(self.scalars.norm(x.a), self.scalars.norm(x.b).scale_p(1))

    def support_size(self, x):
        return int(not x.a.is_zero()) + int(not x.b.is_zero())

    def element_from_json(self, payload):
        try:
            return DualElement(self.scalars.element_from_json(payload["a"]),
                               self.scalars.element_from_json(payload["b"]))
        except (KeyError, TypeError) as e:
            raise InputFormatError(f"Malformed dual number {payload!r}") from e

    def describe(self):
        return f"{self.field.describe()}[eps]/(eps^2)"


def ring_from_name(name, field, d=1, c=None):
    if name == GaussRing.name:
        return GaussRing(field, d)
    if name == PolyGaussCRing.name:
        return PolyGaussCRing(field, c or NormValue.of(1, field.p))
    if name == CoefficientRing.name:
        return CoefficientRing(field)
    if name == DualNumbers.name:
        return DualNumbers(field)
    raise UnsupportedPresentationError(f"Unknown ring {name!r}")
