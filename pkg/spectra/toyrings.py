import logging
from dataclasses import dataclass
from typing import Tuple

from charp import CharPSeries
from gauss import CoefficientRing, GaussElement, GaussRing, NormedRing, PolyGaussCRing
from tilt import MonomialIdeal, is_spectrally_reduced, primality_witness
from utils.errors import AmbientMismatchError, InputFormatError, UnsupportedPresentationError
from values import NormValue, PExponent, norm_max

logger = logging.getLogger('perfectoid.spectra.toyrings')
logger.setLevel(logging.DEBUG)


@dataclass(frozen=True)
class ProductElement:
    components: Tuple[GaussElement, ...]

    @property
    def inexact(self):
        return any(c.inexact for c in self.components)

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    def to_json(self):
        return {"components": [c.to_json() for c in self.components]}

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


class ProductOfFields(NormedRing):
    """K^k with the sup norm of the coordinate absolute values."""

    name = "product-of-fields"
    multiplicative = False
    family = "product-coordinates"

    def __init__(self, field, k=2):
        super().__init__(field)
        self.k = k
        self.scalars = CoefficientRing(field)
        self.is_domain = k == 1

    def _wrap(self, components):
        return ProductElement(tuple(components))

    def element(self, values):
        if len(values) != self.k:
            raise AmbientMismatchError(f"{self.describe()} takes {self.k} coordinates, got {len(values)}")
        return self._wrap(self.scalars.constant(v) for v in values)

    def zero(self):
        return self.element([0] * self.k)

    def one(self):
        return self.element([1] * self.k)

    def idempotent(self, i):
        return self.element([1 if j == i else 0 for j in range(self.k)])

    def add(self, x, y):
        return self._wrap(self.scalars.add(a, b) for a, b in zip(x.components, y.components))

    def neg(self, x):
        return self._wrap(self.scalars.neg(a) for a in x.components)

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def mul(self, x, y):
        return self._wrap(self.scalars.mul(a, b) for a, b in zip(x.components, y.components))

    def norm(self, x):
        value = NormValue.zero(self.p)
        for c in x.components:
            value = norm_max(value, self.scalars.norm(c))
        return value

    def support_size(self, x):
        return sum(1 for c in x.components if not c.is_zero())

    def zero_coordinate_witness(self, x):
        """e_i with x e_i = 0, when some coordinate of x vanishes exactly."""
        for i, c in enumerate(x.components):
            if c.is_zero() and not c.inexact:
                return self.idempotent(i)
        return None

    def small_elements(self, depth):
        pi = self.scalars.constant(self.field.uniformizer())
        elements = []
        for i in range(self.k):
            e = self.idempotent(i)
            scaled = e
            for _ in range(depth):
                scaled = self.mul(scaled, self._wrap([pi] * self.k))
                elements.append(scaled)
        return elements

    def element_from_json(self, payload):
        try:
            values = payload["components"] if isinstance(payload, dict) else payload
            return self.element([v if isinstance(v, int) else self.field.element_from_json(v) for v in values])
        except (KeyError, TypeError) as e:
            raise InputFormatError(f"Malformed product element {payload!r}") from e

    def describe(self):
        return f"({self.field.describe()})^{self.k}"

    def to_json(self):
        return {"ring": self.name, "k": self.k, "field": self.field.describe()}


class QuotientByMonomial(NormedRing):
    """A Gauss algebra modulo a monomial ideal, elements kept as their terms outside the ideal."""

    name = "quotient-by-monomial"
    family = "quotient-filtered"

    def __init__(self, base, ideal):
        if not isinstance(base, GaussRing):
            raise UnsupportedPresentationError("Only Gauss algebras are divided by monomial ideals")
        if ideal.d != base.d:
            raise AmbientMismatchError(f"Ideal in {ideal.d} variables, ring in {base.d}")
        super().__init__(base.field)
        self.base = base
        self.ideal = ideal
        self.d = base.d
        reduced = is_spectrally_reduced(ideal, base.p)
        self.power_multiplicative = reduced
        self.multiplicative = reduced and primality_witness(ideal, base.p).prime
        self.is_domain = primality_witness(ideal, base.p).prime

    def reduce(self, a):
        kept = tuple((exps, c) for exps, c in a.terms if not self.ideal.contains_term(exps))
        return GaussElement(a.field, a.d, kept, a.inexact)

    def zero(self):
        return self.base.zero()

    def one(self):
        return self.reduce(self.base.one())

    def add(self, a, b):
        return self.reduce(self.base.add(a, b))

    def neg(self, a):
        return self.base.neg(a)

    def sub(self, a, b):
        return self.reduce(self.base.sub(a, b))

    def mul(self, a, b):
        return self.reduce(self.base.mul(a, b))

    def norm(self, a):
        return self.base.norm(self.reduce(a))

    def support_size(self, a):
        return self.reduce(a).support_size()

    def evaluate(self, phi, a):
        return self.base.evaluate(phi, self.reduce(a))

    def element_from_json(self, payload):
        return self.reduce(self.base.element_from_json(payload))

    def constant(self, c):
        return self.reduce(self.base.constant(c))

    def variable(self, i=0, exp=1):
        return self.reduce(self.base.variable(i, exp))

    def describe(self):
        return f"{self.base.describe()} / {self.ideal}"

    def to_json(self):
        return {"ring": self.name, "base": self.base.to_json(), "ideal": self.ideal.to_json()}


def _side_of(field):
    return "tilt" if field.side == "charp" else "untilt"


def quotient_by(base, ideal=None):
    """Quotient presentation; defaults to the augmentation ideal in every variable."""
    ideal = ideal or MonomialIdeal.augmentation(_side_of(base.field), base.d, range(base.d))
    return QuotientByMonomial(base, ideal)


def probe_elements(ring):
    """The fixed test family used for boundaries and boundedness checks."""
    field = ring.field
    pi = field.uniformizer()
    if isinstance(ring, ProductOfFields):
        elements = [ring.idempotent(i) for i in range(ring.k)] + [ring.one()]
        if ring.k > 1:
            elements.append(ring.element([pi] + [1] * (ring.k - 1)))
        return elements
    if isinstance(ring, PolyGaussCRing):
        prec = field.prec if field.side == "charp" else field.N
        on_circle = field.point_power(CharPSeries.monomial(ring.p, ring.c.exp, prec), PExponent.integer(1, ring.p))
        return [ring.polynomial(coefficients)
                for coefficients in ([1], [0, 1], [field.neg(on_circle), 1], [0, 0, 1], [1, 1])]
    if isinstance(ring, (GaussRing, QuotientByMonomial)):
        elements = [ring.constant(1), ring.constant(pi)]
        for i in range(ring.d):
            x = ring.variable(i)
            root = ring.variable(i, f"1/{ring.p}")
            elements += [x, root, ring.sub(ring.constant(1), x), ring.add(ring.constant(pi), root)]
        return [e for e in elements if not ring.is_zero(e)]
    raise UnsupportedPresentationError(f"No test family for {ring.describe()}")
