import logging
import random

from charp import CharPSeries
from gauss import GaussElement
from untilt import from_digits
from values import PExponent

logger = logging.getLogger('perfectoid.helpers.samples')
logger.setLevel(logging.DEBUG)


class Samples:
    """Seeded generators for property checks; the same seed always yields the same elements."""

    def __init__(self, seed, p):
        self.rng = random.Random(seed)
        self.p = p

    def exponent(self, upper=2, depth=2):
        k = self.rng.randint(0, depth)
        return PExponent.of(self.rng.randint(0, upper * self.p ** k - 1), k, self.p)

    def series(self, prec, terms=3, upper=2, depth=2, unit=False):
        """Integral series modulo t^prec with exponents below upper."""
        pairs = [(self.exponent(upper, depth), self.rng.randint(1, self.p - 1)) for _ in range(terms)]
        if unit:
            pairs.append((PExponent.zero(self.p), 1))
        series = CharPSeries.make(self.p, pairs, prec)
        return series if not series.is_zero() else CharPSeries.one(self.p, prec)

    def digits(self, n, N, depth=2):
        return [self.series(N, terms=2, upper=1, depth=depth) for _ in range(n)]

    def untilt(self, n, N):
        return from_digits(self.digits(n, N), n, N)

    def gauss(self, field, coefficient, d=1, terms=3, upper=2, depth=1):
        pairs = [(tuple(self.exponent(upper, depth) for _ in range(d)), coefficient()) for _ in range(terms)]
        return GaussElement.make(field, d, pairs)

    def choice(self, items):
        return self.rng.choice(items)


