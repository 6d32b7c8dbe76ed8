import logging
from dataclasses import dataclass
from typing import Any, Tuple

from charp import CharPSeries
from gauss import CharPField, GaussElement, GaussRadius, gauss_eval
from untilt import UntiltElement, sharp, untilt_norm, untilt_sub
from utils.errors import DescriptorMismatchError
from values import NormValue, format_norm, norm_max

from .seminorms import gauss_sharp, tilted_value

logger = logging.getLogger('perfectoid.tilt.approximation')
logger.setLevel(logging.DEBUG)


def radius_grid(p, d=1, depth=2, side="untilt"):
    return [GaussRadius.uniform(NormValue.of(k, p), d, side) for k in range(depth + 1)]


def dominant_monomial(c):
    """A tilt monomial d with |d^#| = |c|: leading term of the digit maximizing p^-i |a_i|, smallest i first."""
    best = None
    for i, digit in enumerate(c.digits):
        if digit.is_zero():
            continue
        size = digit.valuation() + i
        if best is None or size < best[0]:
            best = (size, i, digit)
    if best is None:
        return None
    _, i, digit = best
    exp, coeff = digit.leading_term()
    return exp + (i - c.shift), coeff


def approx_construct(f, eps, prec=None):
    """g over the tilt field with phi_r(f) = phi_r(g^#) or both < eps, for every radius r <= 1."""
    field = CharPField(f.p, prec or f.field.N + f.field.n)
    pairs = []
    for exps, c in f.terms:
        size = untilt_norm(c)
        if size < eps:
            continue
        exp, coeff = dominant_monomial(c)
        pairs.append((exps, CharPSeries.monomial(f.p, exp, field.prec, coeff)))
    dropped = len(f.terms) - len(pairs)
    if dropped:
        logger.debug(f"Dropped {dropped} terms of norm below {format_norm(eps)}.")
    return GaussElement.make(field, f.d, pairs)


@dataclass(frozen=True)
class DisjunctionRow:
    descriptor: str
    original: Any
    approximation: Any

    def holds(self, eps):
        return self.original.exact() == self.approximation.exact() or (self.original < eps and self.approximation < eps)


@dataclass(frozen=True)
class DisjunctionReport:
    eps: NormValue
    rows: Tuple[DisjunctionRow, ...]

    @property
    def holds(self):
        return all(row.holds(self.eps) for row in self.rows)

    def to_json(self):
        return {
            "eps": format_norm(self.eps),
            "holds": self.holds,
            "rows": [{"descriptor": row.descriptor, "phi(f)": format_norm(row.original),
                      "phi(g#)": format_norm(row.approximation), "holds": row.holds(self.eps)}
                     for row in self.rows],
        }


def check_disjunction(f, g, eps, phis=None):
    phis = phis or radius_grid(f.p, f.d)
    rows = tuple(DisjunctionRow(phi.label(), gauss_eval(phi, f), tilted_value(phi, g)) for phi in phis)
    return DisjunctionReport(eps, rows)


@dataclass(frozen=True)
class InequalityRow:
    descriptor: str
    difference: Any
    bound: Any

    @property
    def passes(self):
        return self.difference <= self.bound

    def to_json(self):
        return {"descriptor": self.descriptor, "phi(f-g#)": format_norm(self.difference),
                "bound": format_norm(self.bound), "passes": self.passes}


@dataclass(frozen=True)
class InequalityReport:
    eps: NormValue
    rows: Tuple[InequalityRow, ...]

    @property
    def passes(self):
        return all(row.passes for row in self.rows)

    def to_json(self):
        return {"eps": format_norm(self.eps), "passes": self.passes, "rows": [row.to_json() for row in self.rows]}


def _inequality_bound(value, eps):
    return norm_max(value, eps).scale_p(-1)


def approx_verify(f, g, eps, phis=None):
    """phi(f - g^#) <= p^-1 max(phi(g^#), eps) for each phi; g is given, never constructed."""
    if isinstance(f, UntiltElement):
        if not isinstance(g, CharPSeries):
            raise DescriptorMismatchError("An untilt element is compared with a tilt series")
        g_sharp = sharp(g, f.n, f.N)
        difference = untilt_norm(untilt_sub(f, g_sharp))
        rows = (InequalityRow("abs", difference, _inequality_bound(untilt_norm(g_sharp), eps)),)
        return InequalityReport(eps, rows)
    if isinstance(g, CharPSeries):
        g = GaussElement.constant(CharPField(g.p, g.prec), f.d, g)
    g_sharp = gauss_sharp(g, f.field)
    rows = []
    for phi in phis or radius_grid(f.p, f.d):
        difference = gauss_eval(phi, f - g_sharp)
        rows.append(InequalityRow(phi.label(), difference, _inequality_bound(gauss_eval(phi, g_sharp), eps)))
    return InequalityReport(eps, tuple(rows))

