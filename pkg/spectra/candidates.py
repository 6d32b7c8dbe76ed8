import logging
from dataclasses import dataclass
from typing import Optional

from charp import CharPSeries, cps_norm
from gauss import EvalPoint, GaussRadius, GaussRing, PolyGaussCRing, ProductCoordinate, point_value
from tilt import MonomialIdeal, descriptor_kernel
from utils.errors import InputFormatError, UnsupportedPresentationError
from values import NormValue, PExponent

from .toyrings import ProductOfFields, QuotientByMonomial

logger = logging.getLogger('perfectoid.spectra.candidates')
logger.setLevel(logging.DEBUG)


@dataclass(frozen=True)
class CandidatePrime:
    """A prime ideal given symbolically: a coordinate kernel, (T - lambda), a monomial ideal, or (0)."""

    kind: str
    index: Optional[int] = None
    point: Optional[CharPSeries] = None
    ideal: Optional[MonomialIdeal] = None
    var: str = "T"

    @classmethod
    def coordinate(cls, i):
        return cls("coordinate", index=i)

    @classmethod
    def linear(cls, point, var="T"):
        return cls("linear", point=point, var=var)

    @classmethod
    def monomial(cls, ideal):
        return cls("monomial", ideal=ideal)

    @classmethod
    def zero(cls):
        return cls("zero")

    @classmethod
    def from_json(cls, payload, p, prec):
        try:
            kind = payload["kind"]
            if kind == "coordinate":
                return cls.coordinate(int(payload["index"]))
            if kind == "linear":
                return cls.linear(point_from_text(payload["lambda"], p, prec), payload.get("var", "T"))
            if kind == "monomial":
                return cls.monomial(MonomialIdeal.from_json(payload["ideal"], p, payload.get("side", "untilt")))
            if kind == "zero":
                return cls.zero()
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputFormatError(f"Malformed candidate prime {payload!r}") from e
        raise InputFormatError(f"Unknown candidate prime kind {payload.get('kind')!r}")

    def label(self):
        if self.kind == "coordinate":
            return f"ker(coord[{self.index + 1}])"
        if self.kind == "linear":
            return f"({self.var} - {point_text(self.point)})"
        if self.kind == "monomial":
            return str(self.ideal)
        return "(0)"

    def to_json(self):
        payload = {"kind": self.kind, "label": self.label()}
        if self.index is not None:
            payload["index"] = self.index
        if self.point is not None:
            payload["lambda"] = point_text(self.point)
            payload["var"] = self.var
        if self.ideal is not None:
            payload["ideal"] = self.ideal.to_json()
        return payload

    def contains(self, ring, f):
        """Membership decided from the presentation."""
        if self.kind == "coordinate":
            component = f.components[self.index]
            return component.is_zero() and not component.inexact
        if self.kind == "linear":
            value = point_value(EvalPoint((self.point,)), f)
            return value is None or ring.field.is_zero(value)
        if self.kind == "monomial":
            element = ring.reduce(f) if isinstance(ring, QuotientByMonomial) else f
            return self.ideal.contains(element)
        return ring.is_zero(f)

    def includes(self, other):
        if other.kind == "zero" or (other.kind == "monomial" and other.ideal.is_zero):
            return True
        if self.kind != other.kind:
            return False
        if self.kind == "coordinate":
            return self.index == other.index
        if self.kind == "linear":
            return self.point.agrees_with(other.point)
        return self.ideal.includes(other.ideal)


def point_from_text(text, p, prec):
    """'0', '1', 'p' or 't', or a tilt exponent 't^a', as a tilt coordinate."""
    text = str(text).strip()
    if text == "0":
        return CharPSeries.zero(p, prec)
    if text in ("p", "t"):
        return CharPSeries.t(p, prec)
    if text.startswith("t^"):
        return CharPSeries.monomial(p, PExponent.parse(text[2:].strip("()"), p), prec)
    return CharPSeries.constant(p, int(text), prec)


def point_text(x):
    if x.is_zero():
        return "0"
    exp, coeff = x.leading_term()
    if exp.is_zero():
        return str(coeff)
    mono = "p" if exp == 1 else f"p^({exp})"
    return mono if coeff == 1 else f"{coeff}*{mono}"


def point_norm(x):
    return NormValue.zero(x.p) if x.is_zero() else cps_norm(x)


def vanishes(value):
    """phi(f) = 0, or indistinguishable from 0 at the working precision."""
    return value.is_zero or getattr(value, "below_precision", False)


def kernel_descriptor(ring, candidate):
    """A declared-family seminorm whose kernel is the candidate, when the presentation supplies one."""
    if candidate.kind == "coordinate" and isinstance(ring, ProductOfFields):
        return ProductCoordinate(candidate.index)
    if candidate.kind == "linear" and isinstance(ring, PolyGaussCRing):
        return EvalPoint((candidate.point,))
    if candidate.kind == "linear" and isinstance(ring, GaussRing) and ring.d == 1:
        if point_norm(candidate.point) > NormValue.one(ring.p):
            return None
        return EvalPoint((candidate.point,))
    if candidate.kind == "zero" and getattr(ring, "multiplicative", False):
        if isinstance(ring, PolyGaussCRing):
            return GaussRadius((ring.c,))
        return GaussRadius.unit(ring.p, ring.d)
    if candidate.kind == "monomial":
        ideal = candidate.ideal
        radii = tuple(NormValue.zero(ring.p) if ideal.bound(i) is not None else NormValue.one(ring.p)
                      for i in range(ideal.d))
        phi = GaussRadius(radii)
        if descriptor_kernel(phi, ideal.d, ideal.side) == ideal:
            return phi
        return None
    if candidate.kind in ("coordinate", "linear"):
        raise UnsupportedPresentationError(f"{candidate.label()} does not belong to {ring.describe()}")
    return None


def _working_prec(ring):
    return ring.field.prec if ring.field.side == "charp" else ring.field.N


def default_candidates(ring):
    if isinstance(ring, ProductOfFields):
        return [CandidatePrime.coordinate(i) for i in range(ring.k)]
    if isinstance(ring, PolyGaussCRing):
        prec = _working_prec(ring)
        return [CandidatePrime.zero()] + [CandidatePrime.linear(point_from_text(text, ring.p, prec))
                                          for text in ("0", "p", "1")]
    if isinstance(ring, QuotientByMonomial):
        return [CandidatePrime.monomial(ring.ideal)]
    side = "tilt" if ring.field.side == "charp" else "untilt"
    candidates = [CandidatePrime.monomial(MonomialIdeal.zero(side, ring.d)),
                  CandidatePrime.monomial(MonomialIdeal.augmentation(side, ring.d, range(ring.d)))]
    if ring.d == 1:
        candidates.append(CandidatePrime.linear(CharPSeries.one(ring.p, _working_prec(ring)), "X"))
    return candidates
