import logging
from dataclasses import dataclass
from typing import Any, Optional, Tuple

from charp import CharPSeries, cps_norm
from utils.errors import BoundednessViolationError, DescriptorMismatchError, InputFormatError
from values import NormValue, format_norm, norm_max, norm_mul, norm_pow

from .element import GaussElement

logger = logging.getLogger('perfectoid.gauss.seminorms')
logger.setLevel(logging.DEBUG)


@dataclass(frozen=True)
class GaussRadius:
    """phi_r(sum c_nu X^nu) = max |c_nu| r^nu."""

    radii: Tuple[NormValue, ...]
    side: Optional[str] = None

    family = "gauss-radius"

    @classmethod
    def unit(cls, p, d, side=None):
        return cls((NormValue.one(p),) * d, side)

    @classmethod
    def uniform(cls, r, d, side=None):
        return cls((r,) * d, side)

    def label(self):
        return "phi_r[" + ", ".join(format_norm(r) for r in self.radii) + "]"

    def to_json(self):
        return {"kind": self.family, "radii": [r.to_json() for r in self.radii], "side": self.side}


@dataclass(frozen=True)
class EvalPoint:
    """f -> |f(x)| with x_i the tilt coordinates (or their sharps on the untilt side)."""

    coords: Tuple[CharPSeries, ...]
    side: Optional[str] = None

    family = "eval-point"

    @classmethod
    def origin(cls, p, d, prec, side=None):
        return cls((CharPSeries.zero(p, prec),) * d, side)

    def label(self):
        return "eval[" + ", ".join("0" if c.is_zero() else str(c) for c in self.coords) + "]"

    def to_json(self):
        return {"kind": self.family, "coords": [c.to_json() for c in self.coords], "side": self.side}


@dataclass(frozen=True)
class ProductCoordinate:
    """(x_1, ..., x_k) -> |x_index| on a product of fields."""

    index: int

    family = "product-coordinate"

    def label(self):
        return f"coord[{self.index + 1}]"

    def to_json(self):
        return {"kind": self.family, "index": self.index}


@dataclass(frozen=True)
class CustomTable:
    """An explicit value table on a finite ring."""

    name: str
    table: Tuple[Tuple[Any, NormValue], ...]

    family = "custom-table"

    def label(self):
        return f"table:{self.name}"

    def to_json(self):
        return {"kind": self.family, "name": self.name,
                "table": [{"key": key, "norm": value.to_json()} for key, value in self.table]}


def descriptor_from_json(payload, p):
    try:
        kind = payload["kind"]
        side = payload.get("side")
        if kind == GaussRadius.family:
            return GaussRadius(tuple(NormValue.from_json(r, p) for r in payload["radii"]), side)
        if kind == EvalPoint.family:
            return EvalPoint(tuple(CharPSeries.from_json(c, p) for c in payload["coords"]), side)
        if kind == ProductCoordinate.family:
            return ProductCoordinate(int(payload["index"]))
        if kind == CustomTable.family:
            table = tuple((row["key"], NormValue.from_json(row["norm"], p)) for row in payload["table"])
            return CustomTable(str(payload["name"]), table)
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise InputFormatError(f"Malformed seminorm descriptor {payload!r}") from e
    raise InputFormatError(f"Unknown seminorm descriptor kind {payload.get('kind')!r}")


def validate_descriptor(phi, bound=None):
    """Reject radii and point coordinates above the bound (default 1)."""
    if isinstance(phi, GaussRadius):
        for r in phi.radii:
            limit = bound or NormValue.one(r.p)
            if r > limit:
                raise BoundednessViolationError(f"Radius {format_norm(r)} exceeds {format_norm(limit)}")
    elif isinstance(phi, EvalPoint):
        for c in phi.coords:
            if c.is_zero():
                continue
            limit = bound or NormValue.one(c.p)
            size = cps_norm(c)
            if size > limit:
                raise BoundednessViolationError(
                    f"Point coordinate of norm {format_norm(size)} exceeds {format_norm(limit)}")
    return phi


def _check_side(phi, f):
    if phi.side is not None and phi.side != f.side:
        raise DescriptorMismatchError(f"{phi.label()} is declared on the {phi.side} side, "
                                      f"the element lives on the {f.side} side")


def point_value(phi, f):
    """f(x) in the coefficient field, or None when every term vanishes at an exact zero coordinate."""
    field = f.field
    total = None
    for exps, c in f.terms:
        if any(x.is_zero() and not e.is_zero() for x, e in zip(phi.coords, exps)):
            continue
        term = c
        for x, e in zip(phi.coords, exps):
            if not e.is_zero():
                term = field.mul(term, field.point_power(x, e))
        total = term if total is None else field.add(total, term)
    return total


def _with_precision(f, value):
    if not f.inexact:
        return value
    bound = f.field.precision_bound()
    return bound if value <= bound else value


def gauss_eval(phi, f):
    if not isinstance(f, GaussElement):
        raise DescriptorMismatchError(f"{type(f).__name__} is not a Gauss algebra element")
    if isinstance(phi, GaussRadius):
        _check_side(phi, f)
        if len(phi.radii) != f.d:
            raise DescriptorMismatchError(f"{phi.label()} has {len(phi.radii)} radii for {f.d} variables")
        validate_descriptor(phi)
        value = NormValue.zero(f.p)
        for exps, c in f.terms:
            weight = f.field.norm(c)
            for r, e in zip(phi.radii, exps):
                weight = norm_mul(weight, norm_pow(r, e))
            value = norm_max(value, weight)
        return _with_precision(f, value)
    if isinstance(phi, EvalPoint):
        _check_side(phi, f)
        if len(phi.coords) != f.d:
            raise DescriptorMismatchError(f"{phi.label()} has {len(phi.coords)} coordinates for {f.d} variables")
        validate_descriptor(phi)
        total = point_value(phi, f)
        value = NormValue.zero(f.p) if total is None else f.field.norm(total)
        return _with_precision(f, value)
    raise DescriptorMismatchError(f"{phi.label()} is not a seminorm on a Gauss algebra")


def evaluate(phi, element):
    """phi(element) for any descriptor family on the element's ring."""
    if isinstance(phi, ProductCoordinate):
        components = getattr(element, "components", None)
        if components is None or not 0 <= phi.index < len(components):
            raise DescriptorMismatchError(f"{phi.label()} does not apply to {element}")
        return gauss_eval(GaussRadius(()), components[phi.index])
    if isinstance(phi, CustomTable):
        table = dict(phi.table)
        if element not in table:
            raise DescriptorMismatchError(f"{phi.label()} has no entry for {element!r}")
        return table[element]
    return gauss_eval(phi, element)
