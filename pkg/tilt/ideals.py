import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

from gauss import EvalPoint, GaussRadius
from utils.errors import AmbientMismatchError, InputFormatError, UnsupportedIdealError
from values import NormValue, PExponent

logger = logging.getLogger('perfectoid.tilt.ideals')
logger.setLevel(logging.DEBUG)

SIDES = ("untilt", "tilt")
_FIELD_SIDE = {"untilt": "untilt", "tilt": "charp"}


@dataclass(frozen=True)
class Principal:
    """Exponent of X_i at least a (a > 0)."""

    a: PExponent

    kind = "principal"

    def accepts(self, e):
        return e >= self.a

    def to_json(self):
        return {"kind": self.kind, "bound": self.a.to_json()}


@dataclass(frozen=True)
class Augmentation:
    """Exponent of X_i strictly positive: the closure of (X_i^(1/p^k) : k >= 0)."""

    kind = "augmentation"

    def accepts(self, e):
        return e > 0

    def to_json(self):
        return {"kind": self.kind}


Bound = Union[Principal, Augmentation]


def _weaker(b1, b2):
    """The bound of (generators of b1) + (generators of b2) on one variable."""
    if isinstance(b1, Augmentation) or isinstance(b2, Augmentation):
        return Augmentation()
    return b1 if b1.a <= b2.a else b2


def _bound_includes(outer, inner):
    if isinstance(outer, Augmentation):
        return True
    return isinstance(inner, Principal) and inner.a >= outer.a


@dataclass(frozen=True)
class MonomialIdeal:
    """Closed ideal generated by per-variable monomial bounds; no bounds is the zero ideal.

    A term c X^nu lies in the ideal iff some bounded variable X_i has nu_i within its bound.
    """

    side: str
    d: int
    bounds: Tuple[Tuple[int, Bound], ...] = ()

    @classmethod
    def make(cls, side, d, bounds=None):
        if side not in SIDES:
            raise InputFormatError(f"Ideal side must be one of {SIDES}, got {side!r}")
        bounds = dict(bounds or {})
        for i, bound in bounds.items():
            if not 0 <= i < d:
                raise AmbientMismatchError(f"Variable index {i} outside 0..{d - 1}")
            if isinstance(bound, Principal) and not bound.a > 0:
                raise UnsupportedIdealError("Principal bounds need a positive exponent; X^0 generates the unit ideal")
        return cls(side, d, tuple(sorted(bounds.items(), key=lambda item: item[0])))

    @classmethod
    def zero(cls, side, d=1):
        return cls.make(side, d)

    @classmethod
    def principal(cls, side, a, d=1, var=0):
        return cls.make(side, d, {var: Principal(a)})

    @classmethod
    def augmentation(cls, side, d=1, variables=(0,)):
        return cls.make(side, d, {i: Augmentation() for i in variables})

    @classmethod
    def from_json(cls, payload, p, side="untilt", d=1):
        try:
            side = payload.get("side", side)
            d = int(payload.get("d", d))
            kind = payload["kind"]
            if kind == "zero":
                return cls.zero(side, d)
            if kind == "monomial":
                bounds = {_var_index(b.get("var", 0)): _bound_from_json(b, p) for b in payload["bounds"]}
                return cls.make(side, d, bounds)
            return cls.make(side, d, {_var_index(payload.get("var", 0)): _bound_from_json(payload, p)})
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise InputFormatError(f"Malformed ideal {payload!r}") from e

    def to_json(self):
        if self.d == 1:
            return self.bounds[0][1].to_json() if self.bounds else {"kind": "zero"}
        return {"kind": "monomial", "side": self.side, "d": self.d,
                "bounds": [dict(bound.to_json(), var=i) for i, bound in self.bounds]}

    @property
    def is_zero(self):
        return not self.bounds

    def bound(self, i):
        return dict(self.bounds).get(i)

    def contains_term(self, exps):
        return any(bound.accepts(exps[i]) for i, bound in self.bounds)

    def contains(self, f):
        if f.side != _FIELD_SIDE[self.side]:
            raise AmbientMismatchError(f"A {f.side} element is not in an ideal of the {self.side} side")
        if f.d != self.d:
            raise AmbientMismatchError(f"Element in {f.d} variables, ideal in {self.d}")
        return all(self.contains_term(exps) for exps, _ in f.terms)

    def includes(self, other):
        _check(self, other)
        return all(self.bound(i) is not None and _bound_includes(self.bound(i), bound) for i, bound in other.bounds)

    def __le__(self, other):
        return other.includes(self)

    def __str__(self):
        if not self.bounds:
            return "(0)"
        parts = []
        for i, bound in self.bounds:
            name = f"X{i + 1}" + ("_flat" if self.side == "tilt" else "")
            parts.append(f"{name}^({bound.a})" if isinstance(bound, Principal) else f"m_{name}")
        return " + ".join(parts)


def _var_index(var):
    if isinstance(var, str) and var.upper().startswith("X"):
        return int(var[1:]) - 1 if len(var) > 1 else 0
    return int(var)


def _bound_from_json(payload, p):
    if payload["kind"] == "augmentation":
        return Augmentation()
    if payload["kind"] == "principal":
        return Principal(PExponent.from_json(payload["bound"], p))
    raise InputFormatError(f"Unknown bound kind {payload['kind']!r}")


def _check(a, b):
    if a.side != b.side or a.d != b.d:
        raise AmbientMismatchError(f"Ideals on ({a.side}, d={a.d}) and ({b.side}, d={b.d}) do not compare")


def ideal_sum(a, b):
    _check(a, b)
    merged = dict(a.bounds)
    for i, bound in b.bounds:
        merged[i] = _weaker(merged[i], bound) if i in merged else bound
    return MonomialIdeal.make(a.side, a.d, merged)


def ideal_tilt(ideal):
    """I -> I_flat: a principal bound fails for the p^m-th roots in the sequence, an augmentation survives."""
    if ideal.side != "untilt":
        raise UnsupportedIdealError("Only ideals of the untilt side are tilted")
    kept = {i: bound for i, bound in ideal.bounds if isinstance(bound, Augmentation)}
    return MonomialIdeal.make("tilt", ideal.d, kept)


def ideal_sharp(ideal):
    if ideal.side != "tilt":
        raise UnsupportedIdealError("Only ideals of the tilt side have a sharp")
    if any(isinstance(bound, Principal) for _, bound in ideal.bounds):
        raise UnsupportedIdealError(f"{ideal} is not spectrally reduced; only (0) and augmentation ideals have a sharp")
    return MonomialIdeal.make("untilt", ideal.d, dict(ideal.bounds))


def spectral_radical(ideal):
    """Every bounded power-multiplicative seminorm killing X^a kills each X^(a/p^k)."""
    return MonomialIdeal.make(ideal.side, ideal.d, {i: Augmentation() for i, _ in ideal.bounds})


def is_spectrally_reduced(ideal, p):
    """Equal to the kernel of phi_r with r_i = 0 on its bounded variables and 1 elsewhere."""
    bounded = {i for i, _ in ideal.bounds}
    radii = tuple(NormValue.zero(p) if i in bounded else NormValue.one(p) for i in range(ideal.d))
    return descriptor_kernel(GaussRadius(radii), ideal.d, ideal.side) == ideal


def _exponent_grid(ideal, p, depth):
    values = {PExponent.zero(p)}
    for k in range(depth + 1):
        for j in range(1, 2 * p ** k + 1):
            values.add(PExponent.of(j, k, p))
    for _, bound in ideal.bounds:
        if isinstance(bound, Principal):
            values.update({bound.a.div_p(), bound.a - bound.a.div_p(), bound.a})
    return sorted(values)


@dataclass(frozen=True)
class PrimalityReport:
    ideal: MonomialIdeal
    witness: Optional[Tuple[Tuple[PExponent, ...], Tuple[PExponent, ...]]]
    searched: int

    @property
    def prime(self):
        return self.witness is None

    def to_json(self):
        payload = {"ideal": self.ideal.to_json(), "prime": self.prime, "searched": self.searched}
        if self.witness is not None:
            payload["witness"] = [[str(e) for e in exps] for exps in self.witness]
        return payload


def primality_witness(ideal, p, depth=1):
    """Search monomials u, v outside the ideal with u v inside it."""
    grid = _exponent_grid(ideal, p, depth)
    outside = [exps for exps in itertools.product(grid, repeat=ideal.d) if not ideal.contains_term(exps)]
    searched = 0
    for u, v in itertools.combinations_with_replacement(outside, 2):
        searched += 1
        if ideal.contains_term(tuple(a + b for a, b in zip(u, v))):
            logger.debug(f"{ideal} is not prime: witness {u} * {v}.")
            return PrimalityReport(ideal, (u, v), searched)
    return PrimalityReport(ideal, None, searched)


def is_radical(ideal, p):
    """No monomial outside the ideal has its p-th power inside."""
    for i, bound in ideal.bounds:
        if isinstance(bound, Principal):
            exps = [PExponent.zero(p)] * ideal.d
            exps[i] = bound.a.div_p()
            if not ideal.contains_term(tuple(exps)):
                return False
    return True


def descriptor_kernel(phi, d, side="untilt"):
    """ker(phi) as a monomial ideal, or None when the kernel is not monomial."""
    if isinstance(phi, GaussRadius):
        return MonomialIdeal.make(side, d, {i: Augmentation() for i, r in enumerate(phi.radii) if r.is_zero})
    if isinstance(phi, EvalPoint):
        zeros = [i for i, x in enumerate(phi.coords) if x.is_zero()]
        if len(zeros) == d:
            return MonomialIdeal.augmentation(side, d, zeros)
        return None
    raise UnsupportedIdealError(f"{phi.label()} has no monomial kernel description")


def quotient_domain_check(ideal, p):
    """(A/I is a domain, A_flat/I_flat is a domain) for a spectrally reduced I."""
    if not is_spectrally_reduced(ideal, p):
        raise UnsupportedIdealError(f"{ideal} is not spectrally reduced")
    tilted = ideal_tilt(ideal) if ideal.side == "untilt" else ideal_sharp(ideal)
    return primality_witness(ideal, p).prime, primality_witness(tilted, p).prime

