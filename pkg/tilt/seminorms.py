import logging
from dataclasses import dataclass, replace

from gauss import EvalPoint, GaussElement, GaussRadius, gauss_eval
from utils.errors import DescriptorMismatchError, UnsupportedFamilyError

from .ideals import descriptor_kernel, ideal_tilt

logger = logging.getLogger('perfectoid.tilt.seminorms')
logger.setLevel(logging.DEBUG)


def seminorm_tilt(phi):
    """phi -> phi_flat with phi_flat(g) = phi(g^#): same radii, same compatible-root coordinates."""
    if not isinstance(phi, (GaussRadius, EvalPoint)):
        raise UnsupportedFamilyError(f"{phi.label()} is outside the Gauss radius and evaluation families")
    if phi.side == "charp":
        raise DescriptorMismatchError(f"{phi.label()} already lives on the tilt side")
    return replace(phi, side="charp")


def gauss_sharp(g, field):
    """(c X^nu)^# = c^# X^nu; sharp is multiplicative only, so g must be a monomial."""
    if g.side != "charp":
        raise DescriptorMismatchError("Only tilt-side elements have a sharp")
    if len(g.terms) > 1:
        raise UnsupportedFamilyError(f"sharp of a {len(g.terms)}-term sum is not computed termwise")
    if not g.terms:
        return GaussElement.zero(field, g.d)
    exps, c = g.terms[0]
    return GaussElement.make(field, g.d, [(exps, field.sharp(c))])


def tilted_value(phi, g):
    """phi(g^#) for phi on the untilt side, computed as phi_flat(g)."""
    return gauss_eval(seminorm_tilt(phi), g)


def sharp_contract_holds(phi, g, field):
    """phi_flat(g) = phi(g^#) on a tilt-side monomial g."""
    lhs = tilted_value(phi, g)
    rhs = gauss_eval(phi, gauss_sharp(g, field))
    return lhs.exact() == rhs.exact()


@dataclass(frozen=True)
class KernelComparison:
    descriptor: str
    kernel: object
    tilted_kernel: object
    compatible: bool
    absolute_value: bool
    tilted_absolute_value: bool

    def to_json(self):
        return {
            "descriptor": self.descriptor,
            "kernel": None if self.kernel is None else self.kernel.to_json(),
            "tilted_kernel": None if self.tilted_kernel is None else self.tilted_kernel.to_json(),
            "compatible": self.compatible,
            "absolute_value": self.absolute_value,
            "tilted_absolute_value": self.tilted_absolute_value,
        }


def compare_kernels(phi, d):
    """ker(phi_flat) against ker(phi)_flat; phi is an absolute value iff phi_flat is."""
    kernel = descriptor_kernel(phi, d, "untilt")
    tilted_kernel = descriptor_kernel(seminorm_tilt(phi), d, "tilt")
    if kernel is None or tilted_kernel is None:
        compatible = kernel is None and tilted_kernel is None
    else:
        compatible = ideal_tilt(kernel) == tilted_kernel
    return KernelComparison(phi.label(), kernel, tilted_kernel, compatible,
                            kernel is not None and kernel.is_zero,
                            tilted_kernel is not None and tilted_kernel.is_zero)
