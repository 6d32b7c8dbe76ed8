from gauss.fields import CharPField, UntiltField, root_power
from gauss.element import GaussElement, gauss_add, gauss_mul, gauss_neg, gauss_pow, gauss_scale, gauss_sub
from gauss.seminorms import (CustomTable, EvalPoint, GaussRadius, ProductCoordinate, descriptor_from_json, evaluate,
                             gauss_eval, point_value, validate_descriptor)
from gauss.rings import (CoefficientRing, DualElement, DualNumbers, GaussRing, NormedRing, PolyGaussCRing,
                         ring_from_name)
from gauss.spectral import CauchyGapTable, SpectralBound, cauchy_gap_demo, is_power_bounded, spectral_seminorm
