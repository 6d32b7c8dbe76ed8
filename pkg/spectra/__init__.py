from spectra.toyrings import ProductElement, ProductOfFields, QuotientByMonomial, quotient_by, probe_elements
from spectra.candidates import CandidatePrime, default_candidates, kernel_descriptor, point_from_text
from spectra.boundary import (ShilovReport, ZeroDivisorVerdict, berkovich_points, is_topological_zero_divisor,
                              shilov_bruteforce)
from spectra.topspec import (IN, OUT, UNDECIDED, CompactnessReport, SobrietyReport, TopSpecTable, quasi_compact_check,
                             sobriety_check, topspec_enumerate, topspec_zar_compare)
