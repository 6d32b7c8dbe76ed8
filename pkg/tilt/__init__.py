from tilt.sequences import AdditionLimitReport, SequenceCheck, TiltSequence, tilt_add_limit
from tilt.ideals import (Augmentation, MonomialIdeal, PrimalityReport, Principal, descriptor_kernel, ideal_sharp,
                         ideal_sum, ideal_tilt, is_radical, is_spectrally_reduced, primality_witness,
                         quotient_domain_check, spectral_radical)
from tilt.seminorms import (KernelComparison, compare_kernels, gauss_sharp, seminorm_tilt, sharp_contract_holds,
                            tilted_value)
from tilt.approximation import (DisjunctionReport, InequalityReport, approx_construct, approx_verify,
                                check_disjunction, dominant_monomial, radius_grid)
