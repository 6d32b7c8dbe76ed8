from values.exponents import PExponent, exp_add, exp_mul, exp_sub
from values.norms import (NormValue, RationalNorm, format_norm, norm_div, norm_max, norm_mul,
                          norm_nth_root, norm_pow)
