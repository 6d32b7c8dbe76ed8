from untilt.element import (UntiltElement, canonicalize, digit0, from_digits, lift, sharp, untilt_add,
                            untilt_from_int, untilt_mul, untilt_neg, untilt_norm, untilt_one, untilt_pow,
                            untilt_pow_p, untilt_sub, untilt_zero)
