from charp.series import (CharPSeries, cps_add, cps_mul, cps_neg, cps_norm, cps_pow, cps_sub,
                          frobenius, pth_root)
