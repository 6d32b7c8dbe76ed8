from zariski.series import (CONVERGED, DIVERGED_SUPPORT, INCONCLUSIVE, NO_COUNTEREXAMPLE, Inversion,
                            ZariskianReport, invert_one_plus, is_zariskian_sample)
from zariski.fractions import Verdict, ZarFraction, zar_add, zar_eq, zar_mul, zar_norm
