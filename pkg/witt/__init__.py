from witt.polynomials import (WittPolyCache, build_witt_polys, clear_memory_cache, evaluate_int,
                              load_cache_file, verify_ghost_identities)
from witt.vectors import (WittVector, ghost_oracle, int_to_witt, primitive_z, teichmuller, verschiebung,
                          witt_add, witt_frobenius, witt_mul, witt_neg, witt_sub)
