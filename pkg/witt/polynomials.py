import logging
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

from sympy.polys.domains import QQ
from sympy.polys.rings import ring

from charp import CharPSeries, cps_mul, cps_pow
from utils import dumps, loads
from utils.errors import WittCacheCorruptError, WittCapExceededError
from utils.settings import get_settings

logger = logging.getLogger('perfectoid.witt.polynomials')
logger.setLevel(logging.DEBUG)

ROLES = ("sum", "prod", "frob")

Term = Tuple[Tuple[int, ...], int]

_CACHE = {}
_LOCK = threading.Lock()


@dataclass(frozen=True)
class WittPolyCache:
    """Universal sum, product and Frobenius polynomials of p-typical Witt vectors of length n.

    sum/prod polynomials are in X_0..X_{n-1}, Y_0..Y_{n-1}; frob polynomials in X_0..X_n.
    """

    p: int
    length: int
    sum_polys: Tuple[Tuple[Term, ...], ...]
    prod_polys: Tuple[Tuple[Term, ...], ...]
    frob_polys: Tuple[Tuple[Term, ...], ...]

    def role(self, name):
        return {"sum": self.sum_polys, "prod": self.prod_polys, "frob": self.frob_polys}[name]

    def to_json(self):
        return {
            "p": self.p,
            "n": self.length,
            "polys": {
                name: [[[list(monom), coeff] for monom, coeff in poly] for poly in self.role(name)]
                for name in ROLES
            },
        }

    @classmethod
    def from_json(cls, payload):
        try:
            p, n = int(payload["p"]), int(payload["n"])
            polys = {}
            for name in ROLES:
                parsed = []
                for poly in payload["polys"][name]:
                    terms = []
                    for monom, coeff in poly:
                        if not isinstance(coeff, int) or isinstance(coeff, bool):
                            raise WittCacheCorruptError(
                                f"Integrality assertion failed: {name} coefficient {coeff!r} is not an integer",
                                p=p, n=n, role=name)
                        terms.append((tuple(int(e) for e in monom), coeff))
                    parsed.append(tuple(terms))
                polys[name] = tuple(parsed)
        except (KeyError, TypeError, ValueError) as e:
            raise WittCacheCorruptError(f"Malformed Witt polynomial cache: {e}") from e
        return cls(p, n, polys["sum"], polys["prod"], polys["frob"])


def _ghost(gens, p, k):
    return sum(p ** i * gens[i] ** (p ** (k - i)) for i in range(k + 1))


def _integral_terms(poly, role, index):
    terms = []
    for monom, coeff in poly.terms():
        if coeff.denominator != 1:
            raise WittCacheCorruptError(
                f"Integrality assertion failed for {role}[{index}]: coefficient {coeff}", role=role, index=index)
        terms.append((tuple(monom), int(coeff.numerator)))
    return tuple(sorted(terms))


def _check_size(poly, role, index):
    cap = get_settings().witt_max_poly_terms
    if len(poly) > cap:
        raise WittCapExceededError(f"{role}[{index}] has {len(poly)} terms (cap {cap})", cap=cap)


def _solve_ghost_equations(p, n):
    """Solve w_k(S) = w_k(X) + w_k(Y), w_k(P) = w_k(X) w_k(Y), w_k(F) = w_{k+1}(X) over Q."""
    names = [f"X{i}" for i in range(n)] + [f"Y{i}" for i in range(n)]
    R, *gens = ring(names, QQ)
    xs, ys = gens[:n], gens[n:]
    sums, prods = [], []
    for k in range(n):
        inv = QQ(1, p ** k)
        s_k = _ghost(xs, p, k) + _ghost(ys, p, k) - sum((p ** i * sums[i] ** (p ** (k - i)) for i in range(k)), R.zero)
        sums.append(s_k * inv)
        _check_size(sums[k], "sum", k)
        p_k = _ghost(xs, p, k) * _ghost(ys, p, k) - sum((p ** i * prods[i] ** (p ** (k - i)) for i in range(k)), R.zero)
        prods.append(p_k * inv)
        _check_size(prods[k], "prod", k)
        logger.debug(f"Solved S_{k}, P_{k} for p={p}: {len(sums[k])} and {len(prods[k])} terms.")

    F, *fgens = ring([f"X{i}" for i in range(n + 1)], QQ)
    frobs = []
    for k in range(n):
        f_k = _ghost(fgens, p, k + 1) - sum((p ** i * frobs[i] ** (p ** (k - i)) for i in range(k)), F.zero)
        frobs.append(f_k * QQ(1, p ** k))
        _check_size(frobs[k], "frob", k)

    return WittPolyCache(
        p, n,
        tuple(_integral_terms(poly, "sum", k) for k, poly in enumerate(sums)),
        tuple(_integral_terms(poly, "prod", k) for k, poly in enumerate(prods)),
        tuple(_integral_terms(poly, "frob", k) for k, poly in enumerate(frobs)),
    )


def verify_ghost_identities(cache):
    """Symbolic check of the defining ghost identities over the integers."""
    p, n = cache.p, cache.length
    names = [f"X{i}" for i in range(n)] + [f"Y{i}" for i in range(n)]
    R, *gens = ring(names, QQ)
    xs, ys = gens[:n], gens[n:]
    sums = [R.from_dict(dict(poly)) for poly in cache.sum_polys]
    prods = [R.from_dict(dict(poly)) for poly in cache.prod_polys]
    F, *fgens = ring([f"X{i}" for i in range(n + 1)], QQ)
    frobs = [F.from_dict(dict(poly)) for poly in cache.frob_polys]
    for k in range(n):
        if _ghost(sums, p, k) != _ghost(xs, p, k) + _ghost(ys, p, k):
            raise WittCacheCorruptError(f"Ghost identity fails for S_{k} (p={p}, n={n})", role="sum", index=k)
        if _ghost(prods, p, k) != _ghost(xs, p, k) * _ghost(ys, p, k):
            raise WittCacheCorruptError(f"Ghost identity fails for P_{k} (p={p}, n={n})", role="prod", index=k)
        if _ghost(frobs, p, k) != _ghost(fgens, p, k + 1):
            raise WittCacheCorruptError(f"Ghost identity fails for F_{k} (p={p}, n={n})", role="frob", index=k)
    return True


def _cache_file(cache_dir, p, n):
    return Path(cache_dir) / f"witt_p{p}_n{n}.json"


def load_cache_file(path):
    cache = WittPolyCache.from_json(loads(Path(path).read_text(encoding="utf-8")))
    verify_ghost_identities(cache)
    return cache


def build_witt_polys(p, n, cache_dir=None):
    settings = get_settings()
    if n < 1:
        raise WittCapExceededError(f"Witt length must be at least 1 (got {n})")
    if p ** (n - 1) > settings.witt_max_degree:
        raise WittCapExceededError(
            f"p^(n-1) = {p ** (n - 1)} exceeds witt_max_degree = {settings.witt_max_degree}", p=p, n=n)

    key = (p, n)
    with _LOCK:
        if key in _CACHE:
            return _CACHE[key]

        cache_dir = settings.witt_cache_dir if cache_dir is None else cache_dir
        path = _cache_file(cache_dir, p, n) if cache_dir else None
        if path is not None and path.exists():
            logger.debug(f"Loading Witt polynomials from {path}.")
            cache = load_cache_file(path)
            if (cache.p, cache.length) != key:
                raise WittCacheCorruptError(f"{path} holds p={cache.p}, n={cache.length}")
        else:
            logger.info(f"Solving ghost equations for p={p}, n={n}.")
            cache = _solve_ghost_equations(p, n)
            verify_ghost_identities(cache)
            if path is not None:
                try:
                    path.parent.mkdir(parents=True, exist_ok=True)
                    path.write_text(dumps(cache.to_json(), indent=None), encoding="utf-8")
                    logger.debug(f"Wrote Witt polynomial cache {path}.")
                except OSError as e:
                    logger.warning(f"Could not write Witt polynomial cache {path}: {e}")

        _CACHE[key] = cache
        return cache


def clear_memory_cache():
    with _LOCK:
        _CACHE.clear()


def evaluate_int(terms, values):
    """Evaluate an integer polynomial at integers (ghost oracle lifts)."""
    total = 0
    for monom, coeff in terms:
        value = coeff
        for var, e in enumerate(monom):
            if e:
                value *= values[var] ** e
        total += value
    return total


def evaluate_charp(terms, values, prec):
    """Evaluate an integer polynomial, reduced mod p, at integral series modulo t^prec."""
    p = values[0].p
    powers = {}
    total = CharPSeries.zero(p, prec)
    acc = []
    for monom, coeff in terms:
        coeff %= p
        if not coeff:
            continue
        if any(e and values[var].is_zero() for var, e in enumerate(monom)):
            continue
        product = CharPSeries.constant(p, coeff, prec)
        for var, e in enumerate(monom):
            if not e:
                continue
            if (var, e) not in powers:
                powers[(var, e)] = cps_pow(values[var], e).truncate(prec)
            product = cps_mul(product, powers[(var, e)]).truncate(prec)
            if product.is_zero():
                break
        if not product.is_zero():
            acc.append(product)
    for product in acc:
        total = total + product
    return total.truncate(prec)
