import logging
from dataclasses import dataclass, replace
from typing import Tuple

from charp import CharPSeries, cps_pow, pth_root
from utils.errors import AmbientMismatchError, InputFormatError, NonIntegralError
from values import NormValue, PExponent
from witt import WittVector, int_to_witt, teichmuller, witt_add, witt_mul, witt_neg, witt_sub

logger = logging.getLogger('perfectoid.untilt.element')
logger.setLevel(logging.DEBUG)


@dataclass(frozen=True)
class UntiltElement:
    """x / p^shift with x = sum_i [a_i] p^i in W_n(O_F / t^N) / ([t] - p).

    Digits have support in [0, 1). precision is the p-adic precision of x: the digits
    describe x modulo p^precision, and precision <= n.
    """

    p: int
    n: int
    N: PExponent
    digits: Tuple[CharPSeries, ...]
    precision: PExponent
    shift: int = 0

    @classmethod
    def from_json(cls, payload, p=None):
        try:
            raw_digits = payload["digits"]
            p = int(payload.get("p") or p or raw_digits[0]["p"])
            N = PExponent.from_json(payload["N"], p)
            n = int(payload["n"])
            digits = [CharPSeries.from_json(d, p) for d in raw_digits]
            shift = int(payload.get("k", 0))
        except (KeyError, IndexError, TypeError, ValueError, AttributeError) as e:
            raise InputFormatError(f"Malformed untilt element {payload!r}") from e
        if len(digits) != n:
            raise InputFormatError(f"Expected {n} digits, got {len(digits)}")
        element = from_digits(digits, n, N)
        return _normalize(replace(element, shift=shift)) if shift else element

    def to_json(self):
        return {
            "p": self.p,
            "digits": [d.to_json() for d in self.digits],
            "n": self.n,
            "N": self.N.to_json(),
            "k": self.shift,
            "precision": self.precision.to_json(),
        }

    @property
    def ambient(self):
        return (self.p, self.n, self.N)

    def is_zero(self):
        return all(d.is_zero() for d in self.digits)

    def abs_precision(self):
        return self.precision - self.shift

    def valuation(self):
        """p-adic valuation min_i (i + v(a_i)) - shift, or None when no digit is known to be nonzero."""
        known = [d.valuation() + i for i, d in enumerate(self.digits) if not d.is_zero()]
        return min(known) - self.shift if known else None

    def agrees_with(self, other):
        _check_ambient(self, other)
        x, y = _align(self, other)
        bound = min(x.precision, y.precision)
        for i, (a, b) in enumerate(zip(x.digits, y.digits)):
            if not bound > i:
                break
            limit = min(PExponent.integer(1, self.p), bound - i)
            if a.truncate(limit).terms != b.truncate(limit).terms:
                return False
        return True

    def __add__(self, other):
        return untilt_add(self, other)

    def __sub__(self, other):
        return untilt_sub(self, other)

    def __neg__(self):
        return untilt_neg(self)

    def __mul__(self, other):
        return untilt_mul(self, other)

    def __pow__(self, m):
        return untilt_pow(self, m)

    def __str__(self):
        body = " + ".join(f"[{d}]*p^{i}" for i, d in enumerate(self.digits) if not d.is_zero()) or "0"
        suffix = f" / p^{self.shift}" if self.shift else ""
        return f"({body}){suffix} + O(p^({self.abs_precision()}))"


def _check_ambient(x, y):
    if x.ambient != y.ambient:
        raise AmbientMismatchError(f"Untilt elements over {x.ambient} and {y.ambient} do not mix")


def _clip_digits(digits, precision, p):
    one = PExponent.integer(1, p)
    clipped = []
    for i, d in enumerate(digits):
        limit = min(one, precision - i)
        if limit < 0:
            limit = PExponent.zero(p)
        clipped.append(CharPSeries(p, tuple((e, c) for e, c in d.terms if e < limit), limit))
    return tuple(clipped)


def canonicalize(w, N=None):
    """Reduce a Witt vector modulo z = [t] - p to its Teichmuller-digit form.

    Each step splits off the digit below t^1 and rewrites [t u] as p [u] and V(r) as p F^-1(r);
    the t-precision available at depth i bounds the p-adic precision by i + prec_i.
    """
    p, n = w.p, w.length
    N = w.prec if N is None else N
    one = PExponent.integer(1, p)
    precision = PExponent.integer(n, p)
    digits = []
    current = w
    for i in range(n):
        available = current.prec
        precision = min(precision, available + i)
        low, high = current.components[0].split(one)
        digits.append(low)
        if i == n - 1:
            break
        lifted = witt_sub(current, teichmuller(low, current.length, current.prec))
        u = lifted.components[0].shift(-1)
        rest = [pth_root(c) for c in lifted.components[1:]]
        next_prec = min(u.prec, available.div_p())
        if not next_prec > 0:
            logger.debug(f"t-precision exhausted after {i + 1} digits.")
            precision = min(precision, PExponent.integer(i + 1, p))
            digits.extend([CharPSeries.zero(p, 0)] * (n - 1 - i))
            break
        current = witt_add(
            teichmuller(u.truncate(next_prec), current.length - 1, next_prec),
            WittVector(p, tuple(c.truncate(next_prec) for c in rest), next_prec))
    return UntiltElement(p, n, N, _clip_digits(digits, precision, p), precision)


def from_digits(digits, n, N):
    p = digits[0].p
    if isinstance(N, int):
        N = PExponent.integer(N, p)
    return canonicalize(_lift_digits(digits, n, N), N)


def _lift_digits(digits, n, N):
    """sum_i p^i [a_i] = sum_i V^i [a_i^(p^i)] as a Witt vector over O_F / t^N."""
    p = digits[0].p
    components = []
    for i, d in enumerate(digits):
        exact = CharPSeries(p, d.terms, N)
        components.append(cps_pow(exact, p ** i).truncate(N) if not d.is_zero() else CharPSeries.zero(p, N))
    return WittVector.make(p, components, N)


def lift(x):
    return _lift_digits(x.digits, x.n, x.N)


def _times_p_power(x, d):
    """Multiply the numerator by p^d (and the denominator too), keeping the value."""
    if d == 0:
        return x
    zero = CharPSeries.zero(x.p, 1)
    digits = ((zero,) * d + x.digits)[:x.n]
    precision = min(PExponent.integer(x.n, x.p), x.precision + d)
    return UntiltElement(x.p, x.n, x.N, _clip_digits(digits, precision, x.p), precision, x.shift + d)


def _align(x, y):
    k = max(x.shift, y.shift)
    return _times_p_power(x, k - x.shift), _times_p_power(y, k - y.shift)


def _normalize(x):
    """Choose the minimal shift: divide numerator and denominator by p while digit 0 vanishes."""
    while x.shift > 0 and x.digits[0].is_zero() and x.precision > 0:
        zero = CharPSeries.zero(x.p, 0)
        precision = x.precision - 1
        digits = _clip_digits(x.digits[1:] + (zero,), precision, x.p)
        x = UntiltElement(x.p, x.n, x.N, digits, precision, x.shift - 1)
    return x


def _numerator_valuation(x):
    known = [d.valuation() + i for i, d in enumerate(x.digits) if not d.is_zero()]
    return min(known) if known else x.precision


def untilt_add(x, y):
    _check_ambient(x, y)
    x, y = _align(x, y)
    if y.is_zero() and y.precision >= x.precision:
        return _normalize(x)
    if x.is_zero() and x.precision >= y.precision:
        return _normalize(y)
    result = canonicalize(witt_add(lift(x), lift(y)), x.N)
    precision = min(result.precision, x.precision, y.precision)
    return _normalize(UntiltElement(x.p, x.n, x.N, _clip_digits(result.digits, precision, x.p), precision, x.shift))


def untilt_neg(x):
    result = canonicalize(witt_neg(lift(x)), x.N)
    precision = min(result.precision, x.precision)
    return UntiltElement(x.p, x.n, x.N, _clip_digits(result.digits, precision, x.p), precision, x.shift)


def untilt_sub(x, y):
    return untilt_add(x, untilt_neg(y))


def untilt_mul(x, y):
    _check_ambient(x, y)
    result = canonicalize(witt_mul(lift(x), lift(y)), x.N)
    precision = min(result.precision,
                    x.precision + _numerator_valuation(y),
                    y.precision + _numerator_valuation(x))
    digits = _clip_digits(result.digits, precision, x.p)
    return _normalize(UntiltElement(x.p, x.n, x.N, digits, precision, x.shift + y.shift))


def untilt_pow(x, m):
    if m < 0:
        raise ValueError("negative powers are not supported")
    result = untilt_one(x.p, x.n, x.N)
    base = x
    while m:
        if m & 1:
            result = untilt_mul(result, base)
        m >>= 1
        if m:
            base = untilt_mul(base, base)
    return result


def untilt_pow_p(x, m):
    """x^(p^m) as m successive p-th powers.

    x = y mod p^a with a >= 1 gives x^p = y^p mod p^(a+1), so each step raises a truncated
    representative and gains one digit of precision.
    """
    if m == 0:
        return x
    p, n = x.p, x.n
    full = PExponent.integer(n, p)
    target = min(x.precision, max(PExponent.integer(1, p), full - m))
    if x.shift or target < 1:
        return untilt_pow(x, p ** m)
    precision = target
    current = x
    for _ in range(m):
        representative = UntiltElement(p, n, x.N, _clip_digits(current.digits, precision, p), full)
        raised = untilt_pow(representative, p)
        precision = min(full, precision + 1, raised.precision)
        current = UntiltElement(p, n, x.N, _clip_digits(raised.digits, precision, p), precision)
    return current


def untilt_norm(x):
    """lambda-norm sup_i p^(-i) |a_i| of the numerator, scaled by p^shift."""
    v = x.valuation()
    if v is None:
        return NormValue.bound(x.abs_precision())
    return NormValue.pow(v)


def sharp(f, n, N):
    """f^# = Teichmuller lift followed by reduction mod z; Laurent f goes through t^k f and p^k."""
    p = f.p
    if isinstance(N, int):
        N = PExponent.integer(N, p)
    k = 0 if f.is_integral() else -f.valuation().floor()
    scaled = f.shift(k) if k else f
    prec = min(N, scaled.prec)
    result = canonicalize(teichmuller(scaled.truncate(prec), n, prec), N)
    if k:
        result = _normalize(replace(result, shift=k))
    return result


def untilt_from_int(c, p, n, N):
    if isinstance(N, int):
        N = PExponent.integer(N, p)
    if c < 0:
        return untilt_neg(untilt_from_int(-c, p, n, N))
    return canonicalize(int_to_witt(c, p, n, N), N)


def untilt_one(p, n, N):
    if isinstance(N, int):
        N = PExponent.integer(N, p)
    return sharp(CharPSeries.one(p, N), n, N)


def untilt_zero(p, n, N):
    if isinstance(N, int):
        N = PExponent.integer(N, p)
    return canonicalize(WittVector.zero(p, n, N), N)


def digit0(x):
    if x.shift:
        raise NonIntegralError("digit0 is only defined on integral elements")
    return x.digits[0]

