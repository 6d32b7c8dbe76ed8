import logging
import re

from charp import CharPSeries
from gauss import GaussElement
from untilt import UntiltElement
from utils import loads
from utils.errors import InputFormatError
from values import NormValue, PExponent

logger = logging.getLogger('perfectoid.helpers.parsing')
logger.setLevel(logging.DEBUG)

VARIABLE = re.compile(r"^(X|T|eps)(\d*)(?:\^\(?([^()]+)\)?)?$")


def split_top(text, separator):
    """Split on separator outside brackets and parentheses."""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch == separator and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [part.strip() for part in parts if part.strip()]


def _exponent(text, p):
    return PExponent.parse(text.strip().strip("()"), p)


def parse_exponent(text, p):
    if isinstance(text, PExponent):
        return text
    if str(text).strip().startswith("{"):
        return PExponent.from_json(loads(text), p)
    return _exponent(str(text), p)


def parse_norm(text, p):
    """'zero' for the zero norm, otherwise the exponent e of p^(-e)."""
    text = str(text).strip()
    if text == "zero":
        return NormValue.zero(p)
    return NormValue.pow(parse_exponent(text, p))


def parse_series(text, p, prec):
    """'t^(1/2) + 2*t + 1' or series JSON."""
    text = str(text).strip()
    if text.startswith("{"):
        return CharPSeries.from_json(loads(text), p)
    if text.startswith("[") and text.endswith("]"):
        text = text[1:-1]
    pairs = []
    try:
        for term in split_top(text, "+"):
            coeff = 1
            if "*" in term:
                head, term = term.split("*", 1)
                coeff = int(head)
                term = term.strip()
            if term.startswith("t"):
                rest = term[1:].strip()
                exp = _exponent(rest.lstrip("^"), p) if rest else PExponent.integer(1, p)
            else:
                coeff *= int(term)
                exp = PExponent.zero(p)
            pairs.append((exp, coeff))
    except ValueError as e:
        raise InputFormatError(f"Cannot read series {text!r}") from e
    return CharPSeries.make(p, pairs, prec)


def _untilt_factor(factor, field):
    if factor.startswith("[") and factor.endswith("]"):
        return field.sharp(parse_series(factor, field.p, field.N))
    if factor == "p":
        return field.uniformizer()
    if factor.startswith("p^"):
        return field.power(field.uniformizer(), int(factor[2:].strip("()")))
    try:
        return field.from_int(int(factor))
    except ValueError as e:
        raise InputFormatError(f"Cannot read untilt factor {factor!r}") from e


def parse_coefficient(text, field):
    """A coefficient of the field: tilt series text, or sums of products of ints, p^k and [series]."""
    text = str(text).strip()
    if field.side == "charp":
        return parse_series(text, field.p, field.prec)
    if text.startswith("{"):
        return UntiltElement.from_json(loads(text), field.p)
    total = field.zero()
    for term in split_top(text, "+"):
        value = field.one()
        for factor in split_top(term, "*"):
            value = field.mul(value, _untilt_factor(factor, field))
        total = field.add(total, value)
    return total


def parse_gauss(text, field, d=None):
    """'p + p^2*X', 't*X1^(1/2)*X2' or Gauss element JSON; T and X name the first variable."""
    text = str(text).strip()
    if text.startswith("{"):
        return GaussElement.from_json(loads(text), field)
    terms = []
    for term in split_top(text, "+"):
        exps = {}
        coefficient = []
        for factor in split_top(term, "*"):
            match = VARIABLE.match(factor)
            if match:
                index = int(match.group(2) or 1) - 1
                exp = _exponent(match.group(3), field.p) if match.group(3) else PExponent.integer(1, field.p)
                exps[index] = exps.get(index, PExponent.zero(field.p)) + exp
            else:
                coefficient.append(factor)
        coeff = parse_coefficient("*".join(coefficient), field) if coefficient else field.one()
        terms.append((exps, coeff))
    width = d if d is not None else max([i + 1 for exps, _ in terms for i in exps] or [1])
    pairs = []
    for exps, coeff in terms:
        if any(i >= width for i in exps):
            raise InputFormatError(f"Variable index beyond d={width} in {text!r}")
        pairs.append((tuple(exps.get(i, PExponent.zero(field.p)) for i in range(width)), coeff))
    return GaussElement.make(field, width, pairs)


def parse_list(text):
    return [part.strip() for part in str(text).split(";") if part.strip()]
