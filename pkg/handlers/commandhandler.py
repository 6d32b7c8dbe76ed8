import functools
import logging

import click

from charp import cps_norm, cps_pow, frobenius, pth_root
from gauss import (CharPField, CoefficientRing, DualNumbers, EvalPoint, GaussRadius, GaussRing, UntiltField,
                   cauchy_gap_demo, descriptor_from_json, gauss_eval, is_power_bounded, ring_from_name, spectral_seminorm)
from helpers.criteria import Criteria
from helpers.parsing import parse_coefficient, parse_gauss, parse_list, parse_norm, parse_series
from spectra import (CandidatePrime, ProductOfFields, is_topological_zero_divisor, point_from_text, quotient_by,
                     shilov_bruteforce, topspec_enumerate, topspec_zar_compare)
from tilt import (MonomialIdeal, TiltSequence, approx_construct, approx_verify, check_disjunction, ideal_sharp,
                  ideal_tilt, radius_grid, spectral_radical, tilt_add_limit)
from untilt import digit0, sharp, untilt_norm, untilt_pow
from utils import config, dumps, loads
from utils.errors import InputFormatError, WorkbenchError
from utils.settings import get_settings, load_config, set_settings
from values import format_norm, norm_nth_root
from witt import build_witt_polys
from zariski import ZarFraction, invert_one_plus, is_zariskian_sample, zar_norm

from .reporthandler import FORMATS, emit_report

logger = logging.getLogger('perfectoid.handlers.commandhandler')
logger.setLevel(logging.DEBUG)


def handle_errors(command):
    """Domain errors become a JSON error object on stdout and exit status 1."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except WorkbenchError as e:
            logger.exception(f"Command failed: {e.message}", exc_info=e)
            click.echo(dumps(e.to_json()))
            click.get_current_context().exit(1)
    return wrapper


def emit(payload):
    click.echo(emit_report(payload, get_settings().output_format), nl=False)


def _field(side):
    settings = get_settings()
    if side == "charp":
        return CharPField(settings.p, settings.t_prec())
    return UntiltField(settings.p, settings.witt_length, settings.t_prec())


def _series(text):
    settings = get_settings()
    return parse_series(text, settings.p, settings.t_prec())


def _c_value(text):
    return parse_norm(text, get_settings().p) if text is not None else None


def _ring(name, side, d=1, c=None, k=2):
    field = _field(side)
    if name == "product":
        return ProductOfFields(field, k)
    if name == "coefficient":
        return CoefficientRing(field)
    if name == "quotient":
        return quotient_by(ring_from_name("gauss", field, d))
    return ring_from_name(name, field, d, _c_value(c))


def _dual_element(ring, text):
    """a + b*eps from text; eps^k vanishes for k >= 2."""
    f = parse_gauss(text.replace("eps", "X"), ring.field, d=1)
    a, b = ring.field.zero(), ring.field.zero()
    for (e,), coeff in f.terms:
        if e == 0:
            a = ring.field.add(a, coeff)
        elif e == 1:
            b = ring.field.add(b, coeff)
        elif not e.is_integer():
            raise InputFormatError(f"eps has integer exponents only, got eps^{e}")
    return ring.element(a, b)


def _element(ring, text):
    text = str(text).strip()
    if isinstance(ring, ProductOfFields):
        if text.startswith("{") or text.startswith("[{"):
            return ring.element_from_json(loads(text))
        return ring.element([_series(part) for part in parse_list(text)])
    if isinstance(ring, DualNumbers):
        if text.startswith("{"):
            return ring.element_from_json(loads(text))
        return _dual_element(ring, text)
    element = parse_gauss(text, ring.field, d=getattr(ring, "d", 1))
    return ring.reduce(element) if hasattr(ring, "reduce") else element


@click.group()
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
              help="Configuration file (ini, or JSON with a .json suffix).")
@click.option("--p", "p", type=int, help="The prime.")
@click.option("--n", "witt_length", type=int, help="Witt vector length (p-adic precision).")
@click.option("--N", "t_precision", type=str, help="t-adic precision, e.g. 8 or 17/2.")
@click.option("--term-cap", "term_cap", type=int)
@click.option("--max-spectral-n", "max_spectral_n", type=int)
@click.option("--witt-cache-dir", "--witt-cache", "witt_cache_dir", type=str,
              help="Witt polynomial cache directory.")
@click.option("--format", "output_format", type=click.Choice(FORMATS))
@click.option("--seed", "seed", type=int)
@click.pass_context
def cli(ctx, config_file, **overrides):
    """Finite-precision workbench for perfectoid tilting."""
    try:
        settings = load_config(config, config_file, **overrides)
    except WorkbenchError as e:
        logger.error(e.message)
        click.echo(dumps(e.to_json()))
        ctx.exit(1)
    ctx.obj = set_settings(settings)


# values


@cli.group()
def values():
    """Exponents in Z[1/p] and norm values."""


@values.command("norm")
@click.argument("exponent")
@handle_errors
def values_norm(exponent):
    """The norm p^(-exponent); 'zero' for 0."""
    value = parse_norm(exponent, get_settings().p)
    emit({"norm": format_norm(value), "value": value.to_json()})


@values.command("root")
@click.argument("exponent")
@click.option("--k", type=click.IntRange(min=1), required=True)
@handle_errors
def values_root(exponent, k):
    """The k-th root of p^(-exponent), inexact when it leaves the value group."""
    value = norm_nth_root(parse_norm(exponent, get_settings().p), k)
    emit({"norm": format_norm(value), "in_value_group": value.in_value_group, "value": value.to_json()})


# charp


@cli.command("charp")
@click.argument("op", type=click.Choice(["add", "sub", "mul", "neg", "pow", "frobenius", "pth-root", "norm"]))
@click.argument("f")
@click.argument("g", required=False)
@click.option("--m", type=click.IntRange(min=0), default=2, show_default=True, help="Exponent for pow.")
@handle_errors
def charp_op(op, f, g, m):
    """Arithmetic on truncated series of F_p((t^(1/p^oo)))."""
    x = _series(f)
    if op in ("add", "sub", "mul"):
        if g is None:
            raise click.UsageError(f"{op} takes two series")
        y = _series(g)
        result = {"add": x + y, "sub": x - y, "mul": x * y}[op]
    elif op == "neg":
        result = -x
    elif op == "pow":
        result = cps_pow(x, m)
    elif op == "frobenius":
        result = frobenius(x)
    elif op == "pth-root":
        result = pth_root(x)
    else:
        emit({"norm": format_norm(cps_norm(x, allow_below_precision=True))})
        return
    emit({"result": str(result), "series": result.to_json(),
          "norm": format_norm(cps_norm(result, allow_below_precision=True))})


# witt


def _poly_text(poly, names):
    def monomial(monom):
        factors = []
        for var, e in enumerate(monom):
            if e:
                factors.append(names[var] if e == 1 else f"{names[var]}^{e}")
        return "*".join(factors) or "1"

    ordered = sorted(poly, key=lambda term: (sum(term[0]), tuple(-e for e in term[0])))
    text = ""
    for monom, coeff in ordered:
        body = monomial(monom)
        size = abs(coeff)
        piece = body if size == 1 else (str(size) if body == "1" else f"{size}*{body}")
        if not text:
            text = piece if coeff > 0 else f"-{piece}"
        else:
            text += f" + {piece}" if coeff > 0 else f" - {piece}"
    return text or "0"


@cli.group()
def witt():
    """Universal Witt polynomials."""


@witt.command("polys")
@click.option("--p", "p", type=int, help="Defaults to the configured prime.")
@click.option("--n", "n", type=int, help="Defaults to the configured Witt length.")
@handle_errors
def witt_polys(p, n):
    """Sum, product and Frobenius polynomials, solved from the ghost equations."""
    settings = get_settings()
    p = p or settings.p
    n = n or settings.witt_length
    cache = build_witt_polys(p, n)
    xy = [f"X{i}" for i in range(n)] + [f"Y{i}" for i in range(n)]
    xs = [f"X{i}" for i in range(n + 1)]
    emit({
        "p": p,
        "n": n,
        "S": [_poly_text(poly, xy) for poly in cache.sum_polys],
        "P": [_poly_text(poly, xy) for poly in cache.prod_polys],
        "F": [_poly_text(poly, xs) for poly in cache.frob_polys],
        "terms": cache.to_json()["polys"],
    })


# untilt


@cli.group()
def untilt():
    """The untilt model W_n(O_F / t^N) / ([t] - p)."""


@untilt.command("sharp")
@click.argument("f")
@handle_errors
def untilt_sharp(f):
    """f^# for a tilt series f."""
    settings = get_settings()
    x = sharp(_series(f), settings.witt_length, settings.t_prec())
    emit({"element": x.to_json(), "text": str(x), "norm": format_norm(untilt_norm(x))})


@untilt.command("op")
@click.argument("op", type=click.Choice(["add", "sub", "mul", "neg", "pow", "norm", "digit0"]))
@click.argument("x")
@click.argument("y", required=False)
@click.option("--m", type=click.IntRange(min=0), default=2, show_default=True, help="Exponent for pow.")
@handle_errors
def untilt_op(op, x, y, m):
    """Arithmetic on untilt elements given as sums of products of ints, p^k and [series]."""
    field = _field("untilt")
    a = parse_coefficient(x, field)
    if op in ("add", "sub", "mul"):
        if y is None:
            raise click.UsageError(f"{op} takes two elements")
        b = parse_coefficient(y, field)
        result = {"add": a + b, "sub": a - b, "mul": a * b}[op]
    elif op == "neg":
        result = -a
    elif op == "pow":
        result = untilt_pow(a, m)
    elif op == "digit0":
        emit({"digit0": str(digit0(a)), "series": digit0(a).to_json()})
        return
    else:
        result = a
    emit({"element": result.to_json(), "text": str(result), "norm": format_norm(untilt_norm(result))})


# gauss


@cli.group()
def gauss():
    """Gauss algebras, their seminorms and the spectral seminorm."""


def _descriptor(descriptor, radius, point, side):
    p = get_settings().p
    if descriptor:
        return descriptor_from_json(loads(descriptor), p)
    if point is not None:
        return EvalPoint(tuple(_series(c) for c in parse_list(point)), side)
    radii = parse_list(radius) if radius is not None else ["0"]
    return GaussRadius(tuple(parse_norm(r, p) for r in radii), side)


@gauss.command("eval")
@click.argument("f")
@click.option("--side", type=click.Choice(["untilt", "charp"]), default="untilt", show_default=True)
@click.option("--radius", help="Radius exponents e (r = p^-e), ';'-separated per variable.")
@click.option("--point", help="Tilt coordinates of an evaluation point, ';'-separated.")
@click.option("--descriptor", help="Seminorm descriptor JSON.")
@handle_errors
def gauss_eval_command(f, side, radius, point, descriptor):
    """phi(f) for a Gauss radius, an evaluation point or a descriptor."""
    field = _field(side)
    element = parse_gauss(f, field)
    phi = _descriptor(descriptor, radius, point, side)
    value = gauss_eval(phi, element)
    emit({"descriptor": phi.label(), "value": format_norm(value)})


@gauss.command("spectral")
@click.argument("f")
@click.option("--ring", "ring_name", type=click.Choice(["gauss", "dual-numbers", "poly-gauss-c"]), default="gauss",
              show_default=True)
@click.option("--side", type=click.Choice(["untilt", "charp"]), default="charp", show_default=True)
@click.option("--c", "c", help="Exponent of c for poly-gauss-c.")
@click.option("--max-n", "max_n", type=click.IntRange(min=1))
@handle_errors
def gauss_spectral(f, ring_name, side, c, max_n):
    """min_n ||f^n||^(1/n) with its certificate."""
    ring = _ring(ring_name, side, c=c)
    result = spectral_seminorm(_element(ring, f), ring, max_n)
    emit(dict(result.to_json(), ring=ring.describe()))


@gauss.command("power-bounded")
@click.argument("f")
@click.option("--ring", "ring_name", type=click.Choice(["gauss", "dual-numbers", "poly-gauss-c"]), default="gauss",
              show_default=True)
@click.option("--side", type=click.Choice(["untilt", "charp"]), default="charp", show_default=True)
@click.option("--c", "c")
@click.option("--heuristic", is_flag=True, help="Allow a heuristic answer on rings whose norm is not power-multiplicative.")
@handle_errors
def gauss_power_bounded(f, ring_name, side, c, heuristic):
    """Is f power-bounded (|f|_spc <= 1)?"""
    ring = _ring(ring_name, side, c=c)
    emit({"ring": ring.describe(), "power_bounded": is_power_bounded(_element(ring, f), ring, heuristic),
          "heuristic": not ring.power_multiplicative})


@gauss.command("cauchy")
@click.option("--m-max", "m_max", type=click.IntRange(min=1), default=6, show_default=True)
@handle_errors
def gauss_cauchy(m_max):
    """Gauss-norm gaps of a Cauchy sequence in the uncompleted algebra."""
    emit(cauchy_gap_demo(m_max).to_json())


# tilt


@cli.group()
def tilt():
    """Tilting of elements, ideals and seminorms."""


@tilt.command("add-limit")
@click.argument("f")
@click.argument("g")
@click.option("--n", "index", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--m-max", "m_max", type=click.IntRange(min=0))
@handle_errors
def tilt_add_limit_command(f, g, index, m_max):
    """(f^(n+m) + g^(n+m))^(p^m) as m grows, against (f + g)^(n)."""
    settings = get_settings()
    m_max = settings.tilt_m_max if m_max is None else m_max
    # base series need precision N p^(n + m) for the deepest root
    prec = settings.t_prec().mul_p(index + m_max)
    p = settings.p
    report = tilt_add_limit(parse_series(f, p, prec), parse_series(g, p, prec), index, m_max)
    emit(report.to_json())


@tilt.command("sequence")
@click.argument("f")
@click.option("--m-max", "m_max", type=click.IntRange(min=0), default=3, show_default=True)
@handle_errors
def tilt_sequence(f, m_max):
    """The compatible sequence f^(m) with its Frobenius and norm checks."""
    settings = get_settings()
    base = parse_series(f, settings.p, settings.t_prec().mul_p(m_max))
    sequence = TiltSequence.of(base)
    check = sequence.verify(m_max)
    emit(dict(check.to_json(), terms=[str(term) for term in sequence.terms(m_max)]))


@tilt.command("ideal")
@click.option("--op", type=click.Choice(["flat", "sharp", "spectral-radical"]), required=True)
@click.option("--ideal", "ideal_text", required=True, help="Ideal JSON.")
@click.option("--side", type=click.Choice(["untilt", "tilt"]), help="Side of the input ideal.")
@click.option("--d", type=click.IntRange(min=1), default=1, show_default=True)
@handle_errors
def tilt_ideal(op, ideal_text, side, d):
    """I -> I_flat, J -> J^#, or the spectral radical of a monomial ideal."""
    default_side = {"flat": "untilt", "sharp": "tilt", "spectral-radical": "untilt"}[op]
    ideal = MonomialIdeal.from_json(loads(ideal_text), get_settings().p, side or default_side, d)
    result = {"flat": ideal_tilt, "sharp": ideal_sharp, "spectral-radical": spectral_radical}[op](ideal)
    emit(result.to_json())


@tilt.command("approx")
@click.argument("f")
@click.option("--eps", required=True, help="Exponent e of eps = p^-e, or 'zero'.")
@handle_errors
def tilt_approx(f, eps):
    """A tilt-side g with phi_r(f) = phi_r(g^#) or both below eps, on the radius grid."""
    field = _field("untilt")
    element = parse_gauss(f, field)
    bound = parse_norm(eps, field.p)
    g = approx_construct(element, bound)
    report = check_disjunction(element, g, bound, radius_grid(field.p, element.d))
    emit({"g": g.to_json(), "g_text": str(g), "disjunction": report.to_json()})


@tilt.command("verify")
@click.argument("f")
@click.argument("g")
@click.option("--eps", required=True, help="Exponent e of eps = p^-e, or 'zero'.")
@handle_errors
def tilt_verify(f, g, eps):
    """phi(f - g^#) <= p^-1 max(phi(g^#), eps), for a given g."""
    field = _field("untilt")
    bound = parse_norm(eps, field.p)
    if any(name in f for name in ("X", "T")):
        x = parse_gauss(f, field)
        y = parse_gauss(g, _field("charp"), d=x.d)
    else:
        x = parse_coefficient(f, field)
        y = _series(g)
    emit(approx_verify(x, y, bound).to_json())


# zariski


def _zariski_ring(ring_name, c):
    return _ring(ring_name, "charp", c=c)


@cli.group()
def zariski():
    """Inversion of 1 + x and Zariskisation fractions."""


@zariski.command("invert")
@click.argument("x")
@click.option("--ring", "ring_name", type=click.Choice(["coefficient", "poly-gauss-c", "gauss"]),
              default="coefficient", show_default=True)
@click.option("--c", "c")
@click.option("--term-max", "term_max", type=click.IntRange(min=1))
@click.option("--prec", "prec", help="Target exponent e: stop once the residual is <= p^-e.")
@handle_errors
def zariski_invert(x, ring_name, c, term_max, prec):
    """Partial sums of 1/(1 + x)."""
    ring = _zariski_ring(ring_name, c)
    target = parse_norm(prec, ring.p) if prec is not None else None
    emit(dict(invert_one_plus(_element(ring, x), ring, term_max, target).to_json(), ring=ring.describe()))


@zariski.command("check")
@click.option("--samples", required=True, help="';'-separated elements.")
@click.option("--ring", "ring_name", type=click.Choice(["coefficient", "poly-gauss-c", "gauss"]),
              default="coefficient", show_default=True)
@click.option("--c", "c")
@click.option("--term-max", "term_max", type=click.IntRange(min=1))
@handle_errors
def zariski_check(samples, ring_name, c, term_max):
    """Search for an x with ||x|| < 1 whose 1 + x has no inverse."""
    ring = _zariski_ring(ring_name, c)
    elements = [_element(ring, text) for text in parse_list(samples)]
    emit(is_zariskian_sample(ring, elements, term_max).to_json())


@zariski.command("norm")
@click.argument("numerator")
@click.argument("denominator")
@click.option("--ring", "ring_name", type=click.Choice(["coefficient", "poly-gauss-c", "gauss"]),
              default="poly-gauss-c", show_default=True)
@click.option("--c", "c")
@handle_errors
def zariski_norm(numerator, denominator, ring_name, c):
    """||a / s|| in A^Zar."""
    ring = _zariski_ring(ring_name, c)
    fraction = ZarFraction.make(ring, _element(ring, numerator), _element(ring, denominator))
    emit({"fraction": fraction.to_json(), "norm": format_norm(zar_norm(fraction))})


# spectra


@cli.group()
def spectra():
    """Toy Berkovich and topological spectra."""


def _spectra_ring(ring_name, c, k, d):
    return _ring(ring_name, "charp", d=d, c=c, k=k)


@spectra.command("shilov")
@click.option("--ring", "ring_name", type=click.Choice(["product", "gauss", "poly-gauss-c", "quotient"]),
              default="product", show_default=True)
@click.option("--c", "c")
@click.option("--k", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--d", type=click.IntRange(min=1), default=1, show_default=True)
@handle_errors
def spectra_shilov(ring_name, c, k, d):
    """Minimal boundaries of the declared seminorm family."""
    ring = _spectra_ring(ring_name, c, k, d)
    emit(dict(shilov_bruteforce(ring).to_json(), ring=ring.describe()))


@spectra.command("tdz")
@click.argument("f")
@click.option("--ring", "ring_name", type=click.Choice(["product", "gauss", "poly-gauss-c", "quotient"]),
              default="product", show_default=True)
@click.option("--c", "c")
@click.option("--k", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--budget", type=click.IntRange(min=1), default=16, show_default=True)
@handle_errors
def spectra_tdz(f, ring_name, c, k, budget):
    """Topological zero divisor: direct witness search against the boundary criterion."""
    ring = _spectra_ring(ring_name, c, k, 1)
    emit(is_topological_zero_divisor(ring, _element(ring, f), budget).to_json())


def _candidates(ring, text):
    if text is None:
        return None
    settings = get_settings()
    prec = settings.t_prec()
    if text.strip().startswith("["):
        return [CandidatePrime.from_json(payload, ring.p, prec) for payload in loads(text)]
    var = "X" if isinstance(ring, GaussRing) else "T"
    return [CandidatePrime.linear(point_from_text(part, ring.p, prec), var) for part in parse_list(text)]


@spectra.command("topspec")
@click.option("--ring", "ring_name", type=click.Choice(["product", "gauss", "poly-gauss-c", "quotient"]),
              default="poly-gauss-c", show_default=True)
@click.option("--c", "c")
@click.option("--k", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--candidates", help="';'-separated points lambda for (T - lambda), or candidate JSON list.")
@handle_errors
def spectra_topspec(ring_name, c, k, candidates):
    """Which candidate primes are kernels of bounded seminorms."""
    ring = _spectra_ring(ring_name, c, k, 1)
    emit(topspec_enumerate(ring, _candidates(ring, candidates)).to_json())


@spectra.command("compare-zar")
@click.option("--c", "c")
@click.option("--candidates", help="';'-separated points lambda for (T - lambda), or candidate JSON list.")
@handle_errors
def spectra_compare_zar(c, candidates):
    """Extend candidates to the Zariskisation and contract them back."""
    ring = _spectra_ring("poly-gauss-c", c, 2, 1)
    rows = topspec_zar_compare(ring, _candidates(ring, candidates))
    emit({"ring": ring.describe(), "rows": [row.to_json() for row in rows]})


# selftest


@cli.command("selftest")
@click.option("--criteria", "criteria_file", type=click.Path(exists=True, dir_okay=False),
              help="YAML list of criteria to run.")
@handle_errors
def selftest(criteria_file):
    """Run the acceptance suite; exit 1 when a criterion fails."""
    summary = Criteria(criteria_file=criteria_file).summary()
    emit(summary)
    if not summary["passed"]:
        click.get_current_context().exit(1)
