import logging
from dataclasses import dataclass, field
from typing import Any, Dict

from charp import CharPSeries, cps_norm
from gauss import (CharPField, CoefficientRing, DualNumbers, EvalPoint, GaussRing, PolyGaussCRing, UntiltField,
                   gauss_eval, spectral_seminorm)
from spectra import (IN, OUT, CandidatePrime, ProductOfFields, berkovich_points, is_topological_zero_divisor,
                     point_from_text, quasi_compact_check, quotient_by, shilov_bruteforce, sobriety_check,
                     topspec_enumerate, topspec_zar_compare)
from tilt import (MonomialIdeal, approx_construct, approx_verify, check_disjunction, ideal_sharp, ideal_tilt,
                  radius_grid, spectral_radical, tilt_add_limit)
from untilt import sharp, untilt_add, untilt_from_int, untilt_mul, untilt_norm
from utils import dumps
from utils.errors import WorkbenchError
from utils.settings import get_settings
from values import NormValue, PExponent, norm_mul
from witt import build_witt_polys, teichmuller, verify_ghost_identities, witt_mul
from zariski import DIVERGED_SUPPORT, ZarFraction, invert_one_plus, zar_norm

from .parsing import parse_series
from .samples import Samples

logger = logging.getLogger('perfectoid.helpers.checks')
logger.setLevel(logging.DEBUG)


@dataclass
class CheckResult:
    criterion: str
    name: str
    passed: bool
    details: Dict[str, Any] = field(default_factory=dict)

    def to_json(self):
        return {"criterion": self.criterion, "name": self.name, "passed": self.passed, "details": self.details}


class Checks:
    """The acceptance suite; every check is exact and seeded from the active settings."""

    def __init__(self, settings=None):
        self.settings = settings or get_settings()
        self.p = self.settings.p
        self.n = self.settings.witt_length
        self.N = self.settings.t_prec()

    def samples(self, p=None, salt=0):
        return Samples(self.settings.seed + salt, p or self.p)

    def _precision_for(self, p):
        """t-precision giving full p-adic precision n at this prime."""
        return max(self.N if p == self.p else PExponent.integer(self.N.ceil(), p),
                   PExponent.integer(p ** (self.n - 1), p))

    def witt_layer(self, primes=(2, 3), pairs=100):
        details = {}
        s1 = dict(build_witt_polys(2, 2).sum_polys[1])
        details["S_1(p=2)"] = s1 == {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): -1}
        for p in primes:
            for n in range(1, min(self.n, 3) + 1):
                details[f"ghost(p={p},n={n})"] = verify_ghost_identities(build_witt_polys(p, n))
        multiplicative = True
        for index in range(pairs):
            p = primes[index % len(primes)]
            prec = self._precision_for(p)
            samples = self.samples(p, salt=index)
            a, b = samples.series(prec), samples.series(prec)
            product = witt_mul(teichmuller(a, self.n, prec), teichmuller(b, self.n, prec))
            expected = teichmuller((a * b).truncate(prec), self.n, prec)
            multiplicative = multiplicative and all(x.agrees_with(y) for x, y in
                                                    zip(product.components, expected.components))
        details["teichmuller_multiplicative"] = multiplicative
        return all(details.values()), details

    def untilt_model(self, count=100):
        p, n, N = self.p, self.n, self.N
        details = {}
        t = CharPSeries.t(p, N)
        details["sharp(t)=p"] = sharp(t, n, N).agrees_with(untilt_from_int(p, p, n, N))
        samples = self.samples()
        norm_identity = True
        lambda_formula = True
        for _ in range(count):
            f = samples.series(N, upper=n - 1 if n > 1 else 1)
            image = sharp(f, n, N)
            norm_identity = norm_identity and untilt_norm(image).exact() == cps_norm(f)
            v = min(d.valuation() + i for i, d in enumerate(image.digits) if not d.is_zero())
            lambda_formula = lambda_formula and untilt_norm(image) == NormValue.pow(v)
        details["norm_identity"] = norm_identity
        details["lambda_formula"] = lambda_formula
        multiplicative, compared = True, 0
        for _ in range(count):
            x, y = samples.untilt(n, N), samples.untilt(n, N)
            z = untilt_mul(x, y)
            vx, vy, vz = x.valuation(), y.valuation(), z.valuation()
            if vx is None or vy is None or not vx + vy < z.abs_precision():
                continue
            compared += 1
            multiplicative = multiplicative and vz is not None and \
                untilt_norm(z) == norm_mul(untilt_norm(x), untilt_norm(y))
        details["multiplicative"] = multiplicative
        details["multiplicative_pairs"] = compared
        return norm_identity and lambda_formula and multiplicative and details["sharp(t)=p"], details

    def tilt_addition(self, count=50, primes=(2, 3)):
        n = self.n
        details = {}
        m_max = n
        N = self._precision_for(2)
        t = CharPSeries.t(2, N.mul_p(m_max))
        report = tilt_add_limit(t, t, 0, m_max=m_max, witt_n=n, N=N)
        details["t+t"] = {"stable_zero": report.stable_value is not None and report.stable_value.is_zero(),
                          "stabilized_at": report.stabilized_at}
        ok = details["t+t"]["stable_zero"] and report.stabilized_at <= n
        matches = 0
        for index in range(count):
            p = primes[index % len(primes)]
            N = self._precision_for(p)
            samples = self.samples(p, salt=1000 + index)
            f = samples.series(N.mul_p(m_max), terms=2, upper=1)
            g = samples.series(N.mul_p(m_max), terms=2, upper=1)
            result = tilt_add_limit(f, g, 0, m_max=m_max, witt_n=n, N=N)
            matches += int(result.matches)
        details["random_matches"] = f"{matches}/{count}"
        return ok and matches == count, details

    def ideal_bijection(self):
        details = {}
        x_ideal = MonomialIdeal.principal("untilt", PExponent.integer(1, self.p))
        details["(X)_flat=(0)"] = ideal_tilt(x_ideal) == MonomialIdeal.zero("tilt")
        details["m_X_flat"] = ideal_tilt(MonomialIdeal.augmentation("untilt")) == MonomialIdeal.augmentation("tilt")
        lattice = []
        for d in (1, 2):
            lattice.append(MonomialIdeal.zero("untilt", d))
            for variables in ([0], [1], [0, 1])[: 1 if d == 1 else 3]:
                lattice.append(MonomialIdeal.augmentation("untilt", d, variables))
        round_trips = all(ideal_sharp(ideal_tilt(i)) == i and ideal_tilt(ideal_sharp(ideal_tilt(i))) == ideal_tilt(i)
                          for i in lattice)
        details["round_trips"] = round_trips
        inclusion = True
        for a in lattice:
            for b in lattice:
                if a.d == b.d:
                    inclusion = inclusion and (a <= b) == (ideal_tilt(a) <= ideal_tilt(b))
        details["inclusion_preserved"] = inclusion
        return all(details.values()), details

    def spectral_radical_check(self, count=100):
        p = self.p
        details = {}
        m_x = MonomialIdeal.augmentation("tilt")
        for text in ("1", "2", f"1/{p}"):
            details[f"rad((X^{text}))"] = spectral_radical(
                MonomialIdeal.principal("tilt", PExponent.parse(text, p))) == m_x
        field_ = CharPField(p, self.N)
        samples = self.samples(salt=2000)
        origin = EvalPoint.origin(p, 1, self.N)
        agree = True
        for _ in range(count):
            f = samples.gauss(field_, lambda: samples.series(self.N, terms=1, unit=True), terms=2, upper=1)
            agree = agree and m_x.contains(f) == gauss_eval(origin, f).is_zero
        details["evalpoint_kernel_agrees"] = agree
        return all(details.values()), details

    def spectral_engine(self, count=100, max_n=8):
        p = self.p
        details = {}
        field_ = CharPField(p, self.N)
        dual = DualNumbers(field_)
        eps = spectral_seminorm(dual.epsilon(), dual, max_n)
        details["dual_eps"] = eps.bound.is_zero and eps.attained_at == 2
        ring = GaussRing(field_, 1)
        samples = self.samples(salt=3000)
        equal, monotone = True, _monotone(eps)
        for _ in range(count):
            f = samples.gauss(field_, lambda: samples.series(self.N, terms=1), terms=2, upper=1)
            if f.is_zero():
                continue
            result = spectral_seminorm(f, ring, max_n)
            norm = ring.norm(f)
            equal = equal and result.bound.same_value(norm) and result.attained_at == 1
            monotone = monotone and _monotone(result)
        details["gauss_bound_is_norm"] = equal
        details["certificate_monotone"] = monotone
        return all(details.values()), details

    def approximation(self, count=50):
        p, n, N = self.p, self.n, self.N
        details = {}
        field_ = UntiltField(p, n, N)
        samples = self.samples(salt=4000)
        holds, total = 0, 0
        eps_values = [NormValue.of(k, p) for k in (0, 1, 3)]
        grid = radius_grid(p, 1)
        for _ in range(count):
            f = samples.gauss(field_, lambda: samples.untilt(n, N), terms=3, upper=1)
            for eps in eps_values:
                g = approx_construct(f, eps)
                holds += int(check_disjunction(f, g, eps, grid).holds)
                total += 1
        details["disjunction"] = f"{holds}/{total}"
        t = CharPSeries.t(p, N)
        one = CharPSeries.one(p, N)
        fixtures = [
            (sharp(t, n, N), t, NormValue.one(p)),
            (untilt_add(sharp(t, n, N), untilt_mul(untilt_from_int(p, p, n, N), sharp(one, n, N))), t,
             NormValue.one(p)),
            (untilt_from_int(p, p, n, N), t, NormValue.of(2, p)),
        ]
        details["fixtures"] = [approx_verify(f, g, eps).passes for f, g, eps in fixtures]
        return holds == total and all(details["fixtures"]), details

    def zariskian(self):
        p, n, N = self.p, self.n, self.N
        details = {}
        field_ = CharPField(p, N)
        ring = CoefficientRing(field_)
        target = NormValue.of(n, p)
        converged = []
        for text in ("t", "t^2", f"t + t^({p + 1}/{p})"):
            x = ring.constant(parse_series(text, p, N))
            result = invert_one_plus(x, ring, term_max=n, target=target)
            converged.append(result.converged and result.residual <= target)
        details["field_converges"] = converged
        c = NormValue.of(1, p)
        poly = PolyGaussCRing(field_, c)
        T = poly.variable()
        details["K[T]_diverges"] = invert_one_plus(T, poly).status == DIVERGED_SUPPORT
        fraction = ZarFraction.make(poly, T, poly.add(poly.one(), T))
        details["zar_norm(T/(1+T))=c"] = zar_norm(fraction) == c
        return all(converged) and details["K[T]_diverges"] and details["zar_norm(T/(1+T))=c"], details

    def spectra_toys(self, count=20):
        p, N = self.p, self.N
        details = {}
        field_ = CharPField(p, N)
        k2 = ProductOfFields(field_, 2)
        report = shilov_bruteforce(k2, [k2.element([1, 0]), k2.element([0, 1]), k2.element([1, 1])])
        details["K2_shilov"] = report.unique and report.boundary() == (0, 1)
        samples = self.samples(salt=5000)
        values = [0, 1, CharPSeries.t(p, N), CharPSeries.make(p, [(PExponent.zero(p), 1), (PExponent.integer(1, p), 1)],
                                                               N)]
        agree = True
        for _ in range(count):
            f = k2.element([samples.choice(values), samples.choice(values)])
            agree = agree and is_topological_zero_divisor(k2, f).agree
        details["escassut_agrees"] = agree
        poly = PolyGaussCRing(field_, NormValue.of(1, p))
        candidates = [CandidatePrime.linear(point_from_text(text, p, N)) for text in ("0", "p", "1")]
        table = topspec_enumerate(poly, candidates)
        details["topspec"] = table.verdicts()
        compare = topspec_zar_compare(poly, candidates)
        details["zar_round_trip"] = all(row.contraction_recovers for row in compare if row.member)
        instances = [k2, poly, GaussRing(field_, 1), quotient_by(GaussRing(field_, 1))]
        compact, sober = True, True
        for ring in instances:
            enumerated = topspec_enumerate(ring)
            compact = compact and quasi_compact_check(ring, enumerated).consistent
            sober = sober and sobriety_check(enumerated).generic_points_unique
        details["quasi_compact"] = compact
        details["sober"] = sober
        details["families"] = {ring.describe(): len(berkovich_points(ring)) for ring in instances}
        ok = (details["K2_shilov"] and agree and details["topspec"] == [IN, IN, OUT]
              and details["zar_round_trip"] and compact and sober)
        return ok, details

    def determinism(self, runs=2):
        """Repeated runs of the seeded checks serialize to identical bytes."""
        outputs = []
        for _ in range(runs):
            outputs.append(dumps([self.ideal_bijection(), self.spectral_radical_check(20), self.spectra_toys(5)]))
        return len(set(outputs)) == 1, {"runs": runs}

    CRITERIA = {
        "witt": ("Witt layer", witt_layer),
        "untilt": ("Untilt model", untilt_model),
        "tilt-addition": ("Tilting addition", tilt_addition),
        "ideals": ("Ideal bijection", ideal_bijection),
        "spectral-radical": ("Spectral radical", spectral_radical_check),
        "spectral-engine": ("Spectral seminorm engine", spectral_engine),
        "approximation": ("Approximation", approximation),
        "zariski": ("Zariskian layer", zariskian),
        "spectra": ("Spectra toys", spectra_toys),
        "determinism": ("Determinism", determinism),
    }

    def run(self, criterion, params=None):
        name, method = self.CRITERIA[criterion]
        logger.info(f"Running criterion {criterion}.")
        try:
            passed, details = method(self, **(params or {}))
        except WorkbenchError as e:
            logger.exception(f"Criterion {criterion} raised.", exc_info=e)
            return CheckResult(criterion, name, False, e.to_json())
        return CheckResult(criterion, name, bool(passed), details)


def _monotone(result):
    certificate = result.certificate
    return all(b <= a for a, b in zip(certificate, certificate[1:]))
