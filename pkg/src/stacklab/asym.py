"""Main terms, Ingham's Tauberian transfer, and numerics near q = 1.

Main terms have the shape ``C * n**-alpha * exp(pi * sqrt(beta * n))``; behaviour
of a generating function at ``q = exp(-eps)`` has the shape
``lam * eps**alpha * exp(A / eps)``. Both grow past the range of a double long
before the interesting regime, so values travel as :class:`LogReal`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson
from scipy.special import logsumexp

from .errors import DomainError, NumericError, UsageError
from .genfun import Variant
from .series_core import PowerSeries

PHI = (1 + math.sqrt(5)) / 2
PI = math.pi
LOG_PHI = math.log(PHI)
_TINY = 1e-17


# ---------------------------------------------------------------------------
# log-space reals


@dataclass(frozen=True)
class LogReal:
    """``sign * exp(log_magnitude)``.

    Products and quotients are exact in log space. Sums use
    ``max + log1p(+-exp(min - max))``, whose relative error stays near machine
    epsilon unless the operands cancel.
    """

    sign: int
    log_magnitude: float

    @classmethod
    def zero(cls) -> "LogReal":
        return cls(0, -math.inf)

    @classmethod
    def from_float(cls, x: float) -> "LogReal":
        if x == 0:
            return cls.zero()
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @classmethod
    def from_int(cls, n: int) -> "LogReal":
        # math.log accepts arbitrarily large ints
        if n == 0:
            return cls.zero()
        return cls(1 if n > 0 else -1, math.log(abs(n)))

    def __mul__(self, other):
        other = _coerce(other)
        if self.sign == 0 or other.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log_magnitude + other.log_magnitude)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.sign == 0:
            raise ZeroDivisionError("LogReal division by zero")
        if self.sign == 0:
            return LogReal.zero()
        return LogReal(self.sign * other.sign, self.log_magnitude - other.log_magnitude)

    def __neg__(self) -> "LogReal":
        return LogReal(-self.sign, self.log_magnitude)

    def __add__(self, other):
        other = _coerce(other)
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        big, small = (self, other) if self.log_magnitude >= other.log_magnitude else (other, self)
        d = math.exp(small.log_magnitude - big.log_magnitude)
        if big.sign == small.sign:
            return LogReal(big.sign, big.log_magnitude + math.log1p(d))
        if d == 1.0:
            return LogReal.zero()
        return LogReal(big.sign, big.log_magnitude + math.log1p(-d))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __float__(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)

    def ratio(self, other: "LogReal") -> float:
        """``self / other`` as a float; safe when both are huge."""
        return float(self / other)

    def scientific(self, digits: int = 6) -> str:
        """Decimal ``m.mmmmmm e+k`` representation."""
        if self.sign == 0:
            return "0"
        l10 = self.log_magnitude / math.log(10)
        k = math.floor(l10)
        mant = 10 ** (l10 - k)
        if round(mant, digits) >= 10:
            mant /= 10
            k += 1
        s = "-" if self.sign < 0 else ""
        return f"{s}{mant:.{digits}f}e{k:+d}"


def _coerce(x) -> LogReal:
    if isinstance(x, LogReal):
        return x
    if isinstance(x, int):
        return LogReal.from_int(x)
    return LogReal.from_float(float(x))


# ---------------------------------------------------------------------------
# asymptotic shapes


@dataclass(frozen=True)
class MainTerm:
    C: float
    alpha: float
    beta: float

    def __post_init__(self):
        if self.C < 0 or self.beta < 0:
            raise DomainError("main term needs C >= 0 and beta >= 0")


@dataclass(frozen=True)
class EpsAsym:
    lam: float
    alpha: float
    A: float

    def value(self, eps: float) -> LogReal:
        return LogReal(1, math.log(self.lam) + self.alpha * math.log(eps) + self.A / eps)


_C_H = 1 / (PHI * 2 * math.sqrt(2) * 5 ** 0.75)

MAIN_TERMS: dict[Variant, MainTerm] = {
    Variant.S: MainTerm(2 ** -3 * 3 ** -0.75, 5 / 4, 4 / 3),
    Variant.SS: MainTerm(2 ** -3 * 3 ** -0.75, 5 / 4, 4 / 3),
    Variant.G: MainTerm(2 ** -3 * 3 ** -0.5, 1, 2 / 3),
    Variant.GS: MainTerm(2 ** -2 * 3 ** -0.5, 1, 2 / 3),
    Variant.P: MainTerm(2 ** -2 * 3 ** -0.5, 1, 2 / 3),
    Variant.H: MainTerm(_C_H, 1, 4 / 5),
    Variant.HS: MainTerm(PHI * _C_H, 1, 4 / 5),
    Variant.D: MainTerm(2 ** -3.25 * 3 ** -0.25, 3 / 4, 2 / 3),
    Variant.DM: MainTerm(1 / 16, 1, 1),
    Variant.FPHI: MainTerm(1 / (8 * math.sqrt(3)), 1, 2 / 3),
    Variant.F0: MainTerm(1 / (8 * math.sqrt(3)), 1, 2 / 3),
}

# Behaviour at q = exp(-eps) from which the main terms above follow by
# Ingham's theorem.
_LAM_H = 1 / (PHI * math.sqrt(2 * PI) * 5 ** 0.25)
EPS_ASYM: dict[Variant, EpsAsym] = {
    Variant.S: EpsAsym(1 / (4 * PI), 1, PI ** 2 / 3),
    Variant.SS: EpsAsym(1 / (4 * PI), 1, PI ** 2 / 3),
    Variant.P: EpsAsym(1 / math.sqrt(2 * PI), 0.5, PI ** 2 / 6),
    Variant.GS: EpsAsym(1 / math.sqrt(2 * PI), 0.5, PI ** 2 / 6),
    Variant.DM: EpsAsym(1 / (4 * math.sqrt(PI)), 0.5, PI ** 2 / 4),
    Variant.H: EpsAsym(_LAM_H, 0.5, PI ** 2 / 5),
    Variant.HS: EpsAsym(PHI * _LAM_H, 0.5, PI ** 2 / 5),
}


def main_term(v: Variant) -> MainTerm:
    try:
        return MAIN_TERMS[v]
    except KeyError:
        raise UsageError(f"no main term known for {v.value}") from None


def main_term_value(mt: MainTerm, n: int) -> LogReal:
    if n < 1:
        raise DomainError("main terms are evaluated at n >= 1")
    return LogReal(1, math.log(mt.C) - mt.alpha * math.log(n) + PI * math.sqrt(mt.beta * n))


def ingham_transfer(e: EpsAsym) -> MainTerm:
    """Coefficient main term implied by ``f(exp(-eps)) ~ lam eps^alpha exp(A/eps)``.

    Valid when the coefficients are nonnegative and weakly increasing.
    """
    if e.A <= 0:
        raise DomainError("Ingham's theorem needs A > 0")
    k = e.alpha / 2 + 0.25
    C = e.lam / (2 * math.sqrt(PI)) * e.A ** k
    return MainTerm(C, e.alpha / 2 + 0.75, 4 * e.A / PI ** 2)


def coeff_ratio(v: Variant, n: int, coeffs: PowerSeries) -> float:
    """Exact coefficient over the main term, formed in log space."""
    if n > coeffs.order:
        raise UsageError(f"coefficient {n} beyond series order {coeffs.order}")
    a = coeffs[n]
    if a <= 0:
        raise DomainError(f"coefficient {n} is {a}; ratios need a positive value")
    return LogReal.from_int(a).ratio(main_term_value(main_term(v), n))


def catalog() -> dict:
    """Machine-readable table of every main term and eps-behaviour."""
    return {
        "shape": "C * n^(-alpha) * exp(pi * sqrt(beta * n))",
        "main_terms": {
            v.value: {"C": mt.C, "alpha": mt.alpha, "beta": mt.beta}
            for v, mt in MAIN_TERMS.items()
        },
        "eps_shape": "lambda * eps^alpha * exp(A / eps) at q = exp(-eps)",
        "eps_asymptotics": {
            v.value: {"lambda": e.lam, "alpha": e.alpha, "A": e.A}
            for v, e in EPS_ASYM.items()
        },
    }


# ---------------------------------------------------------------------------
# dilogarithms


def _dilog_series(x: complex) -> complex:
    acc = 0j
    p = 1 + 0j
    for m in range(1, 10_000):
        p *= x
        term = p / (m * m)
        acc += term
        if abs(term) <= _TINY * max(abs(acc), _TINY):
            return acc
    raise NumericError(f"dilogarithm series did not converge at {x}")


def dilog(x):
    """Li2(x) = sum x^m / m^2.

    The plain series is used for ``|x| <= 1/2`` (complex allowed). Real arguments
    in ``(1/2, 1)`` and ``[-1, -1/2)`` are mapped into that disc with the
    reflection and Landen formulas.
    """
    if isinstance(x, complex):
        if abs(x) > 0.5:
            raise DomainError("complex dilog is only evaluated for |x| <= 1/2")
        return _dilog_series(x)
    x = float(x)
    if not -1 <= x < 1:
        raise DomainError("dilog is defined here on [-1, 1)")
    if abs(x) <= 0.5:
        return _dilog_series(x).real
    if x > 0:
        return PI ** 2 / 6 - math.log(x) * math.log1p(-x) - _dilog_series(1 - x).real
    y = x / (x - 1)
    return -_dilog_series(y).real - 0.5 * math.log1p(-x) ** 2


def quantum_dilog(x: complex, q: complex, tol: float = 1e-16) -> complex:
    """Li2(x; q) = -log (x; q)_inf = sum x^m / (m (1 - q^m))."""
    if abs(x) >= 1 or abs(q) >= 1:
        raise DomainError("quantum dilogarithm needs |x| < 1 and |q| < 1")
    real_q = isinstance(q, float) or (isinstance(q, complex) and q.imag == 0 and q.real > 0)
    log_q = math.log(q.real if isinstance(q, complex) else q) if real_q else None
    acc = 0j
    p = 1 + 0j
    for m in range(1, 1_000_000):
        p *= x
        denom = -math.expm1(m * log_q) if real_q else 1 - q ** m
        term = p / (m * denom)
        acc += term
        if abs(term) <= tol * max(abs(acc), _TINY):
            return acc
        if abs(p) < 1e-300:
            return acc
    raise NumericError("quantum dilogarithm did not converge")


def _qdilog_eps(y: np.ndarray, eps2: float) -> np.ndarray:
    """Li2(y; exp(-eps2)) for an array of |y| < 1, summed until negligible."""
    r = float(np.max(np.abs(y)))
    if r >= 1:
        raise DomainError("quantum dilogarithm needs |y| < 1")
    acc = np.zeros_like(y, dtype=complex)
    p = np.ones_like(y, dtype=complex)
    m = 0
    while True:
        m += 1
        p = p * y
        acc += p / (m * -math.expm1(-m * eps2))
        if r ** m / (m * -math.expm1(-m * eps2)) < _TINY * max(float(np.min(np.abs(acc))), _TINY):
            return acc


# ---------------------------------------------------------------------------
# generating functions at q = exp(-eps)


def _log_qpoch_inf(eps: float, step: int = 1, start: int | None = None) -> float:
    """log (q^start; q^step)_inf at q = exp(-eps) (start defaults to step)."""
    start = step if start is None else start
    jmax = int(math.ceil(45 / (eps * step))) + 2
    j = start + step * np.arange(jmax)
    return math.fsum(np.log1p(-np.exp(-eps * j)))


def _false_theta(eps: float) -> float:
    terms = []
    n = 1
    while True:
        e = n * (n + 1) / 2 * eps
        if e > 45:
            break
        terms.append((1 if n % 2 else -1) * math.exp(-e))
        n += 1
    return math.fsum(terms)


def _log_terms_stack(eps: float, exponent, summits: bool, mmax: int) -> np.ndarray:
    m = np.arange(mmax + 1, dtype=float)
    lg = np.zeros(mmax + 1)
    lg[1:] = np.cumsum(np.log1p(-np.exp(-eps * m[1:])))  # log (q)_m
    e = exponent(m)
    if summits:
        return -eps * e - 2 * lg
    out = -eps * e[1:] - lg[:-1] - lg[1:]
    return out


def _sum_log_terms(make_terms, mmax: int = 256) -> float:
    """logsumexp of a positive series, extending the index range until the tail is negligible."""
    while True:
        logs = make_terms(mmax)
        top = float(np.max(logs))
        tail = logs[-8:]
        if np.all(np.diff(tail) < 0) and tail[-1] < top - 45:
            return float(logsumexp(logs))
        mmax *= 2
        if mmax > 50_000_000:
            raise NumericError("series at q = exp(-eps) did not settle")


_EXPONENTS = {
    Variant.G: lambda m: m * m,
    Variant.GS: lambda m: m * m,
    Variant.H: lambda m: m * (m + 1) / 2,
    Variant.HS: lambda m: m * (m + 1) / 2,
    Variant.FPHI: lambda m: m * m + m,
}


def eval_genfun(v: Variant, eps: float) -> LogReal:
    """Value of the generating function of ``v`` at ``q = exp(-eps)``."""
    if not 0 < eps <= 1:
        raise DomainError("eps must lie in (0, 1]")
    if v is Variant.L:
        return LogReal.from_float(_false_theta(eps))
    if v is Variant.P:
        return LogReal(1, -_log_qpoch_inf(eps))
    if v in (Variant.S, Variant.SS):
        lq = _false_theta(eps)
        num = lq if v is Variant.S else 1 - lq
        body = LogReal(1, math.log(num) - 2 * _log_qpoch_inf(eps))
        # the product form for S misses the empty stack, s(0) = 1
        return body + LogReal(1, 0.0) if v is Variant.S else body
    if v is Variant.DM:
        log_val = (-eps + _log_qpoch_inf(eps, 2) - math.log1p(math.exp(-eps))
                   - 2 * _log_qpoch_inf(eps))
        return LogReal(1, log_val)
    if v is Variant.D:
        def d_terms(mmax):
            m = np.arange(mmax + 1, dtype=float)
            lp = np.zeros(mmax + 1)
            lp[1:] = np.cumsum(np.log1p(np.exp(-eps * m[1:])))  # log (-q)_m
            return -eps * (m + 1) + 2 * lp
        return LogReal(1, _sum_log_terms(d_terms, max(256, int(50 / eps))))
    if v is Variant.F0:
        return eval_genfun(Variant.GS, eps) - eval_genfun(Variant.FPHI, eps)
    if v in _EXPONENTS:
        summits = v in (Variant.GS, Variant.HS, Variant.FPHI)
        log_sum = _sum_log_terms(lambda mm: _log_terms_stack(eps, _EXPONENTS[v], summits, mm))
        if not summits:
            log_sum = float(np.logaddexp(log_sum, 0.0))  # the leading 1
        return LogReal(1, log_sum)
    raise UsageError(f"no evaluation for {v}")


def qinf_ratio(eps: float) -> float:
    """(q;q)_inf over sqrt(2 pi/eps) exp(-pi^2/(6 eps)) at q = exp(-eps)."""
    return math.exp(_log_qpoch_inf(eps) - 0.5 * math.log(2 * PI / eps) + PI ** 2 / (6 * eps))


# ---------------------------------------------------------------------------
# saddle point data for the shifted-stack integral


@dataclass(frozen=True)
class SaddleData:
    v: complex
    f_v: float
    fpp_v: float
    contour_height: float


def saddle_exponent(u: complex) -> complex:
    """f(u) = -2 pi^2 u^2 + Li2(exp(4 pi i u)) / 2."""
    return -2 * PI ** 2 * u * u + 0.5 * dilog(complex(cmath.exp(4j * PI * u)))


def saddle_exponent_d1(u: complex) -> complex:
    x = cmath.exp(4j * PI * u)
    return 2j * PI * (2j * PI * u - cmath.log(1 - x))


def saddle_exponent_d2(u: complex) -> complex:
    x = cmath.exp(4j * PI * u)
    return -4 * PI ** 2 * (1 + 2 * x / (1 - x))


def saddle_data() -> SaddleData:
    height = LOG_PHI / (2 * PI)
    v = 1j * height
    return SaddleData(v, saddle_exponent(v).real, saddle_exponent_d2(v).real, height)


def _contour_log_integral(eps: float, sign: int, nodes: int) -> tuple[float, complex]:
    # integrand exp(-2 pi^2 u^2 / eps + sign * pi i u + Li2(x^2 q^2; q^2)), u = t + iC
    height = LOG_PHI / (2 * PI)
    half = 3 * math.sqrt(eps)
    t = np.linspace(-half, half, nodes)
    u = t + 1j * height
    y = np.exp(4j * PI * u - 2 * eps)
    expo = -2 * PI ** 2 * u * u / eps + sign * 1j * PI * u + _qdilog_eps(y, 2 * eps)
    shift = float(np.max(expo.real))
    integral = simpson(np.exp(expo - shift), x=t)
    return shift, integral


def _contour_integral(eps: float, sign: int, nodes: int = 2001) -> LogReal:
    """sqrt(2 pi/eps) * integral over R + iC, in log form; checked by node doubling."""
    shift, coarse = _contour_log_integral(eps, sign, nodes)
    shift2, fine = _contour_log_integral(eps, sign, 2 * nodes - 1)
    fine *= math.exp(shift2 - shift)
    if abs(fine - coarse) > 1e-6 * abs(fine):
        raise NumericError(f"quadrature unsettled at eps={eps}: {coarse} vs {fine}")
    if abs(fine.imag) > 1e-8 * abs(fine):
        raise NumericError(f"contour integral not real at eps={eps}: {fine}")
    return LogReal.from_float(fine.real) * LogReal(1, shift + 0.5 * math.log(2 * PI / eps))


def contour_A_log(eps: float) -> LogReal:
    if not 0 < eps <= 0.2:
        raise DomainError("eps must lie in (0, 0.2]")
    return -_contour_integral(eps, +1)


def contour_A(eps: float) -> float:
    """The shifted-stack constant-term function by quadrature along the saddle line."""
    return float(contour_A_log(eps))


def A_from_H_log(eps: float) -> LogReal:
    if not 0 < eps <= 0.2:
        raise DomainError("eps must lie in (0, 0.2]")
    h_minus_one = eval_genfun(Variant.H, eps) - 1
    return -(h_minus_one * LogReal(1, _log_qpoch_inf(eps) + 7 * eps / 8))


def A_from_H(eps: float) -> float:
    """Same function, recovered from H(q) = 1 - q^(7/8) A(q) / (q)_inf."""
    return float(A_from_H_log(eps))


def A_mainterm(eps: float) -> LogReal:
    return LogReal(-1, -LOG_PHI - 0.25 * math.log(5) + PI ** 2 / (30 * eps))


def hs_from_contour(eps: float) -> LogReal:
    """H_s(q) = 1 + q^(-1/8) / (q)_inf * sqrt(2 pi/eps) * integral with exp(-pi i u)."""
    integral = _contour_integral(eps, -1)
    return 1 + integral * LogReal(1, eps / 8 - _log_qpoch_inf(eps))


def hs_over_h(eps: float) -> float:
    if not 0 < eps <= 0.2:
        raise DomainError("eps must lie in (0, 0.2]")
    return eval_genfun(Variant.HS, eps).ratio(eval_genfun(Variant.H, eps))
