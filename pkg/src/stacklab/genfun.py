"""Generating functions for stacks as exact power series, and identity checks.

Each Eulerian sum is accumulated term by term while the lowest q-exponent of
the next term is at most the truncation order, so results are exact modulo
``q**(N+1)``. Successive denominators are obtained from the previous ones by
dividing by ``(1 - q**m)``, which keeps each variant at ``O(N**2)`` big-integer
additions even for the sums with ``~N`` terms.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

from .errors import UsageError
from .series_core import (
    INF,
    BivariateSeries,
    PowerSeries,
    _div_binomial,
    _mul_binomial,
    _zeros,
    constant_term_window,
    constant_term_x,
    div_binomial,
    pochhammer,
    ps_inverse,
    ps_mul,
    series_from_terms,
    x_pochhammer,
)


class Variant(enum.Enum):
    S = "s"
    SS = "ss"
    G = "g"
    GS = "gs"
    H = "h"
    HS = "hs"
    D = "d"
    DM = "dm"
    FPHI = "fphi"
    F0 = "f0"
    P = "p"
    L = "l"

    @classmethod
    def parse(cls, name: str) -> "Variant":
        try:
            return cls(name.lower())
        except ValueError:
            raise UsageError(f"unknown variant {name!r}") from None


class IdentityTag(enum.Enum):
    SS_STANLEY = "ss_stanley"
    S_AULUCK = "s_auluck"
    DM_ETA = "dm_eta"
    GS_EQ_P = "gs_eq_p"
    G_PLUS_FPHI = "g_plus_fphi"
    GS_SUM = "gs_sum"
    F0_EQ_G = "f0_eq_g"
    HS_EULERIAN = "hs_eulerian"
    HS_WATSON = "hs_watson"
    RR0 = "rr0"
    RR1 = "rr1"
    JTP_SPECIAL = "jtp_special"
    CONST_TERM_H = "const_term_h"
    CONST_TERM_HS = "const_term_hs"

    @classmethod
    def parse(cls, name: str) -> "IdentityTag":
        try:
            return cls(name.lower())
        except ValueError:
            raise UsageError(f"unknown identity {name!r}") from None


# ---------------------------------------------------------------------------
# Eulerian sums


def _stack_family(order: int, exponent: Callable[[int], int], summits: bool) -> PowerSeries:
    """Eulerian sums of the stack families.

    With summits: ``sum_{m>=0} q^e(m) / (q)_m^2``.
    Without: ``1 + sum_{m>=1} q^e(m) / ((q)_{m-1}^2 (1 - q^m))``.
    ``exponent`` must be nondecreasing with ``exponent(0) == 0``, which lets the
    running reciprocal be cut to the length the remaining terms can use.
    """
    n = order + 1
    acc = _zeros(n)
    acc[0] = 1
    inv = _zeros(n)
    inv[0] = 1  # 1/(q)_{m-1}^2, resp. 1/(q)_m^2
    m = 1
    while (e := exponent(m)) <= order:
        inv = _div_binomial(inv[: n - e], m, -1)
        if summits:
            inv = _div_binomial(inv, m, -1)
            acc[e:] += inv
        else:
            acc[e:] += inv
            inv = _div_binomial(inv, m, -1)
        m += 1
    return PowerSeries._from_array(acc)


def _strict(order: int) -> PowerSeries:
    # sum_{m>=0} q^{m+1} (-q)_m^2
    n = order + 1
    acc = _zeros(n)
    prod = _zeros(n)
    prod[0] = 1
    m = 0
    while m + 1 <= order:
        if m >= 1:
            prod = _mul_binomial(prod, m, 1)
            prod = _mul_binomial(prod, m, 1)
        e = m + 1
        acc[e:] += prod[: n - e]
        m += 1
    return PowerSeries._from_array(acc)


def _semi_strict(order: int) -> PowerSeries:
    # sum_{m>=0} q^{m+1} (-q)_m / (q)_m
    n = order + 1
    acc = _zeros(n)
    ratio = _zeros(n)
    ratio[0] = 1
    m = 0
    while m + 1 <= order:
        if m >= 1:
            ratio = _div_binomial(_mul_binomial(ratio, m, 1), m, -1)
        e = m + 1
        acc[e:] += ratio[: n - e]
        m += 1
    return PowerSeries._from_array(acc)


def false_theta(order: int) -> PowerSeries:
    """L(q) = sum_{n>=1} (-1)^(n-1) q^(n(n+1)/2)."""
    terms = []
    k = 1
    while k * (k + 1) // 2 <= order:
        terms.append((k * (k + 1) // 2, 1 if k % 2 else -1))
        k += 1
    return series_from_terms(terms, order)


def partition_series(order: int) -> PowerSeries:
    """1/(q;q)_inf."""
    return ps_inverse(pochhammer(1, 1, INF, 1, order))


def series(v: Variant, order: int) -> PowerSeries:
    """Exact generating function of ``v`` modulo ``q**(order+1)``."""
    if order < 0:
        raise UsageError("order must be nonnegative")
    if v is Variant.S:
        return _stack_family(order, lambda m: m, summits=False)
    if v is Variant.SS:
        return _stack_family(order, lambda m: m, summits=True)
    if v is Variant.G:
        return _stack_family(order, lambda m: m * m, summits=False)
    if v is Variant.GS:
        return _stack_family(order, lambda m: m * m, summits=True)
    if v is Variant.H:
        return _stack_family(order, lambda m: m * (m + 1) // 2, summits=False)
    if v is Variant.HS:
        return _stack_family(order, lambda m: m * (m + 1) // 2, summits=True)
    if v is Variant.FPHI:
        return _stack_family(order, lambda m: m * m + m, summits=True)
    if v is Variant.F0:
        return series(Variant.GS, order) - series(Variant.FPHI, order)
    if v is Variant.D:
        return _strict(order)
    if v is Variant.DM:
        return _semi_strict(order)
    if v is Variant.P:
        return partition_series(order)
    if v is Variant.L:
        return false_theta(order)
    raise UsageError(f"no series for {v}")


# ---------------------------------------------------------------------------
# closed forms and alternative sides of identities


def _inv_qinf_squared(order: int) -> PowerSeries:
    p = partition_series(order)
    return ps_mul(p, p)


def _g_u(u: int, order: int) -> PowerSeries:
    """G_u(q) = sum_n q^(n(n+u)) / (q)_n, by direct products."""
    acc = PowerSeries.zero(order)
    k = 0
    while k * (k + u) <= order:
        acc = acc + ps_inverse(pochhammer(1, 1, k, 1, order)).shift(k * (k + u))
        k += 1
    return acc


def _gs_simple_identity_right(order: int) -> PowerSeries:
    # sum q^{m^2+m}/(q)_m^2 + 1 + sum_{m>=1} q^{m^2}/((q)_{m-1}(q)_m),
    # assembled from explicit finite products rather than the running quotients
    acc = PowerSeries.one(order)
    m = 0
    while m * m <= order:
        qm = pochhammer(1, 1, m, 1, order)
        if m * m + m <= order:
            acc = acc + ps_inverse(ps_mul(qm, qm)).shift(m * m + m)
        if m >= 1:
            qm1 = pochhammer(1, 1, m - 1, 1, order)
            acc = acc + ps_inverse(ps_mul(qm1, qm)).shift(m * m)
        m += 1
    return acc


def _h_eulerian(order: int) -> PowerSeries:
    # 1 + (1/(q)_inf) sum_{m>=0} q^{(2m+1)(m+1)} / (q^2;q^2)_m
    inner = PowerSeries.zero(order)
    m = 0
    while (2 * m + 1) * (m + 1) <= order:
        inner = inner + ps_inverse(pochhammer(1, 2, m, 2, order)).shift((2 * m + 1) * (m + 1))
        m += 1
    return ps_mul(partition_series(order), inner) + 1


def _hs_watson(order: int) -> PowerSeries:
    # (q)_inf^{-1} G_{1/2}(q^2), with G_{1/2}(q^2) = sum q^{n(2n+1)}/(q^2;q^2)_n
    inner = PowerSeries.zero(order)
    k = 0
    while k * (2 * k + 1) <= order:
        inner = inner + ps_inverse(pochhammer(1, 2, k, 2, order)).shift(k * (2 * k + 1))
        k += 1
    return ps_mul(partition_series(order), inner)


def _rr_product(u: int, order: int) -> PowerSeries:
    # 1 / ((q^{1+u}; q^5)_inf (q^{4-u}; q^5)_inf)
    den = ps_mul(pochhammer(1, 1 + u, INF, 5, order), pochhammer(1, 4 - u, INF, 5, order))
    return ps_inverse(den)


def _dm_eta(order: int) -> PowerSeries:
    # q (q^2;q^2)_inf / ((1+q) (q)_inf^2)
    num = pochhammer(1, 2, INF, 2, order).shift(1)
    return div_binomial(ps_mul(num, _inv_qinf_squared(order)), 1, 1)


def _const_term_product(order: int, with_qx: bool) -> PowerSeries:
    x_min, x_max = constant_term_window(order)
    return constant_term_x(_const_term_bivariate(order, with_qx, x_min, x_max))


def _const_term_bivariate(order: int, with_qx: bool, x_min: int, x_max: int) -> BivariateSeries:
    """``[q x] (-x^{-1}; q)_inf / (x q; q)_inf`` inside the given window."""
    b = x_pochhammer(-1, -1, 0, x_min, x_max, order)
    b = x_pochhammer(1, 1, 1, x_min, x_max, order, invert=True, base=b)
    if with_qx:
        b = b.monomial_shift(1, 1)
    return b


def jtp_bivariate(order: int, x_min: int, x_max: int) -> BivariateSeries:
    """(-x^{-1}; q)_inf (-x q; q)_inf (q; q)_inf inside the window."""
    b = x_pochhammer(-1, -1, 0, x_min, x_max, order)
    b = x_pochhammer(1, -1, 1, x_min, x_max, order, base=b)
    qinf = pochhammer(1, 1, INF, 1, order)
    rows = {k: ps_mul(b.coeff(k), qinf) for k in range(x_min, x_max + 1)}
    return BivariateSeries(x_min, x_max, order, rows)


def _jtp_sides(order: int) -> tuple[PowerSeries, PowerSeries]:
    # Every x-row of the product must equal q^{k(k+1)/2}. The rows are packed
    # into one series with stride order+1 so the report stays one-dimensional.
    x_min, x_max = constant_term_window(order)
    b = jtp_bivariate(order, x_min, x_max)
    left, right = [], []
    for k in range(x_min, x_max + 1):
        left.extend(b.coeff(k))
        right.extend(PowerSeries.monomial(k * (k + 1) // 2, order))
    return PowerSeries(left), PowerSeries(right)


_LEFT: dict[IdentityTag, Callable[[int], PowerSeries]] = {
    IdentityTag.SS_STANLEY: lambda n: series(Variant.SS, n),
    IdentityTag.S_AULUCK: lambda n: series(Variant.S, n),
    IdentityTag.DM_ETA: lambda n: series(Variant.DM, n),
    IdentityTag.GS_EQ_P: lambda n: series(Variant.GS, n),
    IdentityTag.G_PLUS_FPHI: lambda n: series(Variant.GS, n),
    IdentityTag.GS_SUM: lambda n: series(Variant.GS, n),
    IdentityTag.F0_EQ_G: lambda n: series(Variant.F0, n),
    IdentityTag.HS_EULERIAN: lambda n: series(Variant.H, n),
    IdentityTag.HS_WATSON: lambda n: series(Variant.HS, n),
    IdentityTag.RR0: lambda n: _g_u(0, n),
    IdentityTag.RR1: lambda n: _g_u(1, n),
    IdentityTag.CONST_TERM_H: lambda n: series(Variant.H, n),
    IdentityTag.CONST_TERM_HS: lambda n: series(Variant.HS, n),
}

_RIGHT: dict[IdentityTag, Callable[[int], PowerSeries]] = {
    IdentityTag.SS_STANLEY: lambda n: ps_mul(_inv_qinf_squared(n), 1 - false_theta(n)),
    IdentityTag.S_AULUCK: lambda n: ps_mul(_inv_qinf_squared(n), false_theta(n)),
    IdentityTag.DM_ETA: _dm_eta,
    IdentityTag.GS_EQ_P: partition_series,
    IdentityTag.G_PLUS_FPHI: lambda n: series(Variant.FPHI, n) + series(Variant.G, n),
    IdentityTag.GS_SUM: _gs_simple_identity_right,
    IdentityTag.F0_EQ_G: lambda n: series(Variant.G, n),
    IdentityTag.HS_EULERIAN: _h_eulerian,
    IdentityTag.HS_WATSON: _hs_watson,
    IdentityTag.RR0: lambda n: _rr_product(0, n),
    IdentityTag.RR1: lambda n: _rr_product(1, n),
    IdentityTag.CONST_TERM_H: lambda n: _const_term_product(n, with_qx=True) + 1,
    IdentityTag.CONST_TERM_HS: lambda n: _const_term_product(n, with_qx=False),
}


def closed_form(tag: IdentityTag, side: str, order: int) -> PowerSeries:
    """One side of a named identity, as an exact series.

    The left side is the combinatorial generating function (or the Eulerian
    sum for the Rogers-Ramanujan pair); the right side is the alternative
    expression. For JTP_SPECIAL both sides are the x-rows of the window laid
    end to end, each of length ``order + 1``.
    """
    if side not in ("left", "right"):
        raise UsageError("side must be 'left' or 'right'")
    if tag is IdentityTag.JTP_SPECIAL:
        left, right = _jtp_sides(order)
        return left if side == "left" else right
    table = _LEFT if side == "left" else _RIGHT
    return table[tag](order)


# These identities hold for n >= 1 only: s(0) = 1 while L(q)/(q)_inf^2 starts
# at q^1, and the empty Frobenius symbol is counted by F_phi but g(0) = 1.
_FROM_EXPONENT = {
    IdentityTag.S_AULUCK: 1,
    IdentityTag.G_PLUS_FPHI: 1,
    IdentityTag.GS_SUM: 1,
    IdentityTag.F0_EQ_G: 1,
}


@dataclass(frozen=True)
class VerificationReport:
    tag: IdentityTag
    order: int
    passed: bool
    exponent: int | None = None
    left: int | None = None
    right: int | None = None
    from_exponent: int = 0

    def describe(self) -> str:
        if self.passed:
            span = f"q^{self.from_exponent}..q^{self.order}"
            return f"{self.tag.value}: pass ({span})"
        return (f"{self.tag.value}: FAIL at q^{self.exponent}: "
                f"left={self.left} right={self.right}")


def verify_identity(tag: IdentityTag, order: int) -> VerificationReport:
    """Compare both sides coefficient by coefficient; report the first mismatch."""
    left = closed_form(tag, "left", order)
    right = closed_form(tag, "right", order)
    start = _FROM_EXPONENT.get(tag, 0)
    for n in range(start, len(left)):
        if left[n] != right[n]:
            return VerificationReport(tag, order, False, n, left[n], right[n], start)
    return VerificationReport(tag, order, True, from_exponent=start)


__all__ = [
    "Variant",
    "IdentityTag",
    "VerificationReport",
    "series",
    "closed_form",
    "verify_identity",
    "false_theta",
    "partition_series",
    "jtp_bivariate",
]
