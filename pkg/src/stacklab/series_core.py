"""Exact truncated power series in q with integer coefficients.

A :class:`PowerSeries` of order ``N`` stands for a series modulo ``q**(N+1)``;
every operation here is exact modulo that power. Coefficients are Python
integers, stored densely. The heavy loops run over numpy ``object`` arrays so
that big-integer arithmetic happens inside numpy's C loops.

:class:`BivariateSeries` adds a second variable ``x`` with a finite window of
exponents, which is what the constant-term computations need.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, UsageError

INF = math.inf


def _zeros(n: int) -> np.ndarray:
    # dtype=object zeros are Python int 0, so arithmetic stays exact.
    return np.zeros(n, dtype=object)


def _as_object_array(values: Iterable[int]) -> np.ndarray:
    vals = [int(v) for v in values]
    out = _zeros(len(vals))
    out[:] = vals
    return out


class PowerSeries:
    """Immutable truncated series ``sum(coeffs[n] * q**n for n <= order)``."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        vals = [int(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise UsageError(f"order must be nonnegative, got {order}")
            vals = vals[: order + 1] + [0] * (order + 1 - len(vals))
        if not vals:
            raise UsageError("a power series needs at least the q^0 coefficient")
        self._coeffs = tuple(vals)

    @classmethod
    def _from_array(cls, arr: np.ndarray) -> "PowerSeries":
        obj = cls.__new__(cls)
        obj._coeffs = tuple(int(c) for c in arr)
        return obj

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([0], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> "PowerSeries":
        """``coeff * q**exponent``; vanishes if ``exponent > order``."""
        if exponent < 0:
            raise UsageError("negative exponents are not representable")
        vals = [0] * (order + 1)
        if exponent <= order:
            vals[exponent] = coeff
        return cls(vals)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> list[int]:
        return list(self._coeffs)

    def array(self) -> np.ndarray:
        """A fresh object array holding the coefficients."""
        return _as_object_array(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __eq__(self, other) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._coeffs[:8])
        tail = ", ..." if len(self._coeffs) > 8 else ""
        return f"PowerSeries([{head}{tail}], order={self.order})"

    def _check(self, other: "PowerSeries") -> None:
        if other.order != self.order:
            raise UsageError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other):
        if isinstance(other, int):
            other = PowerSeries([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        return PowerSeries._from_array(self.array() + other.array())

    __radd__ = __add__

    def __neg__(self) -> "PowerSeries":
        return PowerSeries._from_array(-self.array())

    def __sub__(self, other):
        if isinstance(other, int):
            other = PowerSeries([other], self.order)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        return PowerSeries._from_array(self.array() - other.array())

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return PowerSeries._from_array(self.array() * other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return ps_mul(self, other)

    __rmul__ = __mul__

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by ``q**k`` (``k >= 0``), truncating at the same order."""
        if k < 0:
            raise UsageError("shift must be nonnegative")
        n = len(self._coeffs)
        return PowerSeries(([0] * k + list(self._coeffs))[:n])

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self._coeffs, order)

    def first_mismatch(self, other: "PowerSeries") -> int | None:
        """Smallest exponent where the two series differ, or None."""
        self._check(other)
        for n, (x, y) in enumerate(zip(self._coeffs, other._coeffs)):
            if x != y:
                return n
        return None

    def to_json(self) -> str:
        return json.dumps({"order": self.order, "coeffs": [str(c) for c in self._coeffs]})

    @classmethod
    def from_json(cls, text: str) -> "PowerSeries":
        doc = json.loads(text)
        coeffs = [int(c) for c in doc["coeffs"]]
        if len(coeffs) != doc["order"] + 1:
            raise UsageError("coefficient list length disagrees with order")
        return cls(coeffs)


# ---------------------------------------------------------------------------
# array kernels; all operate on object arrays and are exact


def _mul_binomial(arr: np.ndarray, k: int, c: int) -> np.ndarray:
    """arr * (1 + c q^k), truncated to len(arr)."""
    out = arr.copy()
    if k == 0:
        return out * (1 + c)
    if k < len(arr):
        out[k:] += c * arr[: len(arr) - k]
    return out


def _div_binomial(arr: np.ndarray, k: int, c: int) -> np.ndarray:
    """arr / (1 + c q^k) for k >= 1 and c = +-1, truncated to len(arr)."""
    n = len(arr)
    if k >= n:
        return arr.copy()
    rows = -(-n // k)
    pad = _zeros(rows * k)
    pad[:n] = arr
    grid = pad.reshape(rows, k)
    if c == -1:
        # b_n = a_n + b_{n-k}
        out = np.cumsum(grid, axis=0)
    elif c == 1:
        # b_n = a_n - b_{n-k}
        signs = _zeros(rows)
        signs[:] = [1 if r % 2 == 0 else -1 for r in range(rows)]
        out = np.cumsum(grid * signs[:, None], axis=0) * signs[:, None]
    else:
        raise DomainError("division only by 1 +- q^k")
    return out.ravel()[:n]


def _convolve(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    out = _zeros(n)
    for i in range(min(n, len(a))):
        ai = a[i]
        if ai:
            m = min(n - i, len(b))
            out[i : i + m] += ai * b[:m]
    return out


# ---------------------------------------------------------------------------
# public operations


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product modulo ``q**(N+1)`` (schoolbook)."""
    a._check(b)
    n = len(a)
    return PowerSeries._from_array(_convolve(a.array(), b.array(), n))


def ps_inverse(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse of a series whose constant term is +1 or -1."""
    a0 = a[0]
    if a0 not in (1, -1):
        raise DomainError(f"constant term {a0} is not a unit")
    n = len(a)
    src = a.array()
    b = _zeros(n)
    b[0] = a0
    for k in range(1, n):
        b[k] = -a0 * np.dot(src[1 : k + 1], b[k - 1 :: -1])
    return PowerSeries._from_array(b)


def pochhammer(sign: int, offset: int, count: int | float, step: int, order: int) -> PowerSeries:
    """``(sign * q**offset; q**step)_count`` modulo ``q**(order+1)``.

    The product is over ``(1 - sign * q**(offset + j*step))`` for
    ``0 <= j < count``; ``count`` may be ``math.inf``, in which case only the
    factors with exponent ``<= order`` are taken (the rest are 1 modulo
    ``q**(order+1)``).
    """
    if sign not in (1, -1):
        raise UsageError("sign must be +1 or -1")
    if step < 1 or offset < 0:
        raise UsageError("need step >= 1 and offset >= 0")
    if count != INF and (count < 0 or int(count) != count):
        raise UsageError("count must be a nonnegative integer or inf")
    if offset == 0 and sign == 1 and count > 0:
        raise DomainError("factor (1 - q^0) makes the product vanish")
    n = order + 1
    arr = _zeros(n)
    arr[0] = 1
    j = 0
    while j < count:
        e = offset + j * step
        if e > order:
            break
        arr = _mul_binomial(arr, e, -sign)
        j += 1
    return PowerSeries._from_array(arr)


def ps_cumsum(a: PowerSeries) -> PowerSeries:
    """Multiply by ``1/(1-q)``: partial sums of the coefficients."""
    return PowerSeries._from_array(np.cumsum(a.array()))


def mul_binomial(a: PowerSeries, k: int, c: int = 1) -> PowerSeries:
    """``a * (1 + c*q**k)``."""
    return PowerSeries._from_array(_mul_binomial(a.array(), k, c))


def div_binomial(a: PowerSeries, k: int, c: int = -1) -> PowerSeries:
    """``a / (1 + c*q**k)`` for ``k >= 1`` and ``c`` in {+1, -1}."""
    if k < 1:
        raise DomainError("division by 1 +- q^0 is not supported")
    return PowerSeries._from_array(_div_binomial(a.array(), k, c))


def substitute_power(a: PowerSeries, k: int, order: int | None = None) -> PowerSeries:
    """``a(q**k)`` truncated at ``order`` (default: the order of ``a``)."""
    if k < 1:
        raise UsageError("substitution power must be positive")
    order = a.order if order is None else order
    out = [0] * (order + 1)
    for n, c in enumerate(a):
        if n * k > order:
            break
        out[n * k] = c
    return PowerSeries(out)


# ---------------------------------------------------------------------------
# bivariate series (Laurent in x, power series in q)


def constant_term_window(order: int) -> tuple[int, int]:
    """x-exponent window that makes the x^0 coefficient exact to ``order``.

    Terms ``x**-r`` carry at least ``q**(r(r-1)/2)`` and ``x**m`` at least
    ``q**m``; once ``r(r-1)/2 > order`` the discarded terms cannot reach q-degree
    ``order``. ``R = ceil(sqrt(2N)) + 2`` satisfies that bound.
    """
    r = math.isqrt(2 * order)
    if r * r < 2 * order:
        r += 1
    r += 2
    return -r, r + 1


class BivariateSeries:
    """Coefficients of ``x**k`` (``x_min <= k <= x_max``) as q-series of one order.

    Products discard x-exponents outside the window, so results are only
    meaningful on rows whose discarded contributions are known to vanish
    modulo ``q**(order+1)``; see :func:`constant_term_window`.
    """

    __slots__ = ("x_min", "x_max", "order", "_grid")

    def __init__(self, x_min: int, x_max: int, order: int,
                 per_x: Mapping[int, PowerSeries] | None = None):
        if not x_min <= 0 <= x_max:
            raise UsageError("window must contain x^0")
        self.x_min = x_min
        self.x_max = x_max
        self.order = order
        self._grid = np.zeros((x_max - x_min + 1, order + 1), dtype=object)
        for k, s in (per_x or {}).items():
            if not x_min <= k <= x_max:
                raise UsageError(f"x^{k} outside window [{x_min}, {x_max}]")
            if s.order != order:
                raise UsageError("every x-coefficient must share the q-order")
            self._grid[k - x_min] = s.array()

    @classmethod
    def one(cls, x_min: int, x_max: int, order: int) -> "BivariateSeries":
        return cls(x_min, x_max, order, {0: PowerSeries.one(order)})

    def _like(self, grid: np.ndarray) -> "BivariateSeries":
        out = BivariateSeries(self.x_min, self.x_max, self.order)
        out._grid = grid
        return out

    def coeff(self, k: int) -> PowerSeries:
        if not self.x_min <= k <= self.x_max:
            raise UsageError(f"x^{k} outside window [{self.x_min}, {self.x_max}]")
        return PowerSeries._from_array(self._grid[k - self.x_min])

    @property
    def per_x(self) -> dict[int, PowerSeries]:
        return {k: self.coeff(k) for k in range(self.x_min, self.x_max + 1)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, BivariateSeries):
            return NotImplemented
        return (self.x_min, self.x_max, self.order) == (other.x_min, other.x_max, other.order) \
            and bool(np.all(self._grid == other._grid))

    def __mul__(self, other: "BivariateSeries") -> "BivariateSeries":
        if (self.x_min, self.x_max, self.order) != (other.x_min, other.x_max, other.order):
            raise UsageError("bivariate operands must share window and order")
        n = self.order + 1
        grid = np.zeros_like(self._grid)
        for i in range(self._grid.shape[0]):
            row_a = self._grid[i]
            if not row_a.any():
                continue
            for j in range(other._grid.shape[0]):
                row_b = other._grid[j]
                k = i + j + self.x_min  # row index of x^(i+j+2*x_min)
                if 0 <= k < grid.shape[0] and row_b.any():
                    grid[k] += _convolve(row_a, row_b, n)
        return self._like(grid)

    def monomial_shift(self, x_power: int, q_power: int) -> "BivariateSeries":
        """Multiply by ``x**x_power * q**q_power``."""
        if q_power < 0:
            raise UsageError("q power must be nonnegative")
        grid = np.zeros_like(self._grid)
        rows, n = grid.shape
        for i in range(rows):
            t = i + x_power
            if 0 <= t < rows and q_power < n:
                grid[t, q_power:] = self._grid[i, : n - q_power]
        return self._like(grid)

    def mul_factor(self, x_power: int, q_power: int, c: int) -> "BivariateSeries":
        """Multiply by ``1 + c * x**x_power * q**q_power``."""
        grid = self._grid.copy()
        rows, n = grid.shape
        if q_power >= n:
            return self._like(grid)
        lo, hi = max(0, -x_power), min(rows, rows - x_power)
        if lo < hi:
            grid[lo + x_power : hi + x_power, q_power:] += c * self._grid[lo:hi, : n - q_power]
        return self._like(grid)

    def div_factor(self, x_power: int, q_power: int, c: int) -> "BivariateSeries":
        """Divide by ``1 - c * x**x_power * q**q_power`` (``x_power != 0``)."""
        if x_power == 0:
            raise DomainError("use PowerSeries division for x-free factors")
        grid = self._grid.copy()
        rows, n = grid.shape
        if q_power >= n:
            return self._like(grid)
        order = range(rows) if x_power > 0 else range(rows - 1, -1, -1)
        for t in order:
            s = t - x_power
            if 0 <= s < rows:
                grid[t, q_power:] += c * grid[s, : n - q_power]
        return self._like(grid)


def x_pochhammer(x_power: int, sign: int, offset: int, x_min: int, x_max: int,
                 order: int, invert: bool = False,
                 base: BivariateSeries | None = None) -> BivariateSeries:
    """``(sign * x**x_power * q**offset; q)_inf`` (or its inverse) in a window.

    Factors are ``1 - sign * x**x_power * q**(offset + j)``; those with q-exponent
    above ``order`` are 1 modulo ``q**(order+1)`` and are skipped. If ``base``
    is given the factors are applied to it instead of to 1.
    """
    if invert and offset < 1:
        raise DomainError("inverse needs every factor to carry a positive q power")
    out = BivariateSeries.one(x_min, x_max, order) if base is None else base
    for e in range(offset, order + 1):
        if invert:
            out = out.div_factor(x_power, e, sign)
        else:
            out = out.mul_factor(x_power, e, -sign)
    return out


def constant_term_x(b: BivariateSeries) -> PowerSeries:
    """The coefficient of ``x**0``."""
    if not b.x_min <= 0 <= b.x_max:
        raise UsageError("x^0 lies outside the window")
    return b.coeff(0)


def series_from_terms(terms: Sequence[tuple[int, int]], order: int) -> PowerSeries:
    """Build a series from sparse ``(exponent, coefficient)`` pairs."""
    vals = [0] * (order + 1)
    for e, c in terms:
        if 0 <= e <= order:
            vals[e] += c
    return PowerSeries(vals)
