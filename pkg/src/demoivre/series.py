"""Truncated formal power series built on De Moivre polynomials.

Every coefficient formula here is a sum ``sum_k w_k A_{n,k}(a)`` over the
rows produced by :func:`demoivre.core.power_rows`; rows are the powers
``f^k`` of the inner series, computed incrementally.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from .algebra import (
    MPoly,
    UniPoly,
    binomial,
    binomial_general,
    factorial,
    format_rational,
    parse_rational,
    ring_div,
    ring_inverse,
    ring_pow,
)
from .core import power_rows

RINGS = ("integer", "rational", "poly", "float")


def _infer_ring(coeffs) -> str:
    ring = "rational"
    for c in coeffs:
        if isinstance(c, float):
            return "float"
        if isinstance(c, (UniPoly, MPoly)):
            ring = "poly"
    return ring


def _coerce(c, ring: str):
    if ring == "integer":
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise ValueError(f"{c} is not an integer")
            return c.numerator
        if not isinstance(c, int):
            raise TypeError(f"integer series cannot hold {type(c).__name__}")
        return c
    if ring == "rational":
        if isinstance(c, (int, Fraction)):
            return Fraction(c)
        raise TypeError(f"rational series cannot hold {type(c).__name__}")
    if ring == "float":
        return float(c)
    if isinstance(c, (int, Fraction)):
        return Fraction(c)
    return c


class Series:
    """Coefficients of ``x^0 .. x^N`` over one of the package rings.

    The truncation order ``N`` is part of the value; equality compares
    coefficients up to the smaller order only.
    """

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs: Sequence, order: int | None = None, ring: str | None = None):
        cs = list(coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            cs = cs[: order + 1] + [0] * max(0, order + 1 - len(cs))
        if not cs:
            raise ValueError("a series needs at least the constant coefficient")
        ring = ring or _infer_ring(cs)
        if ring not in RINGS:
            raise ValueError(f"unknown ring {ring!r}")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", tuple(_coerce(c, ring) for c in cs))

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, order: int) -> "Series":
        return Series(self.coeffs, min(order, self.order), self.ring)

    def _zero(self):
        return self.coeffs[0] * 0

    # arithmetic -----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, Series):
            _check_ring(self, other)
            n = min(self.order, other.order)
            return self.coeffs[: n + 1], other.coeffs[: n + 1]
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return Series((self.coeffs[0] + other,) + self.coeffs[1:], ring=self.ring)
        return Series([x + y for x, y in zip(*pair)], ring=self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], ring=self.ring)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        return Series([c * other for c in self.coeffs], ring=self.ring)

    def __rmul__(self, other):
        return Series([other * c for c in self.coeffs], ring=self.ring)

    def __pow__(self, m: int):
        return power_int(self, m)

    def __call__(self, inner: "Series") -> "Series":
        return compose(self, inner)

    def __eq__(self, other):
        if isinstance(other, Series):
            n = min(self.order, other.order)
            return all(self.coeffs[i] == other.coeffs[i] for i in range(n + 1))
        return NotImplemented

    __hash__ = None

    # output ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "ring": self.ring, "coeffs": [_coeff_json(c) for c in self.coeffs]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data: dict | str) -> "Series":
        if isinstance(data, str):
            data = json.loads(data)
        ring = data.get("ring", "rational")
        coeffs = [_coeff_from_json(c, ring) for c in data["coeffs"]]
        return cls(coeffs, data.get("order"), ring)

    def __repr__(self):
        return f"Series({self.pretty()}, ring={self.ring!r})"

    def pretty(self, var: str = "x") -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if isinstance(c, (UniPoly, MPoly)):
                body = f"({c})" + (f"*{mono}" if mono else "")
                parts.append(("+", body))
                continue
            neg = c < 0
            mag = -c if neg else c
            mag_s = format_rational(mag) if isinstance(mag, (int, Fraction)) else repr(mag)
            if not mono:
                body = mag_s
            elif mag == 1:
                body = mono
            else:
                body = f"{mag_s}*{mono}"
            parts.append(("-" if neg else "+", body))
        tail = f"O({var}^{self.order + 1})"
        if not parts:
            return f"0 + {tail}"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return f"{out} + {tail}"

    __str__ = pretty


def _coeff_json(c):
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    if isinstance(c, UniPoly):
        return {"var": c.var, "coeffs": c.to_json()}
    if isinstance(c, MPoly):
        return str(c)
    return c


def _coeff_from_json(c, ring):
    if ring == "float":
        return float(c)
    if isinstance(c, dict):
        return UniPoly.from_json(c["coeffs"], c.get("var", "x"))
    if isinstance(c, list):
        return UniPoly.from_json(c)
    v = parse_rational(str(c))
    return v.numerator if ring == "integer" else v


def _check_ring(f: Series, g: Series) -> None:
    if f.ring != g.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {g.ring}")


def _needs_rationals(f: Series, what: str) -> None:
    if f.ring == "integer":
        raise TypeError(f"{what} needs division by factorials; use a rational ring")


def _exact_div(x, d: int):
    if isinstance(x, float):
        return x / d
    return ring_div(x, d)


def _weight_div(x, d: int):
    # series weights live in a rational ring even when alpha is an int
    if isinstance(x, int):
        return Fraction(x, d)
    return _exact_div(x, d)


# ---------------------------------------------------------------------------
# constructors for a few standard series


def variable(order: int, ring: str | None = None) -> Series:
    return Series([0, 1], order, ring)


def geometric(order: int) -> Series:
    """1/(1-x)."""
    return Series([1] * (order + 1))


def exp_x(order: int) -> Series:
    return Series([Fraction(1, factorial(n)) for n in range(order + 1)])


def log1p_x(order: int) -> Series:
    return Series([0] + [Fraction((-1) ** (n + 1), n) for n in range(1, order + 1)])


# ---------------------------------------------------------------------------
# products and powers


def mul(f: Series, g: Series) -> Series:
    """Cauchy product truncated at the smaller order."""
    _check_ring(f, g)
    n = min(f.order, g.order)
    zero = f._zero()
    out = [zero] * (n + 1)
    for i in range(n + 1):
        fi = f.coeffs[i]
        if fi == 0:
            continue
        for j in range(n + 1 - i):
            gj = g.coeffs[j]
            if gj != 0:
                out[i + j] = out[i + j] + fi * gj
    return Series(out, ring=f.ring)


def power_int(f: Series, m: int) -> Series:
    """``f**m`` for any integer m: ``sum_k C(m,k) a_0^{m-k} A_{n,k}(a_1, ...)``."""
    if not isinstance(m, int):
        raise TypeError("exponent must be an integer")
    a0 = f.coeffs[0]
    if m < 0:
        inv_a0 = ring_inverse(a0)  # raises when a_0 is not a unit
    N = f.order
    kmax = N if m < 0 else min(m, N)
    rows = power_rows(f.coeffs[1:], N, kmax, f._zero())
    weights = []
    for k in range(kmax + 1):
        e = m - k
        p = ring_pow(a0, e) if e >= 0 else ring_pow(inv_a0, -e)
        weights.append(binomial(m, k) * p)
    out = []
    for n in range(N + 1):
        acc = f._zero()
        for k in range(min(n, kmax) + 1):
            v = rows[k][n]
            if v != 0:
                acc = acc + weights[k] * v
        out.append(acc)
    return Series(out, ring=f.ring)


def reciprocal(f: Series) -> Series:
    """Multiplicative inverse ``sum_k (-1)^k a_0^{-k-1} A_{n,k}``."""
    if f.coeffs[0] == 0:
        raise ZeroDivisionError("series with zero constant term has no reciprocal")
    return power_int(f, -1)


# ---------------------------------------------------------------------------
# composition


def _inner_rows(f: Series, kmax: int | None = None):
    if f.coeffs[0] != 0:
        raise ValueError("inner series must have zero constant term")
    N = f.order
    return power_rows(f.coeffs[1:], N, N if kmax is None else kmax, f._zero())


def _weighted(rows, weights, N, zero):
    out = []
    for n in range(N + 1):
        acc = zero
        for k in range(min(n, len(weights) - 1) + 1):
            w = weights[k]
            if w == 0:
                continue
            v = rows[k][n]
            if v != 0:
                acc = acc + w * v
        out.append(acc)
    return out


def compose(g: Series, f: Series) -> Series:
    """``g(f(x))`` with ``c_n = sum_k b_k A_{n,k}(a_1, a_2, ...)``."""
    _check_ring(g, f)
    N = min(g.order, f.order)
    f = f.truncate(N)
    rows = _inner_rows(f)
    return Series(_weighted(rows, g.coeffs[: N + 1], N, f._zero()), ring=f.ring)


def power_binomial(f: Series, alpha) -> Series:
    """``(1 + f)^alpha = sum_k C(alpha, k) A_{n,k}(a)``; alpha may be a polynomial."""
    _needs_rationals(f, "power_binomial")
    rows = _inner_rows(f)
    N = f.order
    weights = [binomial_general(alpha, k) for k in range(N + 1)]
    coeffs = _weighted(rows, weights, N, f._zero() * weights[0] if N >= 0 else 0)
    return Series(coeffs)


def exp_series(f: Series, alpha=1) -> Series:
    """``exp(alpha f) = sum_k alpha^k/k! A_{n,k}(a)``."""
    _needs_rationals(f, "exp_series")
    rows = _inner_rows(f)
    N = f.order
    weights = []
    p = alpha * 0 + 1
    for k in range(N + 1):
        weights.append(_weight_div(p, factorial(k)))
        p = p * alpha
    return Series(_weighted(rows, weights, N, f._zero() * weights[0]))


def log_series(f: Series, alpha=1) -> Series:
    """``log(1 + alpha f) = sum_{k>=1} (-1)^{k-1} alpha^k/k A_{n,k}(a)``."""
    _needs_rationals(f, "log_series")
    rows = _inner_rows(f)
    N = f.order
    weights = [alpha * 0]
    p = alpha
    for k in range(1, N + 1):
        w = _weight_div(p, k)
        weights.append(w if k % 2 else -w)
        p = p * alpha
    return Series(_weighted(rows, weights, N, f._zero() * weights[0]))


def demoivre_compose(n: int, r: int, a: Sequence, b: Sequence):
    """``A_{n+r,r}(c_0, c_1, ...)`` for ``c = g o f`` without forming ``c``.

    ``a`` holds ``a_1, a_2, ...`` of ``f`` and ``b`` holds ``b_0, b_1, ...`` of
    ``g``; the value is ``sum_k A_{n,k}(a) A_{k+r,r}(b)``.
    """
    zero = (a[0] if len(a) else b[0]) * 0
    rows_a = power_rows(a, n, n, zero)
    rows_b = power_rows(b, n + r, r, zero)
    total = zero
    for k in range(n + 1):
        x = rows_a[k][n]
        if x != 0:
            total = total + x * rows_b[r][k + r]
    return total


def compose_power(g: Series, f: Series, r: int) -> Series:
    """``(g o f)^r`` via ``[x^n] = sum_k A_{n,k}(a) A_{k+r,r}(b)``."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    _check_ring(g, f)
    N = min(g.order, f.order)
    f = f.truncate(N)
    rows_a = _inner_rows(f)
    rows_b = power_rows(g.coeffs[: N + 1], N + r, r, f._zero())
    weights = [rows_b[r][k + r] for k in range(N + 1)]
    return Series(_weighted(rows_a, weights, N, f._zero()), ring=f.ring)


# ---------------------------------------------------------------------------
# compositional inverses


def _check_invertible(f: Series):
    if f.coeffs[0] != 0:
        raise ValueError("compositional inverse needs zero constant term")
    if f.order < 1:
        raise ValueError("series order must be at least 1")
    return ring_inverse(f.coeffs[1])


def inverse_recursive(f: Series) -> Series:
    """Inverse by solving ``0 = sum_{k<m} b_k A_{m,k}(a) + b_m a_1^m`` for each m."""
    inv_a1 = _check_invertible(f)
    N = f.order
    rows = _inner_rows(f)
    zero = f._zero()
    b = [zero, inv_a1]
    for m in range(2, N + 1):
        s = zero
        for k in range(1, m):
            v = rows[k][m]
            if v != 0 and b[k] != 0:
                s = s + b[k] * v
        b.append(-s * ring_pow(inv_a1, m))
    return Series(b, ring=f.ring)


def _lagrange_rows(f: Series, depth: int):
    zero = f._zero()
    return power_rows(f.coeffs[2:], depth, depth, zero)


def demoivre_of_inverse(m: int, r: int, f: Series):
    """``A_{m,r}(b_1, b_2, ...)`` for the inverse ``g`` of ``f``, read off ``f`` directly.

    ``(r/m) sum_k C(-m,k) a_1^{-m-k} A_{m-r,k}(a_2, a_3, ...)``.  Over the
    integers the division by ``m`` is checked to be exact.
    """
    if m < 1 or r < 1 or r > m:
        raise ValueError("need 1 <= r <= m")
    inv_a1 = _check_invertible(f)
    if m > f.order:
        raise ValueError(f"series order {f.order} too small for m={m}")
    rows = _lagrange_rows(f, m - r)
    zero = f._zero()
    s = zero
    for k in range(m - r + 1):
        v = rows[k][m - r]
        if v != 0:
            s = s + binomial(-m, k) * ring_pow(inv_a1, m + k) * v
    return _exact_div(s * r, m)


def inverse_lagrange(f: Series) -> Series:
    """Inverse by Lagrange: ``b_m = (1/m) sum_k C(-m,k) a_1^{-m-k} A_{m-1,k}(a_2, ...)``."""
    inv_a1 = _check_invertible(f)
    N = f.order
    rows = _lagrange_rows(f, N - 1)
    zero = f._zero()
    b = [zero]
    for m in range(1, N + 1):
        s = zero
        for k in range(m):
            v = rows[k][m - 1]
            if v != 0:
                s = s + binomial(-m, k) * ring_pow(inv_a1, m + k) * v
        b.append(_exact_div(s, m))
    return Series(b, ring=f.ring)


# ---------------------------------------------------------------------------
# exp/log coefficient transforms


def moyal_forward(a: Sequence, t) -> list:
    """``b_n(t) = sum_{k=1}^n t^k/k! A_{n,k}(a)``, n = 1..len(a)."""
    N = len(a)
    zero = a[0] * 0 * t
    rows = power_rows(a, N, N, zero)
    out = []
    for n in range(1, N + 1):
        acc = zero
        p = t
        for k in range(1, n + 1):
            acc = acc + _weight_div(p, factorial(k)) * rows[k][n]
            p = p * t
        out.append(acc)
    return out


def moyal_invert(b: Sequence, t) -> list:
    """Recover ``a_n = (1/t) sum_k (-1)^{k+1}/k A_{n,k}(b_1(t), b_2(t), ...)``."""
    if t == 0:
        raise ZeroDivisionError("t must be nonzero")
    N = len(b)
    zero = b[0] * 0
    rows = power_rows(b, N, N, zero)
    inv_t = ring_inverse(t) if not isinstance(t, float) else 1.0 / t
    out = []
    for n in range(1, N + 1):
        acc = zero
        for k in range(1, n + 1):
            term = _weight_div(rows[k][n], k)
            acc = acc + term if k % 2 else acc - term
        out.append(acc * inv_t)
    return out
