"""Coefficients of asymptotic expansions and numeric harnesses that test them.

Exact algebra stays in rationals (or in ``Q[sqrt6, pi, 1/pi]`` for the
partition constants); floats only appear at final evaluation or where
zeta values and quadrature enter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from scipy import integrate, special

from .algebra import (
    LaurentInU,
    UniPoly,
    binomial_general,
    double_factorial_odd,
    factorial,
    format_rational,
    stirling1_triangle,
)
from .core import power_rows
from .sequences import bernoulli_numbers
from .series import Series, exp_series, log1p_x, log_series


@dataclass(frozen=True)
class ExpansionCoeffs:
    """A run of expansion coefficients with per-entry provenance.

    ``provenance[i]`` is ``"exact"`` or ``"float"``; float entries carry an
    error estimate in ``errors[i]`` (0.0 for exact ones).  ``exact`` keeps a
    symbolic form when one exists, even for float-valued entries.
    """

    values: tuple
    provenance: tuple
    errors: tuple
    exact: tuple = field(default=())

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def to_json(self) -> dict:
        out = []
        for i, v in enumerate(self.values):
            item = {"index": i, "provenance": self.provenance[i], "error": self.errors[i]}
            item["value"] = format_rational(v) if isinstance(v, Fraction) else repr(float(v))
            item["float"] = float(v)
            if self.exact:
                item["exact"] = str(self.exact[i])
            out.append(item)
        return {"coefficients": out}


# ---------------------------------------------------------------------------
# Laplace's method


@dataclass(frozen=True)
class RadicalTerm:
    """``coeff * sqrt(radicand)`` with rational parts."""

    coeff: Fraction
    radicand: Fraction

    def __float__(self):
        return float(self.coeff) * math.sqrt(self.radicand)

    def as_sqrt(self) -> tuple[Fraction, Fraction]:
        return self.coeff, self.radicand

    def __str__(self):
        return f"{format_rational(self.coeff)}*sqrt({format_rational(self.radicand)})"


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    p, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if p * p == q.numerator and d * d == q.denominator:
        return Fraction(p, d)
    return None


def laplace_psi(s: int, a: Sequence, b: Sequence):
    """Psi_s for f(z)-f(0) = -sum a_m z^{m+2}, g(z) = sum b_m z^m.

    ``a0^{-(s+1)/2} sum_m b_{s-m} sum_k C(-(s+1)/2, k) A_{m,k}(a1/a0, a2/a0, ...)``.
    Exact inputs give a Fraction when the power of a0 is rational and a
    :class:`RadicalTerm` otherwise; float inputs give a float.
    """
    if s < 0:
        raise ValueError("s must be nonnegative")
    if len(a) < s + 1 or len(b) < s + 1:
        raise ValueError(f"need a_0..a_{s} and b_0..b_{s}")
    a0 = a[0]
    if a0 == 0:
        raise ValueError("a_0 must be nonzero")
    floating = any(isinstance(x, float) for x in list(a[: s + 1]) + list(b[: s + 1]))
    if not floating:
        a0 = Fraction(a0)
    ratios = [x / a0 for x in a[1 : s + 1]]
    zero = 0.0 if floating else Fraction(0)
    rows = power_rows(ratios, s, s, zero)
    half = Fraction(-(s + 1), 2)
    weights = [binomial_general(float(half) if floating else half, k) for k in range(s + 1)]
    total = zero
    for m in range(s + 1):
        inner = sum((weights[k] * rows[k][m] for k in range(m + 1)), zero)
        total = total + b[s - m] * inner
    if floating:
        return total * a0 ** float(half)
    if s % 2 == 1:
        return total * a0 ** int(half)
    # a0^{-(s+1)/2} = a0^{-s/2 - 1} * sqrt(a0)
    root = _rational_sqrt(a0)
    if root is not None:
        return total * root ** (-(s + 1))
    return RadicalTerm(total * a0 ** (-(s // 2) - 1), a0)


# ---------------------------------------------------------------------------
# Stirling's series


def _gamma_perron(m: int) -> Fraction:
    # log(1+z) - z = -sum_m (-1)^m/(m+2) z^{m+2}; g = 1
    a = [Fraction((-1) ** i, i + 2) for i in range(2 * m + 1)]
    b = [Fraction(1)] + [Fraction(0)] * (2 * m)
    psi = laplace_psi(2 * m, a, b)
    if not (isinstance(psi, RadicalTerm) and psi.radicand == Fraction(1, 2)):
        raise ArithmeticError("unexpected shape for Psi in the gamma specialization")
    # gamma_m = Gamma(m+1/2) Psi_{2m} / sqrt(2 pi) and sqrt(1/2)/sqrt(2) = 1/2
    return double_factorial_odd(m) * psi.coeff / (2**m * 2)


def _gamma_stx(m: int) -> Fraction:
    args = [Fraction(1, i + 2) for i in range(1, 2 * m + 1)]
    rows = power_rows(args, 2 * m, 2 * m, Fraction(0))
    return sum(
        (
            Fraction(double_factorial_odd(m + j) * (-1) ** j, factorial(j)) * rows[j][2 * m]
            for j in range(2 * m + 1)
        ),
        Fraction(0),
    )


def _gamma_from_args(m: int, args: list) -> Fraction:
    rows = power_rows(args, m, m, Fraction(0))
    return sum((rows[j][m] / factorial(j) for j in range(m + 1)), Fraction(0))


def _gamma_bernoulli(m: int) -> Fraction:
    B = bernoulli_numbers(m + 1, "recurrence")
    args = [B[i + 1] / (i * (i + 1)) if i % 2 else Fraction(0) for i in range(1, m + 1)]
    return _gamma_from_args(m, args)


def zeta_at_negative_integer(n: int) -> Fraction:
    """zeta(-n) = -B_{n+1}/(n+1) for n >= 1, from the De Moivre Bernoulli route."""
    if n < 1:
        raise ValueError("n must be positive")
    return -bernoulli_numbers(n + 1, "demoivre")[n + 1] / (n + 1)


def _gamma_zeta(m: int) -> Fraction:
    args = [zeta_at_negative_integer(i) / (-i) for i in range(1, m + 1)]
    return _gamma_from_args(m, args)


GAMMA_ROUTES = {
    "perron": _gamma_perron,
    "stx": _gamma_stx,
    "bernoulli": _gamma_bernoulli,
    "zeta": _gamma_zeta,
}


def stirling_gamma(m: int, route: str = "perron") -> Fraction:
    """gamma_m in Gamma(n+1) ~ sqrt(2 pi n)(n/e)^n (1 + gamma_1/n + ...).

    Routes: ``perron`` (Laplace coefficients of the gamma integral),
    ``stx`` (the same sum written directly), ``bernoulli`` (exponentiated
    Stirling series) and ``zeta`` (zeta values at negative integers).
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if route not in GAMMA_ROUTES:
        raise ValueError(f"unknown route {route!r}")
    return GAMMA_ROUTES[route](m)


def stirling_gammas(m_max: int, route: str = "perron") -> list[Fraction]:
    return [stirling_gamma(m, route) for m in range(m_max + 1)]


# ---------------------------------------------------------------------------
# partition asymptotics


class PiForm:
    """Element of Q[sqrt6, pi, 1/pi] stored as ``{(s, p): c}`` for ``c sqrt6^s pi^p``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for (s, p), c in (terms or {}).items():
            if s not in (0, 1):
                raise ValueError("sqrt6 exponent must be 0 or 1")
            c = Fraction(c)
            if c:
                clean[(s, p)] = c
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    def __setattr__(self, name, value):
        raise AttributeError("PiForm is immutable")

    @classmethod
    def rational(cls, c) -> "PiForm":
        return cls({(0, 0): c})

    def __add__(self, other):
        if not isinstance(other, PiForm):
            other = PiForm.rational(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return PiForm(out)

    __radd__ = __add__

    def __neg__(self):
        return PiForm({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PiForm):
            return PiForm({k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for (s1, p1), c1 in self.terms.items():
            for (s2, p2), c2 in other.terms.items():
                s, c = s1 + s2, c1 * c2
                if s == 2:
                    s, c = 0, c * 6
                key = (s, p1 + p2)
                out[key] = out.get(key, 0) + c
        return PiForm(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = PiForm.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, PiForm):
            other = PiForm.rational(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __float__(self):
        r6 = math.sqrt(6)
        return math.fsum(float(c) * r6**s * math.pi**p for (s, p), c in self.terms.items())

    def error_estimate(self) -> float:
        r6 = math.sqrt(6)
        return 4 * 2.2e-16 * sum(abs(float(c)) * r6**s * math.pi**p for (s, p), c in self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for (s, p), c in self.terms.items():
            bits = [format_rational(abs(c))]
            if s:
                bits.append("sqrt6")
            if p:
                bits.append("pi" if p == 1 else f"pi^{p}")
            if bits[0] == "1" and len(bits) > 1:
                bits.pop(0)
            term = "*".join(bits)
            if not out:
                out = term if c > 0 else "-" + term
            else:
                out += (" + " if c > 0 else " - ") + term
        return out

    __repr__ = __str__


# x = pi sqrt(2/3) = pi sqrt6/3 and 1/x = sqrt6/(2 pi)
X_PI = PiForm({(1, 1): Fraction(1, 3)})
X_PI_INV = PiForm({(1, -1): Fraction(1, 2)})


def _alpha(j: int) -> PiForm:
    if j % 2 == 0:
        return PiForm.rational(Fraction(1, 24 ** (j // 2)))
    c = -Fraction(1, 24 ** ((j - 1) // 2)) * binomial_general(Fraction(j, 2), (j - 1) // 2)
    return X_PI_INV * c


def _beta(ell: int) -> PiForm:
    args = [binomial_general(Fraction(1, 2), i) for i in range(1, ell + 2)]
    rows = power_rows(args, ell, ell, Fraction(0))
    total = PiForm()
    for m in range((ell + 1) // 2, ell + 1):
        k = 2 * m - ell
        coeff = Fraction(1, (-24) ** m) / factorial(k) * rows[k][m]
        total = total + (X_PI**k) * coeff
    return total


def partition_constant(r: int) -> PiForm:
    """Exact C_r = sum_j alpha_j(x) beta_{r-j}(x) at x = pi sqrt(2/3)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return sum((_alpha(j) * _beta(r - j) for j in range(r + 1)), PiForm())


def partition_asym_coeffs(R: int) -> ExpansionCoeffs:
    """C_0, ..., C_{R-1} as floats with their exact ``Q[sqrt6, pi, 1/pi]`` forms."""
    if R < 1:
        raise ValueError("R must be at least 1")
    exact = tuple(partition_constant(r) for r in range(R))
    return ExpansionCoeffs(
        values=tuple(float(c) for c in exact),
        provenance=tuple("exact" if set(c.terms) <= {(0, 0)} else "float" for c in exact),
        errors=tuple(c.error_estimate() for c in exact),
        exact=exact,
    )


def partition_asym_log_eval(n: int, R: int) -> float:
    """Log of ``e^{pi sqrt(2n/3)}/(4 sqrt3 n) (1 + sum_{0<r<R} C_r n^{-r/2})``."""
    if n < 1:
        raise ValueError("n must be positive")
    C = partition_asym_coeffs(R).values
    corr = 1.0 + math.fsum(C[r] * n ** (-r / 2) for r in range(1, R))
    if corr <= 0:
        raise ArithmeticError(f"correction factor {corr} is not positive at n={n}")
    return math.pi * math.sqrt(2 * n / 3) - math.log(4 * math.sqrt(3) * n) + math.log(corr)


def partition_asym_eval(n: int, R: int) -> float:
    return math.exp(partition_asym_log_eval(n, R))


def partition_relative_error(n: int, R: int, p_n: int) -> float:
    """``|approx/p(n) - 1|`` computed in log space so large n is safe."""
    log_p = math.log(p_n) if p_n < 2**1000 else _big_log(p_n)
    return abs(math.expm1(partition_asym_log_eval(n, R) - log_p))


def _big_log(x: int) -> float:
    shift = x.bit_length() - 60
    return math.log(x >> shift) + shift * math.log(2)


# ---------------------------------------------------------------------------
# the integral of (log z)^n e^{-alpha z}


def ell_poly(n: int) -> LaurentInU:
    """l_n(u) = (-1)^{n+1} sum_k (k-1)!/n! [n k] u^{-k}."""
    if n < 1:
        raise ValueError("n must be positive")
    S1 = stirling1_triangle(n)
    sign = (-1) ** (n + 1)
    return LaurentInU({k: Fraction(sign * factorial(k - 1) * S1[n][k], factorial(n)) for k in range(1, n + 1)})


def ell_poly_series(n_max: int) -> list[LaurentInU]:
    """l_1..l_{n_max} read off log(1 + w log(1+x)) with w = 1/u symbolic."""
    w = UniPoly.gen("w")
    s = log_series(log1p_x(n_max), alpha=w)
    return [LaurentInU.from_inverse_poly(UniPoly(s[n].coeffs, "w")) for n in range(1, n_max + 1)]


def a_r_of_u(r: int, u):
    """a_r(u) = sum_j (2r+2j-1)!!/j! (u^2/(u+1))^{j+r} A_{2r,j}(l_3(u), l_4(u), ...)."""
    if r < 1:
        raise ValueError("r must be positive")
    if isinstance(u, float):
        if not u > 0:
            raise ValueError("u must be positive")
        zero = 0.0
    else:
        u = Fraction(u)
        if u <= 0:
            raise ValueError("u must be positive")
        zero = Fraction(0)
    args = [ell_poly(i + 2)(u) for i in range(1, 2 * r + 1)]
    rows = power_rows(args, 2 * r, 2 * r, zero)
    q = u * u / (u + 1)
    total = zero
    for j in range(2 * r + 1):
        if rows[j][2 * r]:
            total = total + Fraction(double_factorial_odd(r + j), factorial(j)) * q ** (j + r) * rows[j][2 * r]
    return total


LAMBERT_TOL = 1e-13
LAMBERT_MAX_ITER = 50


def lambert_w(x: float) -> float:
    """Principal branch of W on x >= 0 by Halley iteration from log(1+x)."""
    x = float(x)
    if x < 0 or math.isnan(x):
        raise ValueError("lambert_w needs x >= 0")
    if x == 0:
        return 0.0
    w = math.log1p(x)
    for _ in range(LAMBERT_MAX_ITER):
        ew = math.exp(w)
        f = w * ew - x
        step = f / (ew * (w + 1) - (w + 2) * f / (2 * w + 2))
        w -= step
        if abs(step) <= LAMBERT_TOL * max(abs(w), 1e-300):
            break
    else:
        raise ArithmeticError(f"Halley iteration for W({x}) did not converge")
    if x >= math.e and w > math.log(x) * (1 + 1e-12):
        raise AssertionError(f"W({x}) = {w} exceeds log x")
    return w


@dataclass(frozen=True)
class QuadResult:
    log_value: float
    rel_error: float
    converged: bool

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def log_integral_I_alpha(n: int, alpha: float) -> QuadResult:
    """log of I_alpha(n) = int_1^inf (log z)^n e^{-alpha z} dz.

    With t = log z the integrand is exp(n log t + t - alpha e^t); it is
    rescaled by its value at t0 = W(n/alpha) and split there.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    t0 = lambert_w(n / alpha)
    peak = n * math.log(t0) + t0 - alpha * math.exp(t0)

    def g(t):
        if t <= 0:
            return 0.0
        e = n * math.log(t) + t - alpha * math.exp(min(t, 700.0)) - peak
        return math.exp(e) if e > -745 else 0.0

    width = t0 / math.sqrt(n) + 1.0
    pieces = [(0.0, t0), (t0, t0 + 40 * width)]
    total, err, ok = 0.0, 0.0, True
    for lo, hi in pieces:
        val, e, *info = integrate.quad(g, lo, hi, limit=200, epsabs=0.0, epsrel=1e-12, full_output=1)
        if len(info) > 1:
            ok = False
        total += val
        err += e
    return QuadResult(math.log(total) + peak, err / total, ok)


def integral_I_alpha(n: int, alpha: float) -> float:
    return log_integral_I_alpha(n, alpha).value


def saddle_log_main(n: int, alpha: float, saddle_factor: bool = True) -> float:
    """Log of the leading term.

    ``sqrt(2 pi) u/sqrt((1+u) n) (u e^{-1/u})^n`` times, when
    ``saddle_factor`` is set, the Jacobian ``z0 = e^u`` of z = z0(1+x).
    """
    u = lambert_w(n / alpha)
    out = 0.5 * math.log(2 * math.pi) + math.log(u) - 0.5 * math.log((1 + u) * n) + n * (math.log(u) - 1 / u)
    return out + u if saddle_factor else out


def validate_saddle_expansion(n: int, alpha: float, R: int) -> dict:
    """Compare quadrature for I_alpha(n) with the expansion truncated at R terms."""
    if R < 1:
        raise ValueError("R must be at least 1")
    u = lambert_w(n / alpha)
    quad = log_integral_I_alpha(n, alpha)
    corr = 1.0 + math.fsum(a_r_of_u(r, u) / n**r for r in range(1, R))
    log_main = saddle_log_main(n, alpha)
    log_approx = log_main + math.log(corr)
    rel = abs(math.expm1(log_approx - quad.log_value))
    return {
        "n": n,
        "alpha": alpha,
        "R": R,
        "u": u,
        "log_integral": quad.log_value,
        "quad_rel_error": quad.rel_error,
        "quad_converged": quad.converged,
        "log_main": log_main,
        "main_positive": math.isfinite(log_main),
        "correction": corr,
        "rel_error": rel,
        "ratio_to_main_without_z0": math.exp(quad.log_value - saddle_log_main(n, alpha, False)),
    }


# ---------------------------------------------------------------------------
# Taylor series of Gamma(1+z)


EULER_GAMMA = 0.57721566490153286060651209


def gamma_taylor_coeffs(order: int) -> list[float]:
    """c_m with Gamma(1+z) = sum c_m z^m, from gamma and zeta(2..order)."""
    if not 1 <= order <= 20:
        raise ValueError("order must be between 1 and 20")
    args = [EULER_GAMMA] + [float(special.zeta(k)) / k for k in range(2, order + 1)]
    rows = power_rows(args, order, order, 0.0)
    out = []
    for m in range(order + 1):
        s = math.fsum(rows[j][m] / factorial(j) for j in range(m + 1))
        out.append(s if m % 2 == 0 else -s)
    return out


GAMMA_SAMPLE_POINTS = (0.0, 0.125, -0.125, 0.25, -0.25, 0.5, -0.5)
GAMMA_TAYLOR_TOL = 1e-8


def gamma_taylor_tail(z: float, order: int) -> float:
    """Bound on the truncation error; coefficients tend to (-1)^m from the pole at z = -1."""
    a = abs(z)
    return 1.1 * a ** (order + 1) / (1 - a)


def gamma_taylor_check(order: int = 20, points: Sequence[float] = GAMMA_SAMPLE_POINTS) -> dict:
    """Sum the Taylor series at sample points and compare with scipy's Gamma.

    Each point passes when the error is within ``1e-8`` plus the truncation
    bound for the given order.  Also checks that exp(-S) for the odd Stirling
    series S has coefficients (-1)^m gamma_m and that exp(S) exp(-S) = 1.
    """
    c = gamma_taylor_coeffs(order)
    cases = []
    for z in points:
        approx = math.fsum(cm * z**m for m, cm in enumerate(c))
        exact = float(special.gamma(1 + z))
        err = abs(approx - exact)
        tol = GAMMA_TAYLOR_TOL + gamma_taylor_tail(z, order)
        cases.append({"z": z, "approx": approx, "gamma": exact, "error": err, "tol": tol, "pass": err <= tol})
    alt = reciprocal_gamma_check(min(order, 10))
    return {
        "order": order,
        "points": cases,
        "reciprocal": alt,
        "pass": all(p["pass"] for p in cases) and alt["pass"],
    }


def stirling_log_series(order: int) -> Series:
    """S(y) = sum_k B_{2k}/(2k(2k-1)) y^{2k-1}, odd powers only."""
    B = bernoulli_numbers(order + 1)
    coeffs = [Fraction(0)] * (order + 1)
    for i in range(1, order + 1, 2):
        coeffs[i] = B[i + 1] / (i * (i + 1))
    return Series(coeffs)


def reciprocal_gamma_check(order: int) -> dict:
    S = stirling_log_series(order)
    plus = exp_series(S)
    minus = exp_series(S, alpha=-1)
    gam = stirling_gammas(order, "bernoulli")
    signs_ok = all(minus[m] == (-1) ** m * gam[m] for m in range(order + 1))
    plus_ok = all(plus[m] == gam[m] for m in range(order + 1))
    product = plus * minus
    unit_ok = product[0] == 1 and all(product[m] == 0 for m in range(1, order + 1))
    return {"order": order, "alternating": signs_ok, "matches_gamma": plus_ok, "product_is_one": unit_ok,
            "pass": signs_ok and plus_ok and unit_ok}
