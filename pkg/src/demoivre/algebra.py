"""Exact scalars, polynomials and the small set of coefficient rings.

Every kernel in the package is written against plain Python arithmetic
operators, so the coefficient "ring" is whatever type flows through it:

* ``int`` -- the integers (exact division is checked),
* ``fractions.Fraction`` -- exact rationals,
* :class:`UniPoly` -- dense univariate polynomials with rational coefficients,
* :class:`MPoly` -- sparse multivariate polynomials with rational coefficients,
* ``float`` -- double precision, only used by :mod:`demoivre.asymptotics`.

All values are immutable.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Sequence

Scalar = (int, Fraction)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, UniPoly, MPoly))


# ---------------------------------------------------------------------------
# ring operations


def ring_add(a, b):
    return a + b


def ring_sub(a, b):
    return a - b


def ring_mul(a, b):
    return a * b


def ring_neg(a):
    return -a


def ring_eq(a, b) -> bool:
    return a == b


def ring_div(a, b):
    """Exact division.

    Integers must divide exactly, rationals and floats need a nonzero
    divisor, polynomials must divide with zero remainder.
    """
    if isinstance(b, (UniPoly, MPoly)):
        if b.is_constant():
            return ring_div(a, b.constant_term())
        if isinstance(a, UniPoly) and isinstance(b, UniPoly):
            q, r = divmod(a, b)
            if r:
                raise ArithmeticError(f"{b} does not divide {a}")
            return q
        raise ArithmeticError("division by a non-constant polynomial")
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{b} does not divide {a} in the integers")
        return q
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    if isinstance(a, (UniPoly, MPoly)):
        return a / b
    return Fraction(a) / Fraction(b)


def ring_inverse(a):
    """Multiplicative inverse; integers must be units."""
    if isinstance(a, int) and not isinstance(a, bool):
        if a in (1, -1):
            return a
        if a == 0:
            raise ZeroDivisionError("zero is not invertible")
        raise ArithmeticError(f"{a} is not invertible in the integers")
    if isinstance(a, (UniPoly, MPoly)):
        if not a.is_constant() or a.constant_term() == 0:
            raise ArithmeticError(f"{a} is not invertible")
        return type(a).constant(1 / Fraction(a.constant_term()), *a._like())
    if a == 0:
        raise ZeroDivisionError("zero is not invertible")
    if isinstance(a, float):
        return 1.0 / a
    return 1 / Fraction(a)


def ring_pow(a, m: int):
    """``a**m`` with negative exponents routed through :func:`ring_inverse`."""
    if m >= 0:
        return a**m if not isinstance(a, (UniPoly, MPoly)) else a.__pow__(m)
    return ring_pow(ring_inverse(a), -m)


def zero_like(a):
    return a * 0


def one_like(a):
    return a * 0 + 1


# ---------------------------------------------------------------------------
# combinatorial primitives


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return math.factorial(n)


def factorials(n: int) -> list[int]:
    out = [1] * (n + 1)
    for i in range(1, n + 1):
        out[i] = out[i - 1] * i
    return out


def binomial(n: int, k: int) -> int:
    """Integer binomial coefficient, extended to negative top argument."""
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    return (-1) ** k * math.comb(-n + k - 1, k)


def binomial_general(z, k: int):
    """z(z-1)...(z-k+1)/k! for z in any of the package rings."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if isinstance(z, int) and not isinstance(z, bool):
        return binomial(z, k)
    num = one_like(z)
    for i in range(k):
        num = num * (z - i)
    if isinstance(num, float):
        return num / factorial(k)
    return ring_div(num, factorial(k))


def multinomial(parts: Sequence[int]) -> int:
    total = 0
    out = 1
    for j in parts:
        total += j
        out *= math.comb(total, j)
    return out


def double_factorial_odd(k: int) -> int:
    """(2k-1)!! = 1*3*...*(2k-1) = (2k)!/(2^k k!); equals 1 at k=0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return factorial(2 * k) // (2**k * factorial(k))


def stirling2_triangle(n_max: int) -> list[list[int]]:
    """Subset numbers by {n k} = {n-1 k-1} + k {n-1 k}."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1] + [0]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = prev[k - 1] + k * prev[k]
        rows.append(row)
    return rows


def stirling1_triangle(n_max: int) -> list[list[int]]:
    """Unsigned cycle numbers by [n k] = [n-1 k-1] + (n-1)[n-1 k]."""
    rows = [[1]]
    for n in range(1, n_max + 1):
        prev = rows[-1] + [0]
        row = [0] * (n + 1)
        for k in range(1, n + 1):
            row[k] = prev[k - 1] + (n - 1) * prev[k]
        rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# univariate polynomials


def _as_fraction(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, Rational):
        return Fraction(c.numerator, c.denominator)
    raise TypeError(f"polynomial coefficients must be rational, got {type(c).__name__}")


class UniPoly:
    """Dense polynomial in one named variable with rational coefficients.

    ``coeffs[i]`` is the coefficient of ``var**i``. Trailing zeros are
    stripped so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def gen(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    def _like(self):
        return (self.var,)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def constant_term(self) -> Fraction:
        return self[0]

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var and not (other.is_constant() or self.is_constant()):
                raise TypeError(f"variable mismatch: {self.var} vs {other.var}")
            return other if other.var == self.var else UniPoly(other.coeffs, self.var)
        if isinstance(other, (int, Fraction)):
            return UniPoly([other], self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly([self[i] + o[i] for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UniPoly([c * other for c in self.coeffs], self.var)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UniPoly) and other.is_constant():
            other = other.constant_term()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return UniPoly([c / other for c in self.coeffs], self.var)
        if isinstance(other, UniPoly):
            return ring_div(self, other)
        return NotImplemented

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        out = UniPoly([1], self.var)
        base = self
        while m:
            if m & 1:
                out = out * base
            m >>= 1
            if m:
                base = base * base
        return out

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if not o.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return UniPoly([], self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = o.coeffs[-1]
        for i in range(dq, -1, -1):
            q = rem[i + len(o.coeffs) - 1] / lead
            quot[i] = q
            if q:
                for j, c in enumerate(o.coeffs):
                    rem[i + j] -= q * c
        return UniPoly(quot, self.var), UniPoly(rem, self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = zero_like(x) if not isinstance(x, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + (float(c) if isinstance(x, float) else c)
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        return self(other)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs and (
                self.var == other.var or len(self.coeffs) <= 1
            )
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((_as_fraction(other),) if other != 0 else ())
        return NotImplemented

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.var, self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str], var: str = "x") -> "UniPoly":
        return cls([parse_rational(str(c)) for c in data], var)

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


# ---------------------------------------------------------------------------
# multivariate polynomials

_NAT = re.compile(r"(\d+)")


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in _NAT.split(name)]


class MPoly:
    """Sparse multivariate polynomial with rational coefficients.

    A monomial is a tuple of ``(variable, exponent)`` pairs sorted by
    variable name, so polynomials over different variable sets mix freely.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in dict(terms).items():
                c = _as_fraction(c)
                if c:
                    clean[mono] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    @classmethod
    def var(cls, name: str) -> "MPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def constant(cls, c) -> "MPoly":
        return cls({(): c})

    def _like(self):
        return ()

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly({(): other})
        return NotImplemented

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def variables(self) -> set[str]:
        return {v for m in self.terms for v, _ in m}

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    @staticmethod
    def _mono_mul(m1, m2):
        if not m1:
            return m2
        if not m2:
            return m1
        d = dict(m1)
        for v, e in m2:
            d[v] = d.get(v, 0) + e
        return tuple(sorted(d.items()))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return MPoly({m: c * other for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = self._mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MPoly) and other.is_constant():
            other = other.constant_term()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return MPoly({m: c / other for m, c in self.terms.items()})
        if isinstance(other, MPoly):
            raise ArithmeticError("division by a non-constant polynomial")
        return NotImplemented

    def __pow__(self, m: int):
        if not isinstance(m, int) or m < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        out = MPoly({(): 1})
        base = self
        while m:
            if m & 1:
                out = out * base
            m >>= 1
            if m:
                base = base * base
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.terms == o.terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_term())
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, var: str, exp: int) -> "MPoly":
        """Coefficient of ``var**exp``, as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(var, 0) == exp:
                d.pop(var, None)
                out[tuple(sorted(d.items()))] = c
        return MPoly(out)

    def degree_in(self, var: str) -> int:
        return max((dict(m).get(var, 0) for m in self.terms), default=-1)

    def subs(self, values: dict) -> "MPoly":
        out = MPoly()
        for m, c in self.terms.items():
            term = MPoly({(): c})
            rest = []
            for v, e in m:
                if v in values:
                    term = term * (values[v] ** e)
                else:
                    rest.append((v, e))
            out = out + term * MPoly({tuple(rest): 1})
        return out

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def __repr__(self):
        return f"MPoly({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"

        def key(item):
            m, _ = item
            return (-sum(e for _, e in m), [(_natural_key(v), -e) for v, e in m])

        pieces = []
        for m, c in sorted(self.terms.items(), key=key):
            mono = " ".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = format_rational(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{format_rational(mag)}*{mono}"
            pieces.append((sign, body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def symbols(prefix: str, n: int) -> list[MPoly]:
    """``[prefix1, ..., prefix<n>]`` as MPoly variables."""
    return [MPoly.var(f"{prefix}{i}") for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# polynomials in 1/u


class LaurentInU:
    """Finite sum ``const + sum_k c_k u^{-k}`` with exact rational coefficients."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs: dict | None = None, const=0):
        clean = {}
        for k, c in (coeffs or {}).items():
            if k < 1:
                raise ValueError("LaurentInU stores negative powers u^-k with k >= 1")
            c = _as_fraction(c)
            if c:
                clean[int(k)] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "const", _as_fraction(const))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentInU is immutable")

    @classmethod
    def from_inverse_poly(cls, p: UniPoly) -> "LaurentInU":
        """Read a polynomial in ``w = 1/u`` as a LaurentInU."""
        return cls({i: c for i, c in enumerate(p.coeffs) if i >= 1}, p[0])

    def to_inverse_poly(self, var: str = "w") -> UniPoly:
        top = max(self.coeffs, default=0)
        return UniPoly([self.const] + [self.coeffs.get(i, 0) for i in range(1, top + 1)], var)

    @property
    def degree(self) -> int:
        """Degree in ``1/u``."""
        return max(self.coeffs, default=0)

    def __call__(self, u):
        if isinstance(u, float):
            return float(self.const) + sum(float(c) * u ** (-k) for k, c in self.coeffs.items())
        u = Fraction(u)
        if u == 0:
            raise ZeroDivisionError("LaurentInU evaluated at u = 0")
        return self.const + sum((c / u**k for k, c in self.coeffs.items()), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LaurentInU):
            return self.coeffs == other.coeffs and self.const == other.const
        return NotImplemented

    def __hash__(self):
        return hash((tuple(self.coeffs.items()), self.const))

    def __repr__(self):
        return f"LaurentInU({ {k: format_rational(c) for k, c in self.coeffs.items()} }, const={format_rational(self.const)})"

    def __str__(self):
        parts = []
        if self.const:
            parts.append(format_rational(self.const))
        for k, c in self.coeffs.items():
            mono = "u^-1" if k == 1 else f"u^-{k}"
            parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "const": format_rational(self.const),
            "inverse_powers": {str(k): format_rational(c) for k, c in self.coeffs.items()},
        }
