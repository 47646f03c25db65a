"""Number-theoretic and classical sequences, each with two or more routes.

One route is always a De Moivre sum; the other is a classical recurrence,
product expansion or closed form, so every value doubles as an identity
check.
"""

from __future__ import annotations

import enum
import math
import threading
from fractions import Fraction
from typing import Callable

from .algebra import (
    UniPoly,
    binomial,
    binomial_general,
    factorial,
    stirling1_triangle,
    stirling2_triangle,
)
from .core import BoundExceeded, default_max_n, power_rows


class IntegerSequenceCache:
    """Append-only tables grown on demand behind a lock."""

    def __init__(self):
        self._lock = threading.Lock()
        self._tables: dict[str, list] = {}

    def get(self, name: str, size: int, build: Callable[[int], list]) -> list:
        table = self._tables.get(name)
        if table is not None and len(table) >= size:
            return table
        with self._lock:
            table = self._tables.get(name)
            if table is None or len(table) < size:
                # grow geometrically so repeated small requests stay cheap
                target = max(size, 2 * len(table) if table else size)
                fresh = build(target)
                if table is not None and fresh[: len(table)] != table:
                    raise AssertionError(f"cache {name!r} rebuilt inconsistently")
                self._tables[name] = fresh
                table = fresh
        return table

    def clear(self) -> None:
        with self._lock:
            self._tables.clear()


CACHE = IntegerSequenceCache()


# ---------------------------------------------------------------------------
# elementary arithmetic functions


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("n must be positive")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sigma(n: int) -> int:
    """Sum of the divisors of n."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    return sum(divisors(n))


def factorize(n: int) -> dict[int, int]:
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def totient(n: int) -> int:
    out = n
    for p in factorize(n):
        out = out // p * (p - 1)
    return out


def ramanujan_sum(j: int, m: int) -> int:
    """``r_j(m) = sum_{d | (m, j)} mu(m/d) d``."""
    if j < 1 or m < 1:
        raise ValueError("j and m must be positive")
    return sum(mobius(m // d) * d for d in divisors(math.gcd(m, j)))


# ---------------------------------------------------------------------------
# partitions


def pentagonal_coefficients(n_max: int) -> list[int]:
    """Coefficients ``c_0..c_{n_max}`` of prod_{j>=1} (1 - q^j)."""
    c = [0] * (n_max + 1)
    c[0] = 1
    r = 1
    while r * (3 * r - 1) // 2 <= n_max:
        for m in (r * (3 * r - 1) // 2, r * (3 * r + 1) // 2):
            if m <= n_max:
                c[m] = (-1) ** r
        r += 1
    return c


def _partitions_pentagonal(n_max: int) -> list[int]:
    c = pentagonal_coefficients(n_max)
    nz = [(m, cm) for m, cm in enumerate(c) if m and cm]
    p = [0] * (n_max + 1)
    p[0] = 1
    for n in range(1, n_max + 1):
        acc = 0
        for m, cm in nz:
            if m > n:
                break
            acc -= cm * p[n - m]
        p[n] = acc
    return p


def _partitions_demoivre(n_max: int) -> list[int]:
    c = pentagonal_coefficients(n_max)
    args = [-x for x in c[1:]]
    rows = power_rows(args, n_max, n_max, 0)
    return [sum(rows[k][n] for k in range(n + 1)) for n in range(n_max + 1)]


def _partitions_sigma(n_max: int) -> list:
    args = [Fraction(sigma(j), j) for j in range(1, n_max + 1)]
    rows = power_rows(args, n_max, n_max, Fraction(0))
    out = []
    for n in range(n_max + 1):
        v = sum((rows[k][n] / factorial(k) for k in range(n + 1)), Fraction(0))
        if v.denominator != 1:
            raise ArithmeticError(f"sigma route gave non-integer p({n}) = {v}")
        out.append(v.numerator)
    return out


_P_ROUTES = {
    "pentagonal": _partitions_pentagonal,
    "demoivre": _partitions_demoivre,
    "sigma": _partitions_sigma,
}


def partition_numbers(n_max: int, route: str = "pentagonal") -> list[int]:
    """``[p(0), ..., p(n_max)]`` by one of the routes ``pentagonal``, ``demoivre``, ``sigma``."""
    if route not in _P_ROUTES:
        raise ValueError(f"unknown route {route!r}")
    if route == "pentagonal":
        return CACHE.get("p", n_max + 1, lambda size: _partitions_pentagonal(size - 1))[: n_max + 1]
    return _P_ROUTES[route](n_max)


def partitions_p(n: int, route: str = "pentagonal") -> int:
    if n < 0:
        return 0
    return partition_numbers(n, route)[n]


def partitions_p_k(n: int, k: int) -> int:
    """Partitions of n into at most k parts, from prod_{j<=k} 1/(1-q^j)."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    table = [1] + [0] * n
    for j in range(1, k + 1):
        for m in range(j, n + 1):
            table[m] += table[m - j]
    return table[n]


P4_SEQUENCE = (1, 1, 0, 0, -2, 0, 0, 1, 1, -1)


def p4_via_demoivre(n_max: int) -> list[int]:
    """``p_4(n) = sum_k A_{n,k}(1, 1, 0, 0, -2, 0, 0, 1, 1, -1, 0, ...)``."""
    rows = power_rows(list(P4_SEQUENCE), n_max, n_max, 0)
    return [sum(rows[k][n] for k in range(n + 1)) for n in range(n_max + 1)]


# ---------------------------------------------------------------------------
# Ramanujan tau


def _truncated_mul(f: list[int], g: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, fi in enumerate(f[: n + 1]):
        if fi:
            for j, gj in enumerate(g[: n + 1 - i]):
                if gj:
                    out[i + j] += fi * gj
    return out


def _tau_product(n_max: int) -> list[int]:
    # q prod (1-q^j)^24 = q E^24 with E^24 = E^16 E^8 by repeated squaring
    size = n_max
    e = pentagonal_coefficients(size)
    e2 = _truncated_mul(e, e, size)
    e4 = _truncated_mul(e2, e2, size)
    e8 = _truncated_mul(e4, e4, size)
    e16 = _truncated_mul(e8, e8, size)
    e24 = _truncated_mul(e16, e8, size)
    return [0] + e24[:n_max]


def _tau_demoivre(n_max: int) -> list[int]:
    c = pentagonal_coefficients(n_max + 23)
    rows = power_rows(c, n_max + 23, 24, 0)
    return [0] + [rows[24][n + 23] for n in range(1, n_max + 1)]


def _tau_bound(n: int, max_n: int | None) -> None:
    cap = default_max_n() if max_n is None else max_n
    if n > cap:
        raise BoundExceeded(f"tau({n}) exceeds the bound {cap}; pass max_n to override")


def tau_numbers(n_max: int, route: str = "product", max_n: int | None = None) -> list[int]:
    """``[0, tau(1), ..., tau(n_max)]`` (index 0 is a placeholder)."""
    _tau_bound(n_max, max_n)
    if route == "product":
        return CACHE.get("tau", n_max + 1, lambda size: _tau_product(size - 1))[: n_max + 1]
    if route == "demoivre":
        return _tau_demoivre(n_max)
    raise ValueError(f"unknown route {route!r}")


def ramanujan_tau(n: int, route: str = "product", max_n: int | None = None) -> int:
    if n < 1:
        raise ValueError("tau needs n >= 1")
    _tau_bound(n, max_n)
    if route == "demoivre":
        c = pentagonal_coefficients(n + 23)
        return power_rows(c, n + 23, 24, 0)[24][n + 23]
    return tau_numbers(n, route, max_n)[n]


def tau_partition_inversions(n: int) -> dict:
    """Check three identities tying tau, p and sigma together at one n.

    * ``tau(n) = sum_k C(-24,k) A_{n-1,k}(p(1), p(2), ...)``
    * ``p(n) = sum_k C(-1/24,k) A_{n,k}(tau(2), tau(3), ...)``
    * ``tau(n+1) = -24 sigma(n)/n + sum_{k>=2} (-1)^k/k A_{n,k}(tau(2), ...)``
    """
    if n < 1:
        raise ValueError("n must be positive")
    p = partition_numbers(n + 1)
    tau = tau_numbers(n + 1)

    rows_p = power_rows(p[1:n], n - 1, n - 1, 0)
    tau_from_p = sum(binomial(-24, k) * rows_p[k][n - 1] for k in range(n))

    rows_t = power_rows(tau[2 : n + 2], n, n, 0)
    p_from_tau = sum((binomial_general(Fraction(-1, 24), k) * rows_t[k][n] for k in range(n + 1)), Fraction(0))
    if p_from_tau.denominator != 1:
        raise ArithmeticError(f"p({n}) from tau came out non-integral: {p_from_tau}")

    tau_rec = Fraction(-24 * sigma(n), n) + sum(
        (Fraction((-1) ** k, k) * rows_t[k][n] for k in range(2, n + 1)), Fraction(0)
    )
    cases = {
        "tau_from_p": {"lhs": tau[n], "rhs": tau_from_p},
        "p_from_tau": {"lhs": p[n], "rhs": int(p_from_tau)},
        "tau_recursion": {"lhs": tau[n + 1], "rhs": tau_rec},
    }
    for c in cases.values():
        c["pass"] = c["lhs"] == c["rhs"]
    return {"n": n, "cases": cases, "pass": all(c["pass"] for c in cases.values())}


# ---------------------------------------------------------------------------
# Stirling numbers


def _stirling_table(kind: str, n_max: int):
    name = "stirling2" if kind == "subset" else "stirling1"
    build = stirling2_triangle if kind == "subset" else stirling1_triangle
    return CACHE.get(name, n_max + 1, lambda size: build(size - 1))


def _stirling_demoivre(n: int, k: int, args) -> int:
    if k > n:
        return 0
    if k == 0:
        return int(n == 0)
    rows = power_rows(args[: n - k + 1], n, k, Fraction(0))
    v = rows[k][n] * factorial(n) / factorial(k)
    if v.denominator != 1:
        raise ArithmeticError(f"non-integral Stirling value {v}")
    return v.numerator


def stirling_subset(n: int, k: int, route: str = "demoivre") -> int:
    """{n k}: (n!/k!) A_{n,k}(1/1!, 1/2!, ...), or the triangle recurrence."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if route == "recurrence":
        return _stirling_table("subset", n)[n][k] if k <= n else 0
    if route != "demoivre":
        raise ValueError(f"unknown route {route!r}")
    return _stirling_demoivre(n, k, [Fraction(1, factorial(i)) for i in range(1, n + 2)])


def stirling_cycle(n: int, k: int, route: str = "demoivre") -> int:
    """[n k]: (n!/k!) A_{n,k}(1/1, 1/2, ...), or the triangle recurrence."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if route == "recurrence":
        return _stirling_table("cycle", n)[n][k] if k <= n else 0
    if route != "demoivre":
        raise ValueError(f"unknown route {route!r}")
    return _stirling_demoivre(n, k, [Fraction(1, i) for i in range(1, n + 2)])


# ---------------------------------------------------------------------------
# Bernoulli and Norlund


def _bernoulli_recurrence(n_max: int) -> list[Fraction]:
    B = [Fraction(1)]
    for n in range(1, n_max + 1):
        s = sum((binomial(n + 1, j) * B[j] for j in range(n)), Fraction(0))
        B.append(-s / (n + 1))
    return B


def _bernoulli_demoivre(n_max: int) -> list[Fraction]:
    args = [Fraction(-1, factorial(j + 1)) for j in range(1, n_max + 1)]
    rows = power_rows(args, n_max, n_max, Fraction(0))
    return [factorial(n) * sum((rows[k][n] for k in range(n + 1)), Fraction(0)) for n in range(n_max + 1)]


def bernoulli_numbers(n_max: int, route: str = "recurrence") -> list[Fraction]:
    """``[B_0, ..., B_{n_max}]`` with ``B_1 = -1/2`` (generating function t/(e^t-1))."""
    if route == "recurrence":
        return CACHE.get("bernoulli", n_max + 1, lambda size: _bernoulli_recurrence(size - 1))[: n_max + 1]
    if route == "demoivre":
        return _bernoulli_demoivre(n_max)
    raise ValueError(f"unknown route {route!r}")


def bernoulli_number(n: int, route: str = "demoivre") -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return bernoulli_numbers(n, route)[n]


def bernoulli_tan_identity(n: int) -> tuple[Fraction, Fraction]:
    """Both sides of ``2^{n+2}(2^{n+2}-1) B_{n+2}/(n+2) = n! sum_k C(n+k,k) A_{n,k}(0,-1/3,0,-1/5,...)``."""
    B = bernoulli_numbers(n + 2)
    lhs = Fraction(2 ** (n + 2) * (2 ** (n + 2) - 1)) * B[n + 2] / (n + 2)
    args = [Fraction(0) if j % 2 else Fraction(-1, j + 1) for j in range(1, n + 1)]
    rows = power_rows(args, n, n, Fraction(0))
    rhs = factorial(n) * sum((binomial(n + k, k) * rows[k][n] for k in range(n + 1)), Fraction(0))
    return lhs, rhs


def bernoulli_poly(n: int, route: str = "demoivre", var: str = "x") -> UniPoly:
    """B_n(x) from the De Moivre sum, or ``sum_j C(n,j) B_j x^{n-j}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = UniPoly.gen(var)
    if route == "classical":
        B = bernoulli_numbers(n)
        return sum((binomial(n, j) * B[j] * x ** (n - j) for j in range(n + 1)), UniPoly([], var))
    if route != "demoivre":
        raise ValueError(f"unknown route {route!r}")
    args = [((-x) ** (j + 1) - (1 - x) ** (j + 1)) / factorial(j + 1) for j in range(1, n + 1)]
    zero = UniPoly([], var)
    rows = power_rows(args, n, n, zero)
    return factorial(n) * sum((rows[k][n] for k in range(n + 1)), zero)


def norlund_poly(n: int, route: str = "demoivre", var: str = "x") -> UniPoly:
    """B_n^{(x)}, coefficients of (t/(e^t-1))^x, as a polynomial in x."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    x = UniPoly.gen(var)
    zero = UniPoly([], var)
    if route == "stirling":
        S = _stirling_table("subset", 2 * n)
        total = zero
        for k in range(n + 1):
            total = total + (
                binomial_general(-x, k)
                * binomial_general(x + n, n - k)
                * Fraction(S[n + k][k], binomial(n + k, k))
            )
        return total
    if route != "demoivre":
        raise ValueError(f"unknown route {route!r}")
    args = [Fraction(1, factorial(j + 1)) for j in range(1, n + 1)]
    rows = power_rows(args, n, n, Fraction(0))
    return factorial(n) * sum((binomial_general(-x, k) * rows[k][n] for k in range(n + 1)), zero)


# ---------------------------------------------------------------------------
# orthogonal polynomials


class OrthoKind(str, enum.Enum):
    HERMITE = "hermite"
    GEGENBAUER = "gegenbauer"
    CHEBYSHEV_T = "chebyshev_T"
    CHEBYSHEV_U = "chebyshev_U"
    LEGENDRE = "legendre"
    FIBONACCI = "fibonacci"


def _rows_2x_minus1(n: int, var: str):
    x = UniPoly.gen(var)
    zero = UniPoly([], var)
    return power_rows([2 * x, zero - 1], max(n, 0), max(n, 0), zero), zero


def _expl(n: int, k: int, x, y):
    # A_{n,k}(x, y, 0, ...) = C(k, n-k) x^{2k-n} y^{n-k}
    if n < k or 2 * k < n:
        return x * 0
    return binomial(k, n - k) * x ** (2 * k - n) * y ** (n - k)


def _ortho_demoivre(kind: OrthoKind, n: int, lam, var: str):
    if kind is OrthoKind.FIBONACCI:
        rows = power_rows([1, 1], n, n, 0)
        return sum(rows[k][n] for k in range(n + 1))
    rows, zero = _rows_2x_minus1(n, var)
    x = UniPoly.gen(var)
    if kind is OrthoKind.HERMITE:
        return sum((Fraction(factorial(n), factorial(k)) * rows[k][n] for k in range(n + 1)), zero)
    if kind is OrthoKind.CHEBYSHEV_T:
        total = sum((rows[k][n] for k in range(n + 1)), zero)
        if n >= 1:
            total = total - x * sum((rows[k][n - 1] for k in range(n)), zero)
        return total
    return sum((binomial_general(lam + k - 1, k) * rows[k][n] for k in range(n + 1)), zero)


def _ortho_explicit(kind: OrthoKind, n: int, lam, var: str):
    x = UniPoly.gen(var)
    zero = UniPoly([], var)
    if kind is OrthoKind.FIBONACCI:
        return sum(_expl(n, k, 1, 1) for k in range(n + 1))
    two_x, m1 = 2 * x, UniPoly([-1], var)
    if kind is OrthoKind.HERMITE:
        return sum((Fraction(factorial(n), factorial(k)) * _expl(n, k, two_x, m1) for k in range(n + 1)), zero)
    if kind is OrthoKind.CHEBYSHEV_T:
        if n == 0:
            return UniPoly([1], var)
        # sum_{k=1}^n (-1)^{n-k} n/(2k) C(k, n-k) (2x)^{2k-n}
        total = zero
        for k in range(1, n + 1):
            if 2 * k >= n:
                total = total + Fraction((-1) ** (n - k) * n, 2 * k) * binomial(k, n - k) * two_x ** (2 * k - n)
        return total
    return sum((binomial_general(lam + k - 1, k) * _expl(n, k, two_x, m1) for k in range(n + 1)), zero)


def _ortho_recurrence(kind: OrthoKind, n: int, lam, var: str):
    x = UniPoly.gen(var)
    if kind is OrthoKind.FIBONACCI:
        a, b = 1, 1  # F_1, F_2
        for _ in range(n):
            a, b = b, a + b
        return a
    one = UniPoly([1], var)
    if kind is OrthoKind.HERMITE:
        seq = [one, 2 * x]
        for m in range(1, n):
            seq.append(2 * x * seq[m] - 2 * m * seq[m - 1])
        return seq[n]
    if kind is OrthoKind.CHEBYSHEV_T:
        seq = [one, x]
        for m in range(1, n):
            seq.append(2 * x * seq[m] - seq[m - 1])
        return seq[n]
    seq = [one, 2 * lam * x]
    for m in range(2, n + 1):
        seq.append((2 * x * (m + lam - 1) * seq[m - 1] - (m + 2 * lam - 2) * seq[m - 2]) / m)
    return seq[n]


def orthogonal_poly(kind, n: int, lam=None, route: str = "demoivre", var: str = "x"):
    """Classical polynomials from ``A_{n,k}(2x, -1, 0, ...)``.

    ``fibonacci`` returns the integer ``F_{n+1}``; the rest return
    :class:`UniPoly`.  ``route`` is ``demoivre``, ``explicit`` (two-variable
    closed form) or ``recurrence`` (three-term recurrence).
    """
    try:
        kind = OrthoKind(kind)
    except ValueError:
        raise ValueError(f"unknown kind {kind!r}") from None
    if n < 0:
        raise ValueError("n must be nonnegative")
    if kind is OrthoKind.GEGENBAUER:
        if lam is None:
            raise ValueError("gegenbauer needs lambda")
        lam = Fraction(lam)
    elif kind is OrthoKind.CHEBYSHEV_U:
        lam = Fraction(1)
    elif kind is OrthoKind.LEGENDRE:
        lam = Fraction(1, 2)
    impl = {"demoivre": _ortho_demoivre, "explicit": _ortho_explicit, "recurrence": _ortho_recurrence}
    if route not in impl:
        raise ValueError(f"unknown route {route!r}")
    return impl[route](kind, n, lam, var)


# ---------------------------------------------------------------------------
# cyclotomic polynomials


CYCLOTOMIC_TAIL = 5


def _cyclotomic_lehmer(n: int) -> UniPoly:
    deg = totient(n)
    top = deg + CYCLOTOMIC_TAIL
    # clear denominators: a_j = -r_j(n)/j = c_j/L, so A_{m,k}(a) = A_{m,k}(c)/L^k
    L = math.lcm(*range(1, top + 1))
    args = [-ramanujan_sum(j, n) * (L // j) for j in range(1, top + 1)]
    rows = power_rows(args, top, top, 0)
    scale = [factorial(k) * L**k for k in range(top + 1)]
    coeffs = []
    for m in range(top + 1):
        v = sum((Fraction(rows[k][m], scale[k]) for k in range(m + 1)), Fraction(0))
        if v.denominator != 1:
            raise ArithmeticError(f"Phi_{n}: non-integral coefficient {v} at x^{m}")
        coeffs.append(v)
    if any(coeffs[deg + 1 :]):
        raise ArithmeticError(f"Phi_{n}: series does not terminate at degree {deg}")
    return UniPoly(coeffs[: deg + 1])


_CYCLO_DIV: dict[int, UniPoly] = {}


def _cyclotomic_division(n: int) -> UniPoly:
    got = _CYCLO_DIV.get(n)
    if got is not None:
        return got
    x = UniPoly.gen()
    num = x**n - 1
    for d in divisors(n)[:-1]:
        q, r = divmod(num, _cyclotomic_division(d))
        if r:
            raise ArithmeticError("cyclotomic division left a remainder")
        num = q
    _CYCLO_DIV[n] = num
    return num


def cyclotomic(n: int, route: str = "lehmer") -> UniPoly:
    """Phi_n(x) for n >= 2, by Lehmer's exponential formula or by division."""
    if n < 2:
        raise ValueError("cyclotomic needs n >= 2")
    if route == "lehmer":
        return _cyclotomic_lehmer(n)
    if route == "division":
        return _cyclotomic_division(n)
    raise ValueError(f"unknown route {route!r}")
