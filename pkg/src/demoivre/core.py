"""De Moivre polynomials A_{n,k}.

``A_{n,k}(a_1, a_2, ...)`` is the coefficient of ``x^n`` in
``(a_1 x + a_2 x^2 + ...)^k``.  Two independent evaluation routes are kept:

* enumeration of exponent vectors with multinomial coefficients, and
* the k-recursion ``A_{n,k+1} = sum_j a_{n-j} A_{j,k}`` over a memo table.

Sequences ``a`` are passed 0-indexed, i.e. ``a[0]`` holds ``a_1``.
"""

from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass, field
from itertools import product as _product
from typing import Iterator, Sequence

from .algebra import (
    MPoly,
    binomial,
    binomial_general,
    factorial,
    factorials,
    multinomial,
    one_like,
    stirling1_triangle,
    stirling2_triangle,
    zero_like,
)
from fractions import Fraction

DEFAULT_MAX_N = 200


class BoundExceeded(ValueError):
    """Raised when a size cap protects against runaway enumeration."""


def default_max_n() -> int:
    env = os.environ.get("DEMOIVRE_MAX_N")
    return int(env) if env else DEFAULT_MAX_N


# ---------------------------------------------------------------------------
# exponent vectors


def _vectors(n: int, k: int) -> Iterator[tuple[list[int], int]]:
    # yields (j_1..j_m, multinomial) in descending lexicographic order
    if n < k:
        return
    m = n - k + 1
    if k == 0:
        if n == 0:
            yield [0], 1
        return
    fact = factorials(k)
    j = [0] * m

    def rec(r: int, parts: int, total: int, denom: int):
        # choose j_r for part size r (1-based) with `parts` parts summing to `total` left
        if r == m:
            if parts * m == total:
                j[r - 1] = parts
                yield j, fact[k] // (denom * fact[parts])
                j[r - 1] = 0
            return
        hi = min(parts, total // r)
        for c in range(hi, -1, -1):
            p2, t2 = parts - c, total - r * c
            if p2 * (r + 1) <= t2 <= p2 * m:
                j[r - 1] = c
                yield from rec(r + 1, p2, t2, denom * fact[c])
        j[r - 1] = 0

    yield from rec(1, k, n, 1)


def enumerate_exponent_vectors(n: int, k: int) -> list[tuple[int, ...]]:
    """All ``(j_1..j_m)`` with ``sum r j_r = n`` and ``sum j_r = k``, m = n-k+1.

    Sorted lexicographically descending; empty when ``n < k``.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    return [tuple(v) for v, _ in _vectors(n, k)]


# ---------------------------------------------------------------------------
# symbolic form


@dataclass(frozen=True)
class DeMoivrePoly:
    """Symbolic ``A_{n,k}``: exponent vector -> multinomial coefficient."""

    n: int
    k: int
    terms: dict = field(default_factory=dict)

    @property
    def num_variables(self) -> int:
        return max(self.n - self.k + 1, 0)

    def __len__(self) -> int:
        return len(self.terms)

    def coefficients(self) -> list[int]:
        return list(self.terms.values())

    def coefficient_gcd(self) -> int:
        return math.gcd(*self.terms.values()) if self.terms else 0

    def evaluate(self, a: Sequence):
        """Substitute ``a_r = a[r-1]``."""
        m = self.num_variables
        if self.terms and len(a) < m and self.k > 0:
            raise ValueError(f"A_{{{self.n},{self.k}}} needs {m} coefficients, got {len(a)}")
        zero = zero_like(a[0]) if len(a) else 0
        total = zero
        powers: dict = {}
        for vec, coeff in self.terms.items():
            term = coeff
            for r, jr in enumerate(vec):
                if jr:
                    key = (r, jr)
                    p = powers.get(key)
                    if p is None:
                        p = powers[key] = a[r] ** jr
                    term = p * term
            total = total + term
        return total

    def to_mpoly(self, prefix: str = "a") -> MPoly:
        out = {}
        for vec, coeff in self.terms.items():
            mono = tuple(sorted((f"{prefix}{r + 1}", jr) for r, jr in enumerate(vec) if jr))
            out[mono] = coeff
        return MPoly(out)

    def format_lines(self, prefix: str = "a") -> list[str]:
        lines = []
        for vec, coeff in self.terms.items():
            mono = " ".join(
                f"{prefix}{r + 1}" if jr == 1 else f"{prefix}{r + 1}^{jr}"
                for r, jr in enumerate(vec)
                if jr
            )
            lines.append(f"{coeff} * {mono}" if mono else str(coeff))
        return lines or ["0"]

    def __str__(self) -> str:
        return "\n".join(self.format_lines())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "terms": [{"coeff": c, "exponents": list(v)} for v, c in self.terms.items()],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def demoivre_symbolic(n: int, k: int, max_n: int | None = None) -> DeMoivrePoly:
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    cap = default_max_n() if max_n is None else max_n
    if n > cap:
        raise BoundExceeded(f"n={n} exceeds the size bound {cap}; pass max_n to override")
    return DeMoivrePoly(n, k, {tuple(v): c for v, c in _vectors(n, k)})


# ---------------------------------------------------------------------------
# numeric kernels


def power_rows(a: Sequence, n_max: int, k_max: int, zero=None) -> list[list]:
    """Rows ``R[k][n] = A_{n,k}(a)`` for ``n <= n_max``, ``k <= k_max``.

    Row ``k+1`` is built from row ``k`` by the convolution
    ``A_{n,k+1} = sum_i a_i A_{n-i,k}``, skipping zero ``a_i``.  ``a`` may be
    shorter than ``n_max``; missing entries are treated as zero, so only the
    entries each ``A_{n,k}`` genuinely depends on need to be supplied.
    """
    if zero is None:
        zero = zero_like(a[0]) if len(a) else 0
    one = zero + 1
    nz = [(i, ai) for i, ai in enumerate(a[:n_max], 1) if ai != 0]
    rows = [[one] + [zero] * n_max]
    for k in range(k_max):
        prev = rows[-1]
        row = [zero] * (n_max + 1)
        for n in range(k + 1, n_max + 1):
            acc = zero
            lim = n - k
            for i, ai in nz:
                if i > lim:
                    break
                p = prev[n - i]
                if p != 0:
                    acc = acc + ai * p
            row[n] = acc
        rows.append(row)
    return rows


def demoivre_table(a: Sequence, n_max: int, k_max: int | None = None) -> list[list]:
    """``table[k][n] = A_{n,k}(a)`` for all ``0 <= k <= k_max``, ``0 <= n <= n_max``."""
    if k_max is None:
        k_max = n_max
    if k_max >= 1 and len(a) < n_max:
        raise ValueError(f"need {n_max} coefficients for a full table, got {len(a)}")
    return power_rows(a, n_max, k_max)


def _check_len(n: int, k: int, a: Sequence) -> None:
    if k >= 1 and n >= k and len(a) < n - k + 1:
        raise ValueError(f"A_{{{n},{k}}} needs a_1..a_{n - k + 1}, got {len(a)} coefficients")


def demoivre_eval_recursive(n: int, k: int, a: Sequence):
    """``A_{n,k}(a)`` by the k-recursion on a per-call memo table."""
    _check_len(n, k, a)
    zero = zero_like(a[0]) if len(a) else 0
    if n < k or n < 0:
        return zero
    if k == 0:
        return zero + 1 if n == 0 else zero
    rows = power_rows(a[: n - k + 1], n, k, zero)
    return rows[k][n]


def demoivre_eval(n: int, k: int, a: Sequence, method: str = "enumerate", max_n: int | None = None):
    """Value of ``A_{n,k}(a)``.

    ``method="enumerate"`` substitutes into :func:`demoivre_symbolic`;
    ``method="recursive"`` uses :func:`demoivre_eval_recursive`.
    """
    if method == "recursive":
        return demoivre_eval_recursive(n, k, a)
    if method != "enumerate":
        raise ValueError(f"unknown method {method!r}")
    _check_len(n, k, a)
    if n < k:
        return zero_like(a[0]) if len(a) else 0
    poly = demoivre_symbolic(n, k, max_n=max_n)
    if not poly.terms:
        return zero_like(a[0]) if len(a) else 0
    if k == 0:
        return one_like(a[0]) if len(a) else 1
    return poly.evaluate(a)


# ---------------------------------------------------------------------------
# closed forms


class Family(str, enum.Enum):
    ALL_ONES = "all-ones"
    BINOM_Z = "binom-z"
    BINOM_SHIFTED_Z = "binom-shifted-z"
    EXP_RECIPROCAL_FACTORIALS = "exp-reciprocal-factorials"
    STIRLING_SUBSET = "stirling-subset"
    STIRLING_CYCLE = "stirling-cycle"


def special_arguments(family, length: int, z=None) -> list:
    """The argument sequence whose ``A_{n,k}`` the family's closed form gives."""
    family = Family(family)
    if family is Family.ALL_ONES:
        return [1] * length
    if family is Family.BINOM_Z:
        return [binomial_general(z, i) for i in range(length)]
    if family is Family.BINOM_SHIFTED_Z:
        return [binomial_general(z + i, i) for i in range(length)]
    if family is Family.EXP_RECIPROCAL_FACTORIALS:
        return [Fraction(1, factorial(i)) for i in range(length)]
    if family is Family.STIRLING_SUBSET:
        return [Fraction(1, factorial(i)) for i in range(1, length + 1)]
    return [Fraction(1, i) for i in range(1, length + 1)]


def special_eval(family, n: int, k: int, z=None):
    """Closed-form value of ``A_{n,k}`` at one of the classical sequences.

    ========================= ============================ ====================
    family                    arguments                    value
    ========================= ============================ ====================
    all-ones                  1, 1, 1, ...                 C(n-1, n-k)
    binom-z                   C(z,0), C(z,1), ...          C(kz, n-k)
    binom-shifted-z           C(z,0), C(z+1,1), ...        C(n+kz-1, n-k)
    exp-reciprocal-factorials 1/0!, 1/1!, 1/2!, ...        k^(n-k)/(n-k)!
    stirling-subset           1/1!, 1/2!, 1/3!, ...        k!/n! {n k}
    stirling-cycle            1/1, 1/2, 1/3, ...           k!/n! [n k]
    ========================= ============================ ====================
    """
    try:
        family = Family(family)
    except ValueError:
        raise ValueError(f"unknown family {family!r}") from None
    if family in (Family.BINOM_Z, Family.BINOM_SHIFTED_Z) and z is None:
        raise ValueError(f"family {family.value} needs z")
    if n < k:
        return 0
    if family is Family.ALL_ONES:
        return binomial(n - 1, n - k)
    if family is Family.BINOM_Z:
        return binomial_general(z * k, n - k)
    if family is Family.BINOM_SHIFTED_Z:
        return binomial_general(z * k + (n - 1), n - k)
    if family is Family.EXP_RECIPROCAL_FACTORIALS:
        return Fraction(k ** (n - k), factorial(n - k))
    if family is Family.STIRLING_SUBSET:
        return Fraction(factorial(k) * stirling2_triangle(n)[n][k], factorial(n))
    return Fraction(factorial(k) * stirling1_triangle(n)[n][k], factorial(n))


# ---------------------------------------------------------------------------
# gcd of the coefficients


def coefficient_gcd(n: int, k: int) -> int:
    """gcd of the multinomial coefficients of ``A_{n,k}`` (which is k/gcd(n,k))."""
    if k < 1 or n < k:
        raise ValueError("need n >= k >= 1")
    g = 0
    for _, c in _vectors(n, k):
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


# ---------------------------------------------------------------------------
# shifted arguments


def _compositions(k: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (k,)
        return
    for first in range(k + 1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


class Direction(str, enum.Enum):
    DROP_PREFIX = "drop-prefix"
    RESTORE_PREFIX = "restore-prefix"


def shift_arguments(n: int, k: int, r: int, a: Sequence, direction="drop-prefix"):
    """Move between ``A_{n,k}(a_1, a_2, ...)`` and ``A_{n,k}(a_{r+1}, a_{r+2}, ...)``.

    ``drop-prefix`` returns ``A_{n,k}(a_{r+1}, ...)`` assembled from De Moivre
    values over the full sequence; ``restore-prefix`` returns
    ``A_{n,k}(a_1, ...)`` assembled from values over the shifted sequence.
    Both expand over ``j_1 + ... + j_{r+1} = k`` with multinomial weights.
    """
    direction = Direction(direction)
    if r < 0 or n < 0 or k < 0:
        raise ValueError("n, k, r must be nonnegative")
    zero = zero_like(a[0]) if len(a) else 0
    span = n - k + 1 if (k >= 1 and n >= k) else 0
    if direction is Direction.DROP_PREFIX:
        if len(a) < r + span:
            raise ValueError(f"need {r + span} coefficients, got {len(a)}")
        if r == 0:
            return demoivre_eval_recursive(n, k, a)
        top = n + r * k
        rows = power_rows(a[: r + span], top, k, zero)
        total = zero
        for js in _compositions(k, r + 1):
            J = sum((r - 1 - i) * js[i] for i in range(r - 1))
            idx = n + J + r * js[r]
            weight = multinomial(js)
            for i in range(r):
                if js[i]:
                    weight = weight * (-a[i]) ** js[i]
            total = total + weight * rows[js[r]][idx]
        return total

    if len(a) < span:
        raise ValueError(f"need {span} coefficients, got {len(a)}")
    if r == 0:
        return demoivre_eval_recursive(n, k, a)
    padded = list(a[:span]) + [zero] * max(0, r - span)
    shifted = padded[r:]
    rows = power_rows(shifted, max(n, 0), k, zero)
    total = zero
    for js in _compositions(k, r + 1):
        J = sum((r - 1 - i) * js[i] for i in range(r - 1))
        idx = n + J - r * k
        if idx < 0:
            continue
        weight = multinomial(js)
        for i in range(r):
            if js[i]:
                weight = weight * padded[i] ** js[i]
        total = total + weight * rows[js[r]][idx]
    return total
