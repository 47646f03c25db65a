"""Determinant realizations of signed De Moivre sums.

The matrices are lower Hessenberg: ``a_{i-j+1} t`` on and below the
diagonal, a superdiagonal of ones (or of row indices), zeros above.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import MPoly, factorial, is_exact, symbols
from .core import demoivre_symbolic, power_rows


class Kind(str, enum.Enum):
    M = "M"
    N = "N"
    O = "O"


@dataclass(frozen=True)
class BandMatrix:
    kind: Kind
    n: int
    t: object
    a: tuple
    rows: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


def build(kind, n: int, t, a: Sequence) -> BandMatrix:
    """Lay out the n x n matrix of the given kind (indices 1-based in the comments).

    * ``M``: entry (i, j) = a_{i-j+1} t for i >= j, 1 at (i, i+1);
    * ``N``: as M with j on the superdiagonal of row j;
    * ``O``: as M with the first column entry of row i multiplied by i.
    """
    kind = Kind(kind)
    if n < 1:
        raise ValueError("n must be positive")
    if len(a) < n:
        raise ValueError(f"need a_1..a_{n}, got {len(a)} values")
    zero = a[0] * 0 * t
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i >= j:
                v = a[i - j] * t
                if kind is Kind.O and j == 1:
                    v = v * i
            elif j == i + 1:
                v = zero + (i if kind is Kind.N else 1)
            else:
                v = zero
            row.append(v)
        rows.append(tuple(row))
    return BandMatrix(kind, n, t, tuple(a[:n]), tuple(rows))


def _is_hessenberg(rows) -> bool:
    n = len(rows)
    return all(rows[i][j] == 0 for i in range(n) for j in range(i + 2, n))


def _det_hessenberg(rows):
    # expansion along the last row; division free
    n = len(rows)
    zero = rows[0][0] * 0
    D = [zero + 1]
    for k in range(1, n + 1):
        acc = zero
        prod = zero + 1
        for j in range(k, 0, -1):
            term = rows[k - 1][j - 1] * prod * D[j - 1]
            acc = acc + term if (k - j) % 2 == 0 else acc - term
            if j > 1:
                prod = prod * rows[j - 2][j - 1]
        D.append(acc)
    return D[n]


def _det_bareiss(rows):
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det_laplace(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    zero = rows[0][0] * 0
    total = zero
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _det_laplace(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_exact(matrix) -> object:
    """Exact determinant of a BandMatrix or a square list of lists.

    Hessenberg matrices use the band recurrence; other rational matrices use
    fraction-free elimination; other polynomial matrices fall back to cofactor
    expansion.  Floats are rejected.
    """
    rows = matrix.rows if isinstance(matrix, BandMatrix) else [tuple(r) for r in matrix]
    n = len(rows)
    if n == 0:
        return 1
    if any(len(r) != n for r in rows):
        raise ValueError("matrix must be square")
    if not all(is_exact(x) for r in rows for x in r):
        raise TypeError("det_exact needs exact entries (integers, rationals or polynomials)")
    if _is_hessenberg(rows):
        return _det_hessenberg(rows)
    if all(isinstance(x, (int, Fraction)) for r in rows for x in r):
        d = _det_bareiss([[Fraction(x) for x in r] for r in rows])
        return d.numerator if d.denominator == 1 else d
    return _det_laplace(rows)


# ---------------------------------------------------------------------------
# identity checks


def _lhs(kind: Kind, n: int, t, a: Sequence, symbolic: bool):
    """Signed De Moivre side, computed without touching any determinant."""
    zero = a[0] * 0 * t
    total = zero
    if kind is Kind.N:
        args = [a[i] / (i + 1) for i in range(n)]
    else:
        args = list(a[:n])
    if symbolic:
        names = {f"a{i + 1}": args[i] for i in range(n)}
        values = [demoivre_symbolic(n, k).to_mpoly().subs(names) for k in range(n + 1)]
    else:
        rows = power_rows(args, n, n, zero)
        values = [rows[k][n] for k in range(n + 1)]
    for k in range(n + 1):
        if kind is Kind.O and k == 0:
            continue  # A_{n,0} = 0 for n >= 1
        v = values[k] * t**k
        if kind is Kind.N:
            v = v / factorial(k)
        elif kind is Kind.O:
            v = v / k
        total = total + v if (n + k) % 2 == 0 else total - v
    return total


def _rhs(kind: Kind, n: int, t, a: Sequence):
    d = det_exact(build(kind, n, t, a))
    if kind is Kind.N:
        return d / factorial(n)
    if kind is Kind.O:
        return d / n
    return d


def identity_check(kind, n: int, a: Sequence | None = None) -> dict:
    """Compare both sides of the determinant identity for one (kind, n).

    ``t`` is always a polynomial variable.  With ``a=None`` the sequence is
    symbolic ``a1..an``; otherwise the given values are used.
    """
    kind = Kind(kind)
    t = MPoly.var("t")
    symbolic = a is None
    if symbolic:
        a = symbols("a", n)
    else:
        a = [MPoly.constant(x) for x in a[:n]]
    lhs = _lhs(kind, n, t, a, symbolic)
    rhs = _rhs(kind, n, t, a)
    ok = lhs == rhs
    report = {"kind": kind.value, "n": n, "pass": ok, "lhs": str(lhs)}
    if not ok:
        report["rhs"] = str(rhs)
    return report


def extract_demoivre(n: int, k: int, a: Sequence | None = None):
    """``(-1)^{n+k} [t^k] det M_n(t)``, which reproduces ``A_{n,k}(a)``."""
    t = MPoly.var("t")
    a = symbols("a", n) if a is None else [MPoly.constant(x) for x in a[:n]]
    d = det_exact(build(Kind.M, n, t, a))
    c = d.coefficient("t", k)
    return c if (n + k) % 2 == 0 else -c


def format_report(report: dict) -> str:
    status = "pass" if report["pass"] else "FAIL"
    return f"{report['kind']} n={report['n']}: {status}"

