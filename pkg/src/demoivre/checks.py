"""Identity-check suites behind ``demoivre check``.

Every case computes the same quantity two ways and records both sides.
Random inputs come from a seeded ``random.Random`` so reports are
reproducible byte for byte.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import asymptotics as asy
from . import determinant as det
from . import sequences as seq
from . import series as ser
from .algebra import binomial, format_rational
from .core import (
    Family,
    coefficient_gcd,
    demoivre_eval,
    demoivre_symbolic,
    shift_arguments,
    special_arguments,
    special_eval,
)

DEFAULT_SEED = 20240607

SUITES = ("demoivre", "series", "determinant", "sequences", "asymptotics")


@dataclass
class Case:
    id: str
    inputs: dict
    source: str
    passed: bool
    lhs: object = None
    rhs: object = None

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "inputs": self.inputs,
            "source": self.source,
            "pass": self.passed,
            "lhs": _show(self.lhs),
            "rhs": _show(self.rhs),
        }


@dataclass
class CheckReport:
    suite: str
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.cases)

    @property
    def failed(self) -> int:
        return len(self.cases) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def sorted(self) -> "CheckReport":
        return CheckReport(self.suite, sorted(self.cases, key=lambda c: c.id))

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": [c.to_json() for c in sorted(self.cases, key=lambda c: c.id)],
            "summary": {"total": len(self.cases), "passed": self.passed, "failed": self.failed},
        }

    def lines(self) -> list[str]:
        out = []
        for c in sorted(self.cases, key=lambda c: c.id):
            line = f"{'pass' if c.passed else 'FAIL'}  {self.suite}/{c.id}"
            if not c.passed:
                line += f"  lhs={_show(c.lhs)} rhs={_show(c.rhs)}"
            out.append(line)
        out.append(f"{self.suite}: {self.passed}/{len(self.cases)} passed")
        return out


def _show(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, (list, tuple)):
        return [_show(v) for v in x]
    return str(x)


class _Builder:
    def __init__(self, suite: str):
        self.report = CheckReport(suite)

    def eq(self, id: str, source: str, lhs, rhs, **inputs) -> None:
        self.report.cases.append(Case(id, {k: _show(v) for k, v in inputs.items()}, source, lhs == rhs, lhs, rhs))

    def ok(self, id: str, source: str, flag: bool, lhs=None, rhs=None, **inputs) -> None:
        self.report.cases.append(Case(id, {k: _show(v) for k, v in inputs.items()}, source, bool(flag), lhs, rhs))

    def guard(self, id: str, source: str, fn: Callable[[], None]) -> None:
        # an exception inside a case is a failed case, not a crash
        try:
            fn()
        except Exception as exc:  # noqa: BLE001
            self.report.cases.append(Case(id, {}, source, False, f"{type(exc).__name__}: {exc}", None))


def _cap(default: int, max_n: int | None) -> int:
    return default if max_n is None else min(default, max_n)


def random_rational(rng: random.Random, size: int = 9) -> Fraction:
    return Fraction(rng.randint(-size, size), rng.randint(1, size))


# ---------------------------------------------------------------------------


A_10_6_LINES = [
    "6 * a1^5 a5",
    "30 * a1^4 a2 a4",
    "15 * a1^4 a3^2",
    "60 * a1^3 a2^2 a3",
    "15 * a1^2 a2^4",
]


def check_demoivre(max_n: int | None = None, seed: int = DEFAULT_SEED) -> CheckReport:
    b = _Builder("demoivre")
    rng = random.Random(seed)

    def symbolic_10_6():
        if max_n is None or max_n >= 10:
            b.eq("symbolic-10-6", "displayed A(10,6)", sorted(demoivre_symbolic(10, 6).format_lines()), sorted(A_10_6_LINES))

    b.guard("symbolic-10-6", "displayed A(10,6)", symbolic_10_6)

    top = _cap(30, max_n)
    bad = [(n, k) for n in range(1, top + 1) for k in range(1, n + 1) if coefficient_gcd(n, k) != k // math.gcd(n, k)]
    b.ok(f"gcd-formula-n<={top}", "gcd of coefficients is k/gcd(n,k)", not bad, bad[:5], [])

    top = _cap(25, max_n)
    for i in range(30):
        n = rng.randint(1, top)
        k = rng.randint(1, n)
        a = [random_rational(rng) for _ in range(n - k + 1)]
        b.eq(f"dual-path-{i:02d}", "enumeration vs k-recursion", demoivre_eval(n, k, a), demoivre_eval(n, k, a, "recursive"), n=n, k=k)

    top = _cap(12, max_n)
    for fam in Family:
        z = Fraction(5, 3) if fam in (Family.BINOM_Z, Family.BINOM_SHIFTED_Z) else None
        for n in range(1, top + 1):
            for k in range(1, n + 1):
                a = special_arguments(fam, n - k + 1, z)
                b.eq(f"family-{fam.value}-{n:02d}-{k:02d}", "closed form for special arguments",
                     demoivre_eval(n, k, a, "recursive"), special_eval(fam, n, k, z))

    for n in range(1, top + 1):
        for k in range(1, n + 1):
            b.eq(f"term-count-{n:02d}-{k:02d}", "terms of A(n,k) = p_k(n-k)",
                 len(demoivre_symbolic(n, k)), seq.partitions_p_k(n - k, k))

    for i in range(10):
        n = rng.randint(2, top)
        k = rng.randint(1, n)
        r = rng.randint(0, 3)
        a = [random_rational(rng) for _ in range(n + r)]
        b.eq(f"shift-drop-{i:02d}", "argument shift identity", shift_arguments(n, k, r, a, "drop-prefix"),
             demoivre_eval(n, k, a[r:], "recursive"), n=n, k=k, r=r)
        b.eq(f"shift-restore-{i:02d}", "argument shift identity", shift_arguments(n, k, r, a, "restore-prefix"),
             demoivre_eval(n, k, a, "recursive"), n=n, k=k, r=r)
    return b.report


def _random_series(rng: random.Random, order: int, invertible: bool = False) -> ser.Series:
    coeffs = [Fraction(0)] + [random_rational(rng) for _ in range(order)]
    if invertible and coeffs[1] == 0:
        coeffs[1] = Fraction(1)
    return ser.Series(coeffs)


def check_series(max_n: int | None = None, seed: int = DEFAULT_SEED) -> CheckReport:
    b = _Builder("series")
    rng = random.Random(seed)
    top = max(2, _cap(12, max_n))

    fib = ser.reciprocal(ser.Series([1, -1, -1] + [0] * (top - 2)))
    want = [1, 1]
    while len(want) <= top:
        want.append(want[-1] + want[-2])
    b.eq("reciprocal-fibonacci", "reciprocal of 1-x-x^2", list(fib.coeffs), [Fraction(v) for v in want[: top + 1]])

    cat = ser.inverse_lagrange(ser.Series([0, 1, -1] + [0] * (top - 2), ring="integer"))
    b.eq("lagrange-catalan", "inverse of x-x^2", list(cat.coeffs), [0] + [binomial(2 * m - 2, m - 1) // m for m in range(1, top + 1)])

    b.eq("exp-log", "exp(log(1+x)) = 1+x", list(ser.exp_series(ser.log1p_x(top)).coeffs), [1, 1] + [0] * (top - 1))

    for i in range(20):
        order = rng.randint(1, top)
        f = _random_series(rng, order, invertible=True)
        g1, g2 = ser.inverse_lagrange(f), ser.inverse_recursive(f)
        b.eq(f"inverse-{i:02d}", "Lagrange vs recursive inverse", list(g1.coeffs), list(g2.coeffs), order=order)
        b.eq(f"inverse-compose-{i:02d}", "g(f(x)) = x", list(ser.compose(g1, f).coeffs), list(ser.variable(order).coeffs))

    for i in range(5):
        order = rng.randint(2, top)
        f = _random_series(rng, order)
        g = ser.Series([random_rational(rng) for _ in range(order + 1)])
        r = rng.randint(0, 4)
        b.eq(f"compose-power-{i:02d}", "(g o f)^r two ways", list(ser.compose_power(g, f, r).coeffs),
             list(ser.power_int(ser.compose(g, f), r).coeffs), r=r)

    for i in range(5):
        order = rng.randint(2, min(top, 8))
        f = _random_series(rng, order, invertible=True)
        ginv = ser.inverse_recursive(f)
        m = rng.randint(1, order)
        r = rng.randint(1, m)
        b.eq(f"inverse-demoivre-{i:02d}", "A(m,r) of the inverse read off f", ser.demoivre_of_inverse(m, r, f),
             demoivre_eval(m, r, list(ginv.coeffs[1:]), "recursive"), m=m, r=r)

    for i in range(5):
        a = [random_rational(rng) for _ in range(top)]
        t = random_rational(rng) or Fraction(1)
        b.eq(f"moyal-{i:02d}", "forward then inverse map", ser.moyal_invert(ser.moyal_forward(a, t), t), a)
    return b.report


def check_determinant(max_n: int | None = None, seed: int = DEFAULT_SEED) -> CheckReport:
    b = _Builder("determinant")
    rng = random.Random(seed)
    for kind in det.Kind:
        for n in range(1, _cap(6, max_n) + 1):
            r = det.identity_check(kind, n)
            b.ok(f"{kind.value}-symbolic-{n:02d}", "signed De Moivre sum = band determinant", r["pass"], r["lhs"], r.get("rhs", r["lhs"]), n=n)
        for n in range(1, _cap(12, max_n) + 1):
            a = [random_rational(rng) for _ in range(n)]
            r = det.identity_check(kind, n, a)
            b.ok(f"{kind.value}-random-{n:02d}", "signed De Moivre sum = band determinant", r["pass"], r["lhs"], r.get("rhs", r["lhs"]), n=n)
    for n in range(1, _cap(5, max_n) + 1):
        for k in range(1, n + 1):
            b.eq(f"extract-{n}-{k}", "coefficient of t^k in det M", det.extract_demoivre(n, k), demoivre_symbolic(n, k).to_mpoly())
    return b.report


def check_sequences(max_n: int | None = None, seed: int = DEFAULT_SEED) -> CheckReport:
    b = _Builder("sequences")
    top = _cap(60, max_n)
    p = seq.partition_numbers(top)
    b.eq(f"partition-demoivre-n<={top}", "pentagonal vs De Moivre", seq.partition_numbers(top, "demoivre"), p)
    b.eq(f"partition-sigma-n<={top}", "pentagonal vs divisor sums", seq.partition_numbers(top, "sigma"), p)

    top = _cap(100, max_n)
    tau = seq.tau_numbers(top)
    b.eq(f"tau-demoivre-n<={top}", "eta product vs A(n+23,24)", seq.tau_numbers(top, "demoivre"), tau)
    bad = [n for n in range(1, top + 1) if tau[n] % (24 // math.gcd(n + 23, 24))]
    b.ok(f"tau-divisibility-n<={top}", "24/gcd(n+23,24) divides tau(n)", not bad, bad, [])

    for n in range(1, _cap(40, max_n) + 1):
        r = seq.tau_partition_inversions(n)
        for name, c in r["cases"].items():
            b.eq(f"inversion-{name}-{n:02d}", f"tau/p relation {name}", c["lhs"], c["rhs"], n=n)

    top = _cap(20, max_n)
    for n in range(top + 1):
        b.eq(f"stirling-subset-{n:02d}", "De Moivre vs triangle",
             [seq.stirling_subset(n, k) for k in range(n + 1)], [seq.stirling_subset(n, k, "recurrence") for k in range(n + 1)])
        b.eq(f"stirling-cycle-{n:02d}", "De Moivre vs triangle",
             [seq.stirling_cycle(n, k) for k in range(n + 1)], [seq.stirling_cycle(n, k, "recurrence") for k in range(n + 1)])

    top = _cap(105, max_n)
    for n in range(2, top + 1):
        b.guard(f"cyclotomic-{n:03d}", "Lehmer vs division",
                lambda n=n: b.eq(f"cyclotomic-{n:03d}", "Lehmer vs division", seq.cyclotomic(n), seq.cyclotomic(n, "division")))

    top = _cap(30, max_n)
    b.eq(f"bernoulli-n<={top}", "De Moivre vs recurrence", seq.bernoulli_numbers(top, "demoivre"), seq.bernoulli_numbers(top))
    for n in range(1, _cap(12, max_n) + 1):
        lhs, rhs = seq.bernoulli_tan_identity(n)
        b.eq(f"bernoulli-tan-{n:02d}", "tangent/arctangent identity", lhs, rhs, n=n)
        bp = seq.bernoulli_poly(n)
        b.eq(f"bernoulli-poly-{n:02d}", "De Moivre vs binomial sum", bp, seq.bernoulli_poly(n, "classical"))
        one_minus_x = 1 - bp.gen()
        b.eq(f"bernoulli-symmetry-{n:02d}", "B_n(1-x) = (-1)^n B_n(x)", bp.compose(one_minus_x), (-1) ** n * bp)
    for n in range(_cap(10, max_n) + 1):
        nor = seq.norlund_poly(n)
        b.eq(f"norlund-{n:02d}", "De Moivre vs Stirling form", nor, seq.norlund_poly(n, "stirling"))
        b.eq(f"norlund-at-1-{n:02d}", "B_n^(1) = B_n", nor(1), seq.bernoulli_number(n))

    for kind in seq.OrthoKind:
        lam = Fraction(3, 2) if kind is seq.OrthoKind.GEGENBAUER else None
        for n in range(_cap(12, max_n) + 1):
            d = seq.orthogonal_poly(kind, n, lam)
            for route in ("explicit", "recurrence"):
                b.eq(f"ortho-{kind.value}-{route}-{n:02d}", f"De Moivre vs {route}", d, seq.orthogonal_poly(kind, n, lam, route))

    top = _cap(20, max_n)
    b.eq(f"p4-n<={top}", "displayed sequence for four parts", seq.p4_via_demoivre(top), [seq.partitions_p_k(n, 4) for n in range(top + 1)])
    return b.report


def check_asymptotics(max_n: int | None = None, seed: int = DEFAULT_SEED) -> CheckReport:
    b = _Builder("asymptotics")
    for m in range(_cap(8, max_n) + 1):
        vals = {r: asy.stirling_gamma(m, r) for r in asy.GAMMA_ROUTES}
        ref = vals["perron"]
        for r, v in vals.items():
            if r != "perron":
                b.eq(f"gamma-{m}-{r}", "Laplace coefficients vs " + r, v, ref, m=m)
    b.eq("gamma-1", "known value", asy.stirling_gamma(1), Fraction(1, 12))
    b.eq("gamma-2", "known value", asy.stirling_gamma(2), Fraction(1, 288))

    C = asy.partition_asym_coeffs(3)
    pi, r6 = math.pi, math.sqrt(6)
    c1 = asy.PiForm({(1, -1): Fraction(-1, 2), (1, 1): Fraction(-1, 144)})
    c2 = asy.PiForm({(0, 0): Fraction(1, 16), (0, 2): Fraction(1, 6912)})
    b.eq("partition-C1-exact", "-(72+pi^2)/(24 sqrt6 pi)", C.exact[1], c1)
    b.eq("partition-C2-exact", "(432+pi^2)/6912", C.exact[2], c2)
    b.ok("partition-C1-float", "-0.443288", f"{C[1]:.6g}" == "-0.443288", C[1], -(72 + pi**2) / (24 * r6 * pi))
    b.ok("partition-C2-float", "0.0639279", f"{C[2]:.6g}" == "0.0639279", C[2], (432 + pi**2) / 6912)

    ns = (100, 200, 400, 800)
    p = seq.partition_numbers(max(ns))
    for R in (1, 2, 3):
        errs = [asy.partition_relative_error(n, R, p[n]) for n in ns]
        b.ok(f"partition-monotone-R{R}", "relative error non-increasing in n", all(x >= y for x, y in zip(errs, errs[1:])), errs, None)
    b.ok("partition-R3-n800", "relative error below 1e-3", asy.partition_relative_error(800, 3, p[800]) < 1e-3,
         asy.partition_relative_error(800, 3, p[800]), 1e-3)

    top = _cap(12, max_n)
    b.eq(f"ell-poly-n<={top}", "Stirling form vs series", [asy.ell_poly(n) for n in range(1, top + 1)], asy.ell_poly_series(top))

    for x in (0.0, 0.5, 1.0, math.e, 10.0, 1e3, 1e8):
        w = asy.lambert_w(x)
        resid = abs(w * math.exp(w) - x) / max(x, 1e-300) if x else abs(w)
        b.ok(f"lambert-{x:g}", "W e^W = x", resid <= 1e-13 * 4, resid, 0.0)

    for R in (1, 2, 3):
        r50 = asy.validate_saddle_expansion(50, 1.0, R)
        r200 = asy.validate_saddle_expansion(200, 1.0, R)
        b.ok(f"integral-trend-R{R}", "error at n=200 below error at n=50", r200["rel_error"] < r50["rel_error"],
             r200["rel_error"], r50["rel_error"])
    r = asy.validate_saddle_expansion(50, 1.0, 1)
    b.ok("integral-n50-R1", "relative error under 10%", r["rel_error"] < 0.1, r["rel_error"], 0.1)

    g = asy.gamma_taylor_check(20)
    for pt in g["points"]:
        b.ok(f"gamma-taylor-z={pt['z']:+.3f}", "Taylor sum vs Gamma(1+z)", pt["pass"], pt["error"], pt["tol"])
    b.ok("gamma-reciprocal", "exp(S) exp(-S) = 1 with alternating gammas", g["reciprocal"]["pass"])
    return b.report


_RUNNERS = {
    "demoivre": check_demoivre,
    "series": check_series,
    "determinant": check_determinant,
    "sequences": check_sequences,
    "asymptotics": check_asymptotics,
}


def run_suite(name: str, max_n: int | None = None, seed: int = DEFAULT_SEED) -> list[CheckReport]:
    if name == "all":
        return [_RUNNERS[s](max_n, seed).sorted() for s in SUITES]
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}")
    return [_RUNNERS[name](max_n, seed).sorted()]
