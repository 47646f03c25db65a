from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from demoivre.algebra import UniPoly, binomial, binomial_general, factorial
from demoivre.core import demoivre_eval
from demoivre.series import (
    Series,
    compose,
    compose_power,
    demoivre_compose,
    demoivre_of_inverse,
    exp_series,
    exp_x,
    geometric,
    inverse_lagrange,
    inverse_recursive,
    log1p_x,
    log_series,
    moyal_forward,
    moyal_invert,
    mul,
    power_binomial,
    power_int,
    reciprocal,
    variable,
)

q = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


@st.composite
def series(draw, order_max=10, constant=None, unit_linear=False):
    order = draw(st.integers(1, order_max))
    c = draw(st.lists(q, min_size=order + 1, max_size=order + 1))
    if constant is not None:
        c[0] = Fraction(constant)
    if unit_linear and c[1] == 0:
        c[1] = Fraction(1)
    return Series(c)


def coeffs(f):
    return list(f.coeffs)


def test_mul_examples():
    assert coeffs(mul(Series([1, 1, 0]), Series([1, -1, 0]))) == [1, 0, -1]
    assert coeffs(Series([1, 2, 3]) * Series([0, 0, 0])) == [0, 0, 0]
    assert coeffs(geometric(3) * geometric(3)) == [1, 2, 3, 4]


def test_mul_ring_mismatch():
    with pytest.raises(ValueError):
        Series([1, 2], ring="integer") * Series([Fraction(1, 2), 1])


def test_power_int_examples():
    assert coeffs(power_int(Series([1, 1, 0, 0]), 3)) == [1, 3, 3, 1]
    assert coeffs(power_int(Series([1, 1, 0, 0, 0]), -1)) == [1, -1, 1, -1, 1]
    with pytest.raises(ArithmeticError):
        power_int(Series([2, 1, 0], ring="integer"), -1)


def test_power_int_gives_demoivre_values():
    from demoivre.algebra import symbols
    a = symbols("a", 6)
    f = Series([0] + a)
    for k in range(7):
        fk = power_int(f, k)
        for n in range(7):
            want = demoivre_eval(n, k, a) if k <= n else (1 if n == k == 0 else 0)
            assert fk[n] == want


@given(series(8), st.integers(0, 5))
def test_power_int_matches_repeated_mul(f, m):
    want = Series([1] + [0] * f.order)
    for _ in range(m):
        want = want * f
    assert power_int(f, m) == want


def test_reciprocal_examples():
    fib = reciprocal(Series([1, -1, -1, 0, 0, 0, 0]))
    assert coeffs(fib) == [1, 1, 2, 3, 5, 8, 13]
    assert coeffs(reciprocal(Series([1, 1, 0, 0]))) == [1, -1, 1, -1]
    with pytest.raises(ZeroDivisionError):
        reciprocal(Series([0, 1, 2]))


@given(series(10, constant=1))
def test_reciprocal_round_trip(f):
    g = reciprocal(f)
    assert f * g == Series([1] + [0] * f.order)
    assert reciprocal(g) == f


def test_compose_examples():
    g = geometric(5)
    f = Series([0, 0, 1, 0, 0, 0])
    assert coeffs(compose(g, f)) == [1, 0, 1, 0, 1, 0]
    assert coeffs(compose(exp_x(6), log1p_x(6))) == [1, 1, 0, 0, 0, 0, 0]
    a = Series([0, Fraction(3, 2), 1, 1])
    b = Series([Fraction(1, 3), Fraction(-2, 5), 7, 1])
    assert compose(b, a)[1] == b[1] * a[1]
    with pytest.raises(ValueError):
        compose(g, Series([1, 1, 0, 0, 0, 0]))


@given(series(10, constant=0), series(10, constant=0), series(10))
def test_compose_associative(f, g, h):
    assert compose(compose(h, g), f) == compose(h, compose(g, f))


def test_power_binomial_examples():
    x = variable(6)
    assert power_binomial(x, -1) == reciprocal(Series([1, 1, 0, 0, 0, 0, 0]))
    half = power_binomial(x, Fraction(1, 2))
    assert half[1] == Fraction(1, 2) and half[2] == Fraction(-1, 8)
    al = UniPoly.gen("alpha")
    sym = power_binomial(variable(3), al)
    assert sym[2] == (al * al - al) / 2


def test_power_binomial_rejects_integer_ring():
    with pytest.raises(TypeError):
        power_binomial(Series([0, 1, 1], ring="integer"), 2)


def test_binomial_law_symbolic():
    al = UniPoly.gen("s")
    # (1+f)^s (1+f)^(2s) = (1+f)^(3s) with s symbolic
    f = Series([0, Fraction(1, 2), -1, Fraction(2, 3), 0, 1, 0, 0, 3])
    left = power_binomial(f, al) * power_binomial(f, 2 * al)
    assert left == power_binomial(f, 3 * al)
    f2 = Series([0, 1, 1, 1, 1, 1, 1, 1, 1])
    assert power_binomial(f2, al) * power_binomial(f2, 1 - al) == Series([1, 1, 1, 1, 1, 1, 1, 1, 1])


@given(series(8, constant=0), st.integers(-3, 3), st.integers(-3, 3))
def test_binomial_law_rational(f, a, b):
    alpha, beta = Fraction(a, 2), Fraction(b, 3)
    assert power_binomial(f, alpha) * power_binomial(f, beta) == power_binomial(f, alpha + beta)


def test_exp_log_examples():
    e = exp_series(variable(4))
    assert coeffs(e) == [Fraction(1, factorial(n)) for n in range(5)]
    lg = log_series(variable(5))
    assert coeffs(lg) == [0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5)]


@given(series(9, constant=0))
def test_exp_log_round_trip(f):
    one = Series([1] + [0] * f.order)
    assert exp_series(log_series(f)) == one + f
    assert log_series(exp_series(f) - one) == f


def test_ell_pipeline_coefficients():
    w = UniPoly.gen("w")
    s = log_series(log1p_x(3), alpha=w)
    assert s[1] == w
    assert s[2] == -w / 2 - w * w / 2


def test_compose_power_examples():
    f = Series([0, 1, Fraction(1, 2), 0, 2])
    g = Series([1, 2, -1, 3, Fraction(1, 4)])
    assert compose_power(g, f, 1) == compose(g, f)
    assert coeffs(compose_power(g, f, 0)) == [1, 0, 0, 0, 0]


@given(series(10, constant=0), series(10), st.integers(0, 4))
def test_compose_power_matches_power_of_compose(f, g, r):
    assert compose_power(g, f, r) == power_int(compose(g, f), r)


@given(st.integers(0, 6), st.integers(0, 3), st.data())
def test_demoivre_compose(n, r, data):
    a = data.draw(st.lists(q, min_size=n + 1, max_size=n + 1))
    b = data.draw(st.lists(q, min_size=n + r + 1, max_size=n + r + 1))
    c = compose(Series(b), Series([0] + a))
    # A_{n+r,r}(c0, c1, ...) is the x^n coefficient of c(x)^r
    assert demoivre_compose(n, r, a, b) == power_int(c, r)[n]


def test_inverse_examples():
    f = Series([0] + [1] * 7)
    g = inverse_recursive(f)
    assert coeffs(g) == [0] + [(-1) ** (m + 1) for m in range(1, 8)]
    assert coeffs(inverse_recursive(variable(4))) == [0, 1, 0, 0, 0]
    assert coeffs(inverse_lagrange(Series([0, 2, 0, 0]))) == [0, Fraction(1, 2), 0, 0]


def test_catalan_from_lagrange():
    f = Series([0, 1, -1, 0, 0, 0])
    assert coeffs(inverse_lagrange(f)) == [0, 1, 1, 2, 5, 14]
    assert coeffs(inverse_recursive(f)) == [0, 1, 1, 2, 5, 14]


def test_integer_ring_lagrange():
    f = Series([0, 1, -1, 0, 0, 0, 0, 0], ring="integer")
    g = inverse_lagrange(f)
    assert g.ring == "integer"
    assert all(isinstance(c, int) for c in g.coeffs)
    assert coeffs(g) == [0] + [binomial(2 * m - 2, m - 1) // m for m in range(1, 8)]
    with pytest.raises(ArithmeticError):
        inverse_lagrange(Series([0, 2, 1], ring="integer"))


def test_inverse_errors():
    with pytest.raises(ValueError):
        inverse_recursive(Series([1, 1, 0]))
    with pytest.raises((ArithmeticError, ZeroDivisionError)):
        inverse_lagrange(Series([0, 0, 1]))


@given(series(15, constant=0, unit_linear=True))
def test_inverse_routes_agree(f):
    g = inverse_lagrange(f)
    assert g == inverse_recursive(f)
    assert compose(g, f) == variable(f.order)
    assert compose(f, g) == variable(f.order)


def test_demoivre_of_inverse_examples():
    f = Series([0, Fraction(2, 3), 1, -1, 0, 2])
    for m in range(1, 6):
        assert demoivre_of_inverse(m, m, f) == Fraction(3, 2) ** m
        assert demoivre_of_inverse(m, 1, f) == inverse_lagrange(f)[m]
    with pytest.raises(ValueError):
        demoivre_of_inverse(2, 3, f)


@given(series(12, constant=0, unit_linear=True), st.data())
def test_demoivre_of_inverse_matches_oracle(f, data):
    g = inverse_recursive(f)
    m = data.draw(st.integers(1, f.order))
    r = data.draw(st.integers(1, m))
    assert demoivre_of_inverse(m, r, f) == demoivre_eval(m, r, list(g.coeffs[1:]))


def test_moyal_examples():
    b = moyal_forward([1, 0, 0, 0, 0], 1)
    assert b == [Fraction(1, factorial(n)) for n in range(1, 6)]
    assert moyal_invert([Fraction(3)], Fraction(2)) == [Fraction(3, 2)]
    with pytest.raises((ValueError, ZeroDivisionError)):
        moyal_invert([1, 2], 0)


@given(st.lists(q, min_size=1, max_size=10))
def test_moyal_round_trip(a):
    assert moyal_invert(moyal_forward(a, Fraction(2)), Fraction(2)) == a


def test_series_equality_and_json():
    f = Series([1, 2, 3, 4])
    assert f == Series([1, 2, 3])
    assert f.truncate(1) == Series([1, 2])
    assert Series.from_json(f.to_json()) == f
    assert f.to_json()["ring"] == "rational"
    assert exp_x(3).pretty() == "1 + x + 1/2*x^2 + 1/6*x^3 + O(x^4)"
    assert Series([0.5, 1.0]).ring == "float"
