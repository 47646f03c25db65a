import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from demoivre.algebra import MPoly, symbols
from demoivre.core import demoivre_eval, demoivre_symbolic
from demoivre.determinant import Kind, build, det_exact, extract_demoivre, format_report, identity_check

q = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 9))


def test_build_layouts():
    a = [Fraction(2), Fraction(3)]
    assert build("M", 2, 1, a).as_lists() == [[2, 1], [3, 2]]
    assert build("N", 2, 1, a).as_lists() == [[2, 1], [3, 2]]
    assert build("O", 2, 1, a).as_lists() == [[2, 1], [6, 2]]
    n3 = build(Kind.N, 3, 1, [1, 1, 1]).as_lists()
    assert [n3[0][1], n3[1][2]] == [1, 2]
    with pytest.raises(ValueError):
        build("M", 3, 1, [1, 2])
    with pytest.raises(ValueError):
        build("M", 0, 1, [])


def test_det_small_cases():
    a1, a2 = symbols("a", 2)
    assert det_exact(build("M", 2, 1, [a1, a2])) == a1 * a1 - a2
    assert det_exact([[2, 0, 0], [0, 3, 0], [0, 0, Fraction(1, 6)]]) == 1
    assert det_exact([]) == 1
    assert det_exact([[1, 2], [3, 4]]) == -2
    assert det_exact([[0, 1, 2], [1, 0, 3], [4, -3, 8]]) == -2


def test_det_m4_t_squared_coefficient():
    t = MPoly.var("t")
    a1, a2, a3, a4 = symbols("a", 4)
    d = det_exact(build("M", 4, t, [a1, a2, a3, a4]))
    assert d.coefficient("t", 2) == 2 * a1 * a3 + a2 * a2


def test_det_rejects_floats_and_non_square():
    with pytest.raises(TypeError):
        det_exact([[1.0, 2.0], [3.0, 4.0]])
    with pytest.raises(ValueError):
        det_exact([[1, 2], [3]])


@given(st.lists(st.lists(q, min_size=4, max_size=4), min_size=4, max_size=4))
def test_bareiss_matches_cofactor(rows):
    from demoivre.determinant import _det_laplace
    assert det_exact(rows) == _det_laplace(rows)


@pytest.mark.parametrize("kind", ["M", "N", "O"])
@pytest.mark.parametrize("n", range(1, 7))
def test_identity_symbolic(kind, n):
    report = identity_check(kind, n)
    assert report["pass"]
    assert format_report(report) == f"{kind} n={n}: pass"


@pytest.mark.parametrize("kind", ["M", "N", "O"])
def test_identity_random_rationals(kind):
    rng = random.Random(7)
    for n in range(1, 13):
        a = [Fraction(rng.randint(-20, 20), rng.randint(1, 12)) for _ in range(n)]
        assert identity_check(kind, n, a)["pass"], (kind, n, a)


@pytest.mark.parametrize("n", range(1, 9))
def test_extract_symbolic(n):
    for k in range(n + 1):
        assert extract_demoivre(n, k) == demoivre_symbolic(n, k).to_mpoly()


@given(st.integers(1, 8), st.data())
def test_extract_numeric(n, data):
    a = data.draw(st.lists(q, min_size=n, max_size=n))
    k = data.draw(st.integers(0, n))
    assert extract_demoivre(n, k, a) == MPoly.constant(demoivre_eval(n, k, a))
