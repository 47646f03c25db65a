"""De Moivre polynomials A_{n,k}(a) = [x^n](a_1 x + a_2 x^2 + ...)^k and their uses.

Submodules: ``algebra`` (rings, polynomials, combinatorics), ``core``
(A_{n,k} itself), ``series`` (power series operations), ``determinant``
(band-matrix realizations), ``sequences`` (partitions, tau, Bernoulli and
friends), ``asymptotics`` (expansion coefficients) and ``cli``.
"""

from .algebra import LaurentInU, MPoly, UniPoly, format_rational, parse_rational
from .core import (
    BoundExceeded,
    DeMoivrePoly,
    coefficient_gcd,
    demoivre_eval,
    demoivre_eval_recursive,
    demoivre_symbolic,
    demoivre_table,
    enumerate_exponent_vectors,
    shift_arguments,
    special_eval,
)
from .series import Series

__version__ = "0.1.0"
