"""Hypothesis strategies for exact objects."""
from fractions import Fraction

import sympy
from hypothesis import strategies as st

from fanolift.exact.poly import BiPoly, UniPoly

small_ints = st.integers(min_value=-12, max_value=12)
fractions = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))


def unipolys(max_degree=5, var="X"):
    return st.lists(fractions, min_size=0, max_size=max_degree + 1).map(lambda cs: UniPoly(cs, var))


def nonzero_unipolys(max_degree=5, var="X"):
    return unipolys(max_degree, var).filter(lambda p: not p.is_zero())


def bipolys(max_deg=3):
    row = st.lists(fractions, min_size=1, max_size=max_deg + 1)
    return st.lists(row, min_size=1, max_size=max_deg + 1).map(lambda m: BiPoly.from_matrix(m))


def distinct_fractions(n):
    return st.lists(fractions, min_size=n, max_size=n, unique=True)


def distinct_ints(n, lo=-15, hi=15):
    return st.lists(st.integers(min_value=lo, max_value=hi), min_size=n, max_size=n, unique=True)


# -- sympy bridges used as independent oracles --------------------------------

X, Y, T = sympy.symbols("X Y T")


def to_sympy(p, var=X):
    return sum((sympy.Rational(c.numerator, c.denominator) * var**i for i, c in enumerate(p.coeffs)),
               sympy.Integer(0))


def bi_to_sympy(b, x=X, y=Y):
    return sum((sympy.Rational(c.numerator, c.denominator) * x**i * y**j for (i, j), c in b.terms()),
               sympy.Integer(0))


def from_sympy(expr, var=X, name="X"):
    poly = sympy.Poly(sympy.expand(expr), var)
    cs = list(reversed(poly.all_coeffs()))
    return UniPoly([Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in cs], name)
