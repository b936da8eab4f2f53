from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from fanolift.errors import DomainError, NotAPowerError
from fanolift.exact.poly import BiPoly, UniPoly, fraction_to_str, parse_fraction, proportional
from strategies import (X, Y, bi_to_sympy, bipolys, fractions, from_sympy, nonzero_unipolys, to_sympy,
                        unipolys)


@given(unipolys(), unipolys(), unipolys())
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == UniPoly([])


@given(unipolys(), unipolys())
def test_multiplication_matches_sympy(a, b):
    assert to_sympy(a * b).expand() == (to_sympy(a) * to_sympy(b)).expand()


@given(unipolys(6), nonzero_unipolys(3))
def test_divmod_reconstructs(a, b):
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@given(nonzero_unipolys(4), nonzero_unipolys(3))
def test_exact_div_of_product(a, b):
    assert (a * b).exact_div(b) == a


def test_exact_div_rejects_remainder():
    with pytest.raises(Exception):
        UniPoly([1, 0, 1]).exact_div(UniPoly([1, 1]))


@given(nonzero_unipolys(4), nonzero_unipolys(4))
def test_gcd_matches_sympy(a, b):
    g = a.gcd(b)
    oracle = sympy.gcd(to_sympy(a), to_sympy(b))
    assert g.monic() == from_sympy(oracle).monic()


@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(1, 3)), min_size=1, max_size=4, unique_by=lambda t: t[0]))
def test_squarefree_decomposition(pairs):
    p = UniPoly([1])
    for r, m in pairs:
        p = p * UniPoly([-r, 1]) ** m
    out = p.squarefree_decomposition()
    rebuilt = UniPoly([1])
    for f, m in out:
        rebuilt = rebuilt * f ** m
    assert rebuilt.monic() == p.monic()
    assert sorted(m for f, m in out for _ in range(f.degree)) == sorted(m for _, m in pairs)


@given(nonzero_unipolys(3), st.integers(2, 4))
def test_nth_root_of_power(p, k):
    assume(p.degree >= 1)
    r = (p ** k).normalized().nth_root(k)
    assert proportional(r, p) is not None


def test_nth_root_rejects_non_power():
    with pytest.raises(NotAPowerError):
        UniPoly([1, 0, 0, 1]).nth_root(2)


@given(unipolys(), fractions)
def test_evaluation_and_shift(p, c):
    assert p.shift(c)(0) == p(c)


@given(nonzero_unipolys(), fractions)
def test_normalizations(p, c):
    assume(c != 0)
    assert (p * c).primitive() == p.primitive() or (p * c).primitive() == -p.primitive()
    assert (p * c).normalized() == p.normalized()
    assert proportional(p * c, p) == c


@given(unipolys())
def test_json_round_trip(p):
    assert UniPoly.from_json(p.to_json()) == p


@given(fractions)
def test_fraction_string_round_trip(c):
    assert parse_fraction(fraction_to_str(c)) == c


def test_parse_fraction_forms():
    assert parse_fraction("-3/6") == Fraction(-1, 2)
    assert parse_fraction(" 7 ") == 7
    with pytest.raises(DomainError):
        parse_fraction(0.5)


@given(bipolys(), bipolys())
def test_bipoly_product_matches_sympy(a, b):
    assert sympy.expand(bi_to_sympy(a * b) - bi_to_sympy(a) * bi_to_sympy(b)) == 0


@given(bipolys(), nonzero_unipolys(2))
def test_bipoly_divmod_first(a, d):
    assume(d.degree >= 1)
    q, r = a.divmod_first(d)
    assert q * BiPoly.from_uni(d) + r == a
    assert r.is_zero() or r.bidegree[0] < d.degree


@given(bipolys(2), bipolys(2))
def test_bipoly_exact_div(a, b):
    assume(not b.is_zero())
    assert (a * b).exact_div(b) == a


@given(bipolys(), fractions, fractions)
def test_bipoly_evaluation(b, u, v):
    assert b(u, v) == b.eval_first(u)(v) == b.eval_second(v)(u)
    assert b.swap()(v, u) == b(u, v)


@given(bipolys())
def test_bipoly_derivative_matches_sympy(b):
    assert sympy.expand(bi_to_sympy(b.diff("X")) - sympy.diff(bi_to_sympy(b), X)) == 0
    assert sympy.expand(bi_to_sympy(b.diff("Y")) - sympy.diff(bi_to_sympy(b), Y)) == 0


@given(bipolys())
def test_bipoly_json_round_trip(b):
    assert BiPoly.from_json(b.to_json()) == b


def test_divides_by_power_is_sharp():
    d = BiPoly.from_matrix([[0, -1], [1]])  # X - Y
    g = BiPoly.from_matrix([[1, 2], [3]])
    assert (g * d ** 3).divides_by_power(d) == 3
