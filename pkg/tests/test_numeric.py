from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanolift.errors import DegenerateConfiguration, DomainError
from fanolift.exact.poly import UniPoly
from fanolift.numeric import complex_from_json, complex_roots, complex_to_json, eval_rational_expr


def _match(ours, oracle, tol):
    """Greedy matching of two root lists; returns the worst distance."""
    left = list(oracle)
    worst = 0
    for r in ours:
        k = min(range(len(left)), key=lambda i: abs(left[i] - r))
        worst = max(worst, abs(left.pop(k) - r))
    return worst


@settings(max_examples=20)
@given(st.lists(st.integers(-20, 20), min_size=3, max_size=8).filter(lambda cs: cs[-1] != 0))
def test_roots_agree_with_mpmath_polyroots(cs):
    p = UniPoly(cs)
    if p.gcd(p.derivative()).degree > 0:
        return
    rs = complex_roots(p, 60)
    assert rs.profile() == (1,) * p.degree
    with mpmath.workdps(80):
        oracle = mpmath.polyroots(list(reversed([mpmath.mpf(c) for c in cs])), maxsteps=400, extraprec=400)
    assert _match(rs.roots, oracle, None) < mpmath.mpf(10) ** -40


@pytest.mark.parametrize("roots, profile", [
    ([1, 1, -1], (2, 1)),
    ([2, 2, 2, -1], (3, 1)),
    ([1] * 7, (7,)),
    ([0, 0, 3], (2, 1)),
    ([Fraction(1, 3), Fraction(1, 3), Fraction(-5, 2), Fraction(-5, 2), 7], (2, 2, 1)),
])
def test_multiplicity_profiles(roots, profile):
    rs = complex_roots(UniPoly.from_roots(roots), 100)
    assert rs.profile() == profile
    assert rs.degree == len(roots)


def test_trinks_septic_is_separable_numerically():
    rs = complex_roots(UniPoly([3, -7, 0, 0, 0, 0, 0, 1]), 200)
    assert rs.profile() == (1,) * 7
    assert rs.residual < mpmath.mpf(10) ** -150


def test_close_roots_are_resolved_or_merged_by_precision():
    with mpmath.workdps(200):
        eps30 = Fraction(1, 10**30)
        eps60 = Fraction(1, 10**60)
    assert complex_roots(UniPoly.from_roots([1, 1 + eps30, 3]), 100).profile() == (1, 1, 1)
    assert complex_roots(UniPoly.from_roots([1, 1 + eps60, 3]), 100).profile() == (2, 1)


def test_complex_pair():
    rs = complex_roots(UniPoly([1, 0, 1]), 50)
    assert sorted(round(float(r.imag)) for r in rs.roots) == [-1, 1]


def test_rejects_constants_and_low_precision():
    with pytest.raises(DomainError):
        complex_roots(UniPoly([5]), 50)
    with pytest.raises(DomainError):
        complex_roots(UniPoly([1, 1]), 10)


def test_json_round_trip():
    with mpmath.workdps(60):
        z = mpmath.mpc(mpmath.pi, -mpmath.e)
        back = complex_from_json(complex_to_json(z, 50))
        assert abs(back - z) < mpmath.mpf(10) ** -45


def test_rational_expression_guard():
    v = eval_rational_expr(lambda x: x[0], lambda x: x[1] - x[2], [1, 2, 3], 50)
    assert abs(v.value + 1) < mpmath.mpf(10) ** -40
    with pytest.raises(DegenerateConfiguration) as info:
        eval_rational_expr(lambda x: x[0], lambda x: x[1] - x[2], [1, 2, 2], 50, name="d")
    assert info.value.guard == "d"
