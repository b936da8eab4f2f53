import random
from fractions import Fraction

import mpmath
import pytest
import sympy

from fanolift.corr7 import SeptupleConfig, quartet
from fanolift.errors import DegenerateConfiguration, DomainError, NotInGroupError
from fanolift.exact.poly import UniPoly, proportional
from fanolift.pencil import (EXPECTED_PROFILE, INFINITY, Pencil, certify, disc_split, infinity_is_branch,
                             lift, noether_decompose, parse_poly, ramification)
from fanolift.suites import random_distinct
from strategies import T, X, to_sympy

TRINKS_P = UniPoly([3, -7, 0, 0, 0, 0, 0, 1])
TRINKS_Q = UniPoly([2, -1, -1, -1, -1, 2])


@pytest.fixture(scope="module")
def trinks_lift():
    return lift(TRINKS_P, digits=200)


def test_pencil_validation():
    with pytest.raises(DomainError):
        Pencil(UniPoly([1, 1]), TRINKS_Q)
    with pytest.raises(DomainError):
        Pencil(UniPoly.from_roots(range(7)), UniPoly.from_roots([0, 9]))


def test_disc_split_reproduces_discriminant():
    bd = disc_split(Pencil(TRINKS_P, TRINKS_Q))
    assert bd.constant * bd.S ** 2 == bd.disc
    oracle = sympy.discriminant(to_sympy(TRINKS_P) - T * to_sympy(TRINKS_Q), X)
    assert sympy.expand(to_sympy(bd.disc, T) - oracle) == 0
    assert bd.S.degree == 5 and bd.infinity and bd.count == 6


def test_non_square_discriminant_is_rejected():
    with pytest.raises(NotInGroupError):
        disc_split(Pencil(TRINKS_P, UniPoly([1, 0, 1])))


def test_infinity_rule():
    assert infinity_is_branch(TRINKS_Q)
    assert infinity_is_branch(UniPoly.from_roots([1, 1, 2, 3, 4, 5]))
    assert not infinity_is_branch(UniPoly.from_roots([0, 1, 2, 3, 4, 5]))


def test_certify_trinks():
    cert = certify(TRINKS_P, TRINKS_Q, 100)
    assert cert.certified
    assert cert.branch_count == 6
    assert all(tuple(p) == EXPECTED_PROFILE for p in cert.profiles)
    assert max(cert.residuals) < mpmath.mpf(10) ** -50


def test_exact_point_ramification():
    P = UniPoly.from_roots([1, 1, 2, 2, 3, 4, 5])
    Q = UniPoly([1])
    pen = Pencil(P, Q)
    assert ramification(pen, Fraction(0)).profile == (2, 2, 1, 1, 1)
    assert ramification(pen, INFINITY).profile == (7,)


def test_lift_trinks(trinks_lift):
    assert trinks_lift.status == "CERTIFIED"
    classes = trinks_lift.classes()
    assert len(classes) == 1
    Q = UniPoly.from_json(classes[0]["Q"])
    assert Q * (2 / Q.lc) == TRINKS_Q


def test_lift_negative_control():
    rep = lift(UniPoly([-2, 0, 0, 0, 0, 0, 0, 1]), digits=120)
    assert rep.status == "NOT_CERTIFIED"
    assert all(not c.certified for c in rep.candidates)


def test_lift_normalizes_non_monic_input():
    rep = lift(TRINKS_P * 3, digits=150)
    assert rep.scale == 3 and rep.P == TRINKS_P and rep.status == "CERTIFIED"


def test_lift_round_trip_through_a_specialization():
    t0 = Fraction(2, 7)
    rep = lift(TRINKS_P - TRINKS_Q * t0, digits=200)
    assert rep.status == "CERTIFIED"
    assert any(proportional(UniPoly.from_json(c["Q"]), TRINKS_Q) is not None for c in rep.classes())


def test_lift_rejects_bad_degree_and_repeated_roots():
    with pytest.raises(DomainError):
        lift(UniPoly([1, 0, 1]))
    with pytest.raises(DomainError):
        lift(UniPoly.from_roots([1, 1, 2, 3, 4, 5, 6]))


def _exact_pencil(rng):
    while True:
        x = random_distinct(rng, 7)
        if 0 in x:
            continue
        try:
            q = quartet(SeptupleConfig(x))
        except DegenerateConfiguration:
            continue
        if q.Q.degree == 6 and q.Q.coeff(0) != 0:
            return x, q


def test_noether_decomposition_on_exact_configuration():
    x, q = _exact_pencil(random.Random(11))
    assert certify(q.P, q.Q, 100).certified
    d = noether_decompose(q.P, q.Q)
    assert d.R.lc == 1 and d.R(0) == 0
    assert d.R - d.Q1 * d.t == q.P
    prod = Fraction(1)
    for v in x:
        prod *= v
    assert d.t * d.q6 == prod == -q.P(0)


def test_noether_guards():
    with pytest.raises(DegenerateConfiguration):
        noether_decompose(TRINKS_P, TRINKS_Q)
    with pytest.raises(DomainError):
        noether_decompose(TRINKS_P * 2, UniPoly.from_roots(range(1, 7)))


def test_parse_poly():
    assert parse_poly(["1/2", "-3", 0]) == UniPoly([Fraction(1, 2), -3])
