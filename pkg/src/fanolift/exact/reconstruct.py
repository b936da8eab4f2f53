"""Recovering exact fractions from high-precision approximations."""
from __future__ import annotations

from fractions import Fraction

import mpmath

SAFETY_FACTOR = 10**6


def to_fraction(v) -> Fraction:
    """Exact value of a binary mpf (or anything Fraction accepts)."""
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    v = mpmath.mpf(v)
    # man_exp drops the sign
    sign, man, exp, _ = v._mpf_
    if man == 0:
        return Fraction(0)
    man = -int(man) if sign else int(man)
    return Fraction(man * 2**exp) if exp >= 0 else Fraction(man, 2**-exp)


def default_tolerance(v, digits: int | None = None):
    digits = mpmath.mp.dps if digits is None else digits
    return max(mpmath.mpf(1), abs(mpmath.mpf(v))) * mpmath.mpf(10) ** (-(digits - 10))


def convergents(x: Fraction):
    """Yield (p, q) continued-fraction convergents of an exact rational."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = x.numerator, x.denominator
    while den:
        a, r = divmod(num, den)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield p1, q1
        num, den = den, r


def rational_reconstruct(v, max_denominator: int, eps=None,
                         safety: int = SAFETY_FACTOR) -> Fraction | None:
    """Best rational p/q for v, or None when v is not plausibly rational.

    Walks the convergents of v.  The first convergent within eps of v is
    accepted only if its denominator is at most max_denominator and the
    following convergent's denominator exceeds safety * max_denominator
    (a genuine rational leaves a huge gap before the noise takes over).
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be >= 1")
    eps = default_tolerance(v) if eps is None else eps
    x = to_fraction(v)
    e = to_fraction(eps)
    it = convergents(x)
    for p, q in it:
        if abs(x - Fraction(p, q)) <= e:
            if q > max_denominator:
                return None
            nxt = next(it, None)
            if nxt is not None and nxt[1] <= safety * max_denominator:
                return None
            return Fraction(p, q)
        if q > max_denominator:
            return None
    return None
