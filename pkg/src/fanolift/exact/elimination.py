"""Resultants, discriminants and the interpolation machinery behind them.

Resultants are Sylvester determinants.  When the coefficients lie in Q the
determinant is taken by integer Bareiss elimination.  When they are
polynomials in one or two further variables the determinant is evaluated at
enough rational points to pin every coefficient (degree bounds come from the
Sylvester structure) and interpolated back.  The Sylvester matrix always uses
the *formal* degrees, so specialization commutes with the determinant even
where a leading coefficient vanishes.

Convention: res(f, g) = lc(f)^deg g * lc(g)^deg f * prod(a_i - b_j).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import DomainError, NotAPowerError
from .linalg import bareiss_det, det_rational
from .poly import BiPoly, UniPoly, proportional


def sylvester_matrix(p: Sequence, q: Sequence) -> list[list]:
    """Sylvester matrix of coefficient lists (ascending) with formal degrees."""
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    zero = p[0] * 0
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(p)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(q)):
            row[i + k] = c
        rows.append(row)
    return rows


def _split(p, var: str):
    """View p as a polynomial in var: (coefficient list, free variable or None)."""
    if isinstance(p, UniPoly):
        if p.var == var or p.degree <= 0:
            return list(p.coeffs), None
        return [p], p.var
    if isinstance(p, BiPoly):
        if var not in p.vars:
            raise DomainError(f"{var} is not a variable of {p.vars}")
        q = p if p.vars[0] == var else p.swap()
        return list(q.rows), q.vars[1]
    raise TypeError(f"unsupported polynomial type {type(p).__name__}")


def _deg_in_free(coeffs) -> int:
    return max((c.degree if isinstance(c, UniPoly) else 0) for c in coeffs)


def _eval_coeffs(coeffs, value) -> list[Fraction]:
    return [c(value) if isinstance(c, UniPoly) else c for c in coeffs]


def _det_scalar(p: Sequence, q: Sequence) -> Fraction:
    return det_rational(sylvester_matrix(list(p), list(q)))


def interpolation_points(n: int) -> list[Fraction]:
    """0, 1, -1, 2, -2, ... (n points)."""
    pts, k = [Fraction(0)], 1
    while len(pts) < n:
        pts.append(Fraction(k))
        if len(pts) < n:
            pts.append(Fraction(-k))
        k += 1
    return pts


def interpolate(points: Sequence, values: Sequence, var: str = "X") -> UniPoly:
    """Newton divided-difference interpolation, exact over Q.

    Values may be scalars or UniPolys (componentwise interpolation).
    """
    n = len(points)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (points[i] - points[i - j])
    result = UniPoly([], var)
    for i in range(n - 1, -1, -1):
        result = result * UniPoly([-points[i], 1], var) + coef[i]
    return result


def _interpolate_rows(points, row_polys: Sequence[UniPoly], vars) -> BiPoly:
    """Given f(a_k, v2) as UniPolys in v2, rebuild f(v1, v2)."""
    dy = max((r.degree for r in row_polys), default=-1)
    if dy < 0:
        return BiPoly([], vars)
    cols = []
    for j in range(dy + 1):
        cols.append(interpolate(points, [r.coeff(j) for r in row_polys], vars[0]))
    dx = max(c.degree for c in cols)
    return BiPoly.from_matrix([[cols[j].coeff(i) for j in range(dy + 1)] for i in range(dx + 1)], vars)


def resultant(p, q, var: str | None = None):
    """Sylvester resultant of p and q with respect to var.

    * two UniPolys in var -> Fraction
    * coefficients in one further variable w -> UniPoly in w
    * p in (var, a) and q in (var, b), a != b -> BiPoly in (a, b)
    """
    if var is None:
        if isinstance(p, UniPoly):
            var = p.var
        else:
            raise DomainError("var is required for bivariate resultants")
    if p.is_zero() or q.is_zero():
        raise DomainError("resultant of a zero polynomial")
    pc, fp = _split(p, var)
    qc, fq = _split(q, var)
    m, n = len(pc) - 1, len(qc) - 1
    if m == 0 and n == 0:
        return Fraction(1)
    if fp is None and fq is None:
        return _det_scalar(pc, qc)
    if fp is None or fq is None or fp == fq:
        w = fp or fq
        bound = n * _deg_in_free(pc) + m * _deg_in_free(qc)
        pts = interpolation_points(bound + 1)
        vals = [_det_scalar(_eval_coeffs(pc, t), _eval_coeffs(qc, t)) for t in pts]
        return interpolate(pts, vals, w)
    # p depends on fp only, q on fq only: fix fp, solve the univariate case in fq
    bound_p = n * _deg_in_free(pc)
    bound_q = m * _deg_in_free(qc)
    pts_p = interpolation_points(bound_p + 1)
    pts_q = interpolation_points(bound_q + 1)
    q_at = [_eval_coeffs(qc, b) for b in pts_q]
    rows = []
    for a in pts_p:
        pa = _eval_coeffs(pc, a)
        vals = [_det_scalar(pa, qb) for qb in q_at]
        rows.append(interpolate(pts_q, vals, fq))
    return _interpolate_rows(pts_p, rows, (fp, fq))


def resultant_bareiss(p, q, var: str):
    """Resultant by Bareiss elimination directly over the coefficient ring.

    Independent of :func:`resultant`'s evaluation route; used to cross-check
    it when the coefficients are univariate polynomials.
    """
    pc, fp = _split(p, var)
    qc, fq = _split(q, var)
    if fp and fq and fp != fq:
        raise DomainError("direct route needs a single coefficient variable")
    w = fp or fq
    if w is None:
        return _det_scalar(pc, qc)
    lift = lambda c: c if isinstance(c, UniPoly) else UniPoly([c], w)
    rows = sylvester_matrix([lift(c) for c in pc], [lift(c) for c in qc])
    return bareiss_det(rows, exact_div=lambda a, b: a.exact_div(b))


def discriminant(p, var: str | None = None):
    """disc(p) = (-1)^(n(n-1)/2) res(p, p') / lc(p) with respect to var."""
    if isinstance(p, UniPoly):
        var = var or p.var
    elif var is None:
        raise DomainError("var is required for a bivariate discriminant")
    pc, w = _split(p, var)
    n = len(pc) - 1
    if n < 1:
        raise DomainError("discriminant of a constant polynomial")
    if isinstance(p, UniPoly) and w is None:
        dp = p.derivative()
        r = resultant(p, dp, var)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        return sign * r / p.lc
    dp = p.diff(var)
    if dp.is_zero():
        raise DomainError("derivative vanishes identically")
    # a missing derivative row would lower the formal degree; pad explicitly
    dpc, _ = _split(dp, var)
    lead = pc[-1]
    r = _formal_resultant(pc, dpc + [lead * 0] * (n - len(dpc)), w)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    r = r * sign
    if isinstance(lead, UniPoly):
        return r.exact_div(lead)
    return r / lead


def _formal_resultant(pc, qc, w: str) -> UniPoly:
    m, n = len(pc) - 1, len(qc) - 1
    bound = n * _deg_in_free(pc) + m * _deg_in_free(qc)
    pts = interpolation_points(bound + 1)
    vals = [_det_scalar(_eval_coeffs(pc, t), _eval_coeffs(qc, t)) for t in pts]
    return interpolate(pts, vals, w)


def root_up_to_scalar(p: UniPoly, k: int) -> tuple[Fraction, UniPoly]:
    """Return (c, r) with p == c * r**k and r monic; NotAPowerError otherwise."""
    if p.is_zero():
        raise DomainError("zero polynomial")
    r = p.normalized().nth_root(k).monic()
    c = p.lc
    if c * r ** k != p:
        raise NotAPowerError(f"{p} is not a scalar times a {k}-th power")
    return c, r


def bivariate_root_up_to_scalar(g: BiPoly, k: int) -> BiPoly:
    """Return h with g == c * h**k for a rational c (h determined up to scalar).

    The leading coefficient in v1 fixes the scaling across specializations:
    with lead(v2) = c * h_top(v2)**k, each slice g(v1, b) has the monic k-th
    root m_b and h(v1, b) is proportional to h_top(b) * m_b with a constant
    independent of b.
    """
    if g.is_zero():
        raise DomainError("zero polynomial")
    dx, dy = g.bidegree
    if dx % k or dy % k:
        raise NotAPowerError(f"bidegree {g.bidegree} is not divisible by {k}")
    lead = g.rows[-1]
    _, h_top = root_up_to_scalar(lead, k)
    need = dy // k + 1
    pts, rows = [], []
    for b in interpolation_points(4 * need + 8):
        if len(pts) == need + 2:
            break
        hb = h_top(b)
        if hb == 0:
            continue
        slice_ = g.eval_second(b)
        _, m_b = root_up_to_scalar(slice_, k)
        pts.append(b)
        rows.append(m_b * hb)
    h = _interpolate_rows(pts, rows, (g.vars[1], g.vars[0])).swap()
    if proportional(g, h ** k) is None:
        raise NotAPowerError("bivariate polynomial is not a scalar times a k-th power")
    return h
