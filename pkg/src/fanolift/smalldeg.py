"""Pencils for quartics (V4, D4), quintics (D5) and the hexagon condition (D6)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath

from .covariants import involution_condition
from .errors import DegenerateConfiguration, DomainError
from .exact.elimination import discriminant
from .exact.linalg import kernel_basis
from .exact.poly import BiPoly, UniPoly, coerce, parse_fraction, proportional
from .exact.reconstruct import rational_reconstruct
from .homography import Homography
from .numeric import GUARD_DIGITS, complex_roots

__all__ = [
    "Homography", "SmallConfig", "InvolutionResult", "involution_from_pairs", "v4_q", "v4_factor",
    "d4_pencil", "d5_pencil", "d6_condition", "d6_involution_determinant", "pencil_difference",
]


@dataclass(frozen=True)
class SmallConfig:
    """n distinct values x_0..x_{n-1}, indices read mod n."""

    values: tuple

    def __post_init__(self):
        vals = tuple(parse_fraction(v) if not isinstance(v, int) else Fraction(v) for v in self.values)
        if len(vals) not in (4, 5, 6):
            raise DomainError(f"expected 4, 5 or 6 values, got {len(vals)}")
        if len(set(vals)) != len(vals):
            raise DegenerateConfiguration("values must be pairwise distinct", guard="distinct")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i % self.n]

    @property
    def P(self) -> UniPoly:
        return UniPoly.from_roots(self.values, "X")


# -- involutions ------------------------------------------------------------

def _involution_row(p, q) -> list:
    # h(t) = (a t + b)/(c t - a) swaps p, q  <=>  c pq - a (p + q) - b = 0, unknowns (c, a, b)
    return [p * q, -(p + q), -1]


def _involution_from_kernel(vec) -> Homography:
    c, a, b = vec
    return Homography(a, b, c, -a)


@dataclass(frozen=True)
class InvolutionResult:
    determinant: Fraction | None
    homography: Homography | None

    @property
    def exists(self) -> bool:
        return self.homography is not None


def involution_from_pairs(pairs: Sequence[tuple]) -> InvolutionResult:
    """The involutive homography swapping each given pair.

    Two pairs always determine one.  For three pairs the determinant of
    the rows (1, p+q, pq) vanishes exactly when it exists.
    """
    pairs = [tuple(coerce(v) for v in pr) for pr in pairs]
    flat = [v for pr in pairs for v in pr]
    if len(set(flat)) != len(flat):
        raise DomainError("pair values must be pairwise distinct")
    if len(pairs) == 2:
        ker = kernel_basis([_involution_row(p, q) for p, q in pairs])
        return InvolutionResult(None, _involution_from_kernel(ker[0]))
    if len(pairs) != 3:
        raise DomainError("need two or three pairs")
    det = involution_condition(pairs)
    if det != 0:
        return InvolutionResult(det, None)
    ker = kernel_basis([_involution_row(p, q) for p, q in pairs])
    return InvolutionResult(det, _involution_from_kernel(ker[0]))


def involution_graph(h: Homography) -> BiPoly:
    """c XY - a(X + Y) - b for h = (a t + b)/(c t - a): symmetric of bidegree (1, 1)."""
    if not h.is_involution:
        raise DomainError("graph is only symmetric for an involution")
    return BiPoly.from_matrix([[-h.b, -h.a], [-h.a, h.c]])


def pencil_difference(P: UniPoly, Q: UniPoly) -> BiPoly:
    """(P(X) Q(Y) - P(Y) Q(X)) / (X - Y)."""
    Px, Qx = P.with_var("X"), Q.with_var("X")
    Py, Qy = P.with_var("Y"), Q.with_var("Y")
    num = BiPoly.outer(Px, Qy) - BiPoly.outer(Qx, Py)
    return num.exact_div(BiPoly.from_matrix([[0, -1], [1]]))


# -- V4 --------------------------------------------------------------------

def _hessian_q(P: UniPoly) -> UniPoly:
    """Hes(X, 1) with Hes = R_XX R_ZZ - R_XZ^2 and R(X, Z) = Z^4 P(X/Z)."""
    n = 4
    R = BiPoly.from_matrix([[0] * (n - i) + [P.coeff(i)] for i in range(n + 1)], ("X", "Z"))
    Rxx = R.diff("X").diff("X")
    Rzz = R.diff("Z").diff("Z")
    Rxz = R.diff("X").diff("Z")
    hes = Rxx * Rzz - Rxz * Rxz
    return hes.eval_second(Fraction(1)).with_var("X")


@dataclass(frozen=True)
class V4Result:
    Q: UniPoly
    derivative_square_remainder: UniPoly
    ratio: Fraction


def v4_q(P: UniPoly) -> V4Result:
    """Q = Hes(X, 1); cross-checked against P'^2 mod P.

    Hes(X, 1) has degree 4 while P'^2 mod P has degree <= 3, so the two
    agree up to a constant only modulo P (adding multiples of P to Q just
    reparametrizes the pencil).
    """
    P = P.with_var("X")
    if P.degree != 4:
        raise DomainError("P must be a quartic")
    if P.gcd(P.derivative()).degree > 0:
        raise DomainError("P must be separable")
    Q = _hessian_q(P)
    rem = (P.derivative() * P.derivative()) % P
    ratio = proportional(Q % P, rem)
    if ratio is None:
        raise AssertionError("Hes(X,1) mod P is not proportional to P'^2 mod P")
    return V4Result(Q, rem, ratio)


@dataclass(frozen=True)
class V4Factorization:
    factors: tuple
    involutions: tuple
    scale: Fraction


def _numeric_involutions(P: UniPoly, digits: int) -> list[Homography]:
    """The three root pairings' involutions, reconstructed to exact rationals."""
    rs = complex_roots(P, digits)
    if rs.profile() != (1, 1, 1, 1):
        raise DegenerateConfiguration("quartic is not separable", guard="separable")
    r = rs.roots
    out = []
    with mpmath.workdps(digits + GUARD_DIGITS):
        for (i, j), (k, l) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
            a1, a2 = _involution_row(r[i], r[j]), _involution_row(r[k], r[l])
            cross = [a1[1] * a2[2] - a1[2] * a2[1], a1[2] * a2[0] - a1[0] * a2[2], a1[0] * a2[1] - a1[1] * a2[0]]
            piv = max(cross, key=abs)
            vec = []
            eps = mpmath.mpf(10) ** (-(digits // 2))
            for v in cross:
                w = v / piv
                if abs(w.imag) > eps:
                    raise DegenerateConfiguration("involution is not defined over Q", guard="rational_involution")
                f = Fraction(0) if abs(w.real) <= eps else rational_reconstruct(w.real, 10**30, eps=eps)
                if f is None:
                    raise DegenerateConfiguration("involution is not defined over Q", guard="rational_involution")
                vec.append(f)
            out.append(_involution_from_kernel(vec))
    return out


def v4_factor(P: UniPoly, Q: UniPoly, roots: Sequence | None = None, digits: int = 100) -> V4Factorization:
    """P(X)Q(Y) - P(Y)Q(X) = s (X - Y) F1 F2 F3 with F_i the involution graphs.

    With ``roots`` the involutions come from exact pairings; otherwise the
    roots are found numerically and each involution's coefficients are
    reconstructed and then verified by the exact product identity.
    """
    if roots is not None:
        x = [coerce(v) for v in roots]
        if UniPoly.from_roots(x, "X") != P.with_var("X").monic():
            raise DomainError("roots do not match P")
        pairings = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))
        invs = [involution_from_pairs([(x[i], x[j]), (x[k], x[l])]).homography
                for (i, j), (k, l) in pairings]
    else:
        invs = _numeric_involutions(P.with_var("X"), digits)
    factors = tuple(involution_graph(h) for h in invs)
    D = pencil_difference(P, Q)
    prod = factors[0] * factors[1] * factors[2]
    scale = proportional(D, prod)
    if scale is None:
        raise DegenerateConfiguration("pencil difference does not split into the three involution graphs",
                                      guard="v4_factorization")
    return V4Factorization(factors, tuple(invs), scale)


# -- D4 --------------------------------------------------------------------

@dataclass(frozen=True)
class D4Pencil:
    Q1: UniPoly
    Q2: UniPoly
    u: Fraction
    q: UniPoly
    involution: Homography

    def member(self, P: UniPoly, t1, t2) -> UniPoly:
        return P - self.Q1 * t1 - self.Q2 * t2


def d4_pencil(values: Sequence) -> D4Pencil:
    """Q1 = q^2, Q2 = u q (2X^2 - X Σx + x0x2 + x1x3), q = uX + x1x3 - x0x2."""
    cfg = SmallConfig(tuple(values))
    if cfg.n != 4:
        raise DomainError("D4 pencil needs 4 values")
    x0, x1, x2, x3 = cfg.values
    u = x0 - x1 + x2 - x3
    if u == 0:
        raise DegenerateConfiguration("u = x0 - x1 + x2 - x3 vanishes", guard="u")
    q = UniPoly([x1 * x3 - x0 * x2, u], "X")
    Q1 = q * q
    Q2 = q * UniPoly([x0 * x2 + x1 * x3, -(x0 + x1 + x2 + x3), 2], "X") * u
    inv = involution_from_pairs([(x0, x2), (x1, x3)]).homography
    return D4Pencil(Q1, Q2, u, q, inv)


def apply_homography_to_poly(p: UniPoly, h: Homography) -> UniPoly:
    """(c X + d)^deg p * p(h(X)): the numerator of p o h at formal degree."""
    n = p.degree
    num = UniPoly([h.b, h.a], "X")
    den = UniPoly([h.d, h.c], "X")
    out = UniPoly([], "X")
    for i, c in enumerate(p.coeffs):
        out = out + num ** i * den ** (n - i) * c
    return out


# -- D5 --------------------------------------------------------------------

@dataclass(frozen=True)
class D5Pencil:
    Q: UniPoly
    F: BiPoly
    G: BiPoly
    scale: Fraction


def _d5_q(cfg: SmallConfig) -> UniPoly:
    x = cfg
    total = UniPoly([], "X")
    for i in range(5):
        others = [x[j] for j in range(5) if j != i]
        dP = Fraction(1)
        for o in others:
            dP *= x[i] - o
        w = dP * (x[i - 1] - x[i + 1]) * (x[i - 2] - x[i + 2])
        total = total + UniPoly.from_roots(others, "X") * w
    return total


_SYM_22 = ((0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2))


def _symmetric_22(coeffs) -> BiPoly:
    m = [[Fraction(0)] * 3 for _ in range(3)]
    for (a, b), c in zip(_SYM_22, coeffs):
        m[a][b] += c
        if a != b:
            m[b][a] += c
    return BiPoly.from_matrix(m)


def _interpolate_symmetric(cfg: SmallConfig, offsets: tuple[int, ...], name: str) -> BiPoly:
    """Symmetric (2, 2) form vanishing at (x_i, x_{i+k}) for k in offsets."""
    rows = []
    for i in range(5):
        for k in offsets:
            p, q = cfg[i], cfg[i + k]
            rows.append([p**a * q**b + (p**b * q**a if a != b else 0) for a, b in _SYM_22])
    ker = kernel_basis(rows, len(_SYM_22))
    if len(ker) != 1:
        raise DegenerateConfiguration(f"{name}: interpolation space has dimension {len(ker)}",
                                      guard=f"{name}_interpolation")
    return _symmetric_22(ker[0]).normalized()


def d5_pencil(values: Sequence) -> D5Pencil:
    """Q for the cyclic pentagon, and the split (P(X)Q(Y)-P(Y)Q(X))/(X-Y) = s F G."""
    cfg = SmallConfig(tuple(values))
    if cfg.n != 5:
        raise DomainError("D5 pencil needs 5 values")
    Q = _d5_q(cfg)
    F = _interpolate_symmetric(cfg, (1,), "F")
    G = _interpolate_symmetric(cfg, (2,), "G")
    D = pencil_difference(cfg.P, Q)
    scale = proportional(D, F * G)
    if scale is None:
        raise DegenerateConfiguration("pencil difference is not F G", guard="d5_factorization")
    return D5Pencil(Q, F, G, scale)


def pencil_discriminant(P: UniPoly, Q: UniPoly) -> UniPoly:
    """disc_X(P - T Q) as a polynomial in T."""
    n = P.degree
    rows = [[P.coeff(i), -Q.coeff(i)] for i in range(n + 1)]
    return discriminant(BiPoly.from_matrix(rows, ("X", "T")), "X").with_var("T")


# -- D6 --------------------------------------------------------------------

def d6_condition(values: Sequence) -> Fraction:
    """(x0-x1)(x2-x3)(x4-x5) + (x1-x2)(x3-x4)(x5-x0)."""
    x = SmallConfig(tuple(values))
    if x.n != 6:
        raise DomainError("hexagon condition needs 6 values")
    return (x[0] - x[1]) * (x[2] - x[3]) * (x[4] - x[5]) + (x[1] - x[2]) * (x[3] - x[4]) * (x[5] - x[0])


def d6_involution_determinant(values: Sequence) -> Fraction:
    """Determinant for one involution sending x_i to x_{i+3}."""
    x = SmallConfig(tuple(values))
    if x.n != 6:
        raise DomainError("hexagon condition needs 6 values")
    return involution_condition([(x[0], x[3]), (x[1], x[4]), (x[2], x[5])])
