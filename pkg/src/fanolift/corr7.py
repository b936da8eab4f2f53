"""Dual points, the 3-3 and 4-4 correspondences, and the quartet (P, Q, U, V).

Everything is computed in the *label frame*: a configuration carries values
at positions 1..7 and a Fano structure on those positions; the structure's
labeling permutation π turns this into x_i = value[π(i)], after which the
reference plane applies.  Exact mode uses Fractions; numeric mode uses
mpmath complex numbers and the same formulas, with tolerance-based checks.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, permutations
from typing import Sequence

import mpmath

from .covariants import default_family, y1_numerator
from .errors import ConsistencyError, DegenerateConfiguration, DomainError
from .exact.elimination import bivariate_root_up_to_scalar, discriminant, resultant
from .exact.linalg import det_rational, kernel_basis, rank
from .exact.poly import BiPoly, UniPoly, fraction_to_str, parse_fraction, proportional
from .fano import FANO_PLANE, LINES, POINTS, FanoStructure, Perm, all_fano_structures, labeling
from .homography import Homography
from .numeric import DEFAULT_DIGITS, GUARD_DIGITS, complex_roots, complex_to_json, to_mp



@dataclass(frozen=True)
class SeptupleConfig:
    """Seven distinct values at positions 1..7 with a Fano structure on the positions."""

    values: tuple
    structure: FanoStructure = FANO_PLANE
    mode: str = "exact"
    digits: int = DEFAULT_DIGITS

    def __post_init__(self):
        if self.mode not in ("exact", "numeric"):
            raise DomainError(f"unknown mode {self.mode!r}")
        if len(self.values) != 7:
            raise DomainError(f"expected 7 values, got {len(self.values)}")
        if self.mode == "exact":
            vals = tuple(parse_fraction(v) if not isinstance(v, int) else Fraction(v) for v in self.values)
            if len(set(vals)) != 7:
                raise DegenerateConfiguration("values must be pairwise distinct", guard="distinct")
        else:
            with mpmath.workdps(self.digits + GUARD_DIGITS):
                vals = tuple(mpmath.mpc(to_mp(v)) for v in self.values)
                floor = mpmath.mpf(10) ** (-(self.digits // 2))
                if any(abs(a - b) <= floor for a, b in combinations(vals, 2)):
                    raise DegenerateConfiguration("values must be pairwise distinct", guard="distinct")
        object.__setattr__(self, "values", vals)
        if not self.structure.check_axioms():
            raise DomainError("structure violates the Fano axioms")

    @classmethod
    def from_index(cls, values: Sequence, index: int, **kw) -> "SeptupleConfig":
        structures = all_fano_structures()
        if not 0 <= index < len(structures):
            raise DomainError(f"structure index must lie in 0..{len(structures) - 1}")
        return cls(tuple(values), structures[index], **kw)

    @cached_property
    def perm(self) -> Perm:
        """Label i sits at position perm[i-1]."""
        return labeling(self.structure)

    @cached_property
    def x(self) -> tuple:
        return tuple(self.values[p - 1] for p in self.perm)

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    @cached_property
    def tol(self):
        if self.exact:
            return 0
        with mpmath.workdps(self.digits + GUARD_DIGITS):
            return mpmath.mpf(10) ** (-(self.digits - 15))

    def is_zero(self, v, scale=1) -> bool:
        if self.exact:
            return v == 0
        return abs(v) <= self.tol * (1 + abs(scale))

    def relabeled(self, x: Sequence) -> "SeptupleConfig":
        """Configuration with label-frame values x on the reference structure."""
        return SeptupleConfig(tuple(x), FANO_PLANE, self.mode, self.digits)

    def to_json(self) -> dict:
        return {"values": _scalars_json(self.values, self), "structure": self.structure.to_json(),
                "mode": self.mode}


def _scalars_json(vals, cfg: SeptupleConfig) -> list:
    if cfg.exact:
        return [fraction_to_str(v) for v in vals]
    return [complex_to_json(v, cfg.digits) for v in vals]


def _poly_json(p, cfg: SeptupleConfig):
    if cfg.exact:
        return p.to_json()
    if isinstance(p, UniPoly):
        return [complex_to_json(c, cfg.digits) for c in p.coeffs]
    return [[complex_to_json(c, cfg.digits) for c in row] for row in p.matrix()]


def _ctx(cfg: SeptupleConfig):
    return mpmath.workdps(cfg.digits + GUARD_DIGITS) if not cfg.exact else _Null()


class _Null:
    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False


# -- covariant guards ------------------------------------------------------

def covariant_values(cfg: SeptupleConfig) -> tuple[dict, dict]:
    fam = default_family()
    with _ctx(cfg):
        return fam.u_values(cfg.x), fam.v_values(cfg.x)


def genericity_guards(cfg: SeptupleConfig) -> dict[str, bool]:
    """Named guards: True means the guard passes (quantity nonzero)."""
    u, v = covariant_values(cfg)
    scale = max(abs(c) for c in cfg.x) ** 3 if not cfg.exact else 1
    out = {f"u_{a}": not cfg.is_zero(u[a], scale) for a in sorted(u)}
    out |= {f"v_{b}'": not cfg.is_zero(v[b], scale) for b in sorted(v)}
    return out


def require_generic(cfg: SeptupleConfig) -> None:
    for name, ok in genericity_guards(cfg).items():
        if not ok:
            raise DegenerateConfiguration(f"degenerate configuration: {name} vanishes", guard=name)


# -- line polynomials ------------------------------------------------------

@dataclass(frozen=True)
class LinePolys:
    P: UniPoly
    r: dict
    s: dict
    U: UniPoly | None = None
    L: dict | None = None


def line_polys(cfg: SeptupleConfig, y: Sequence | None = None) -> LinePolys:
    """r_j over the points of line j', s_j over its complement, L_j = U/(Y - y_j)."""
    x = cfg.x
    with _ctx(cfg):
        r = {j: UniPoly.from_roots([x[i - 1] for i in LINES[j]], "X") for j in POINTS}
        s = {j: UniPoly.from_roots([x[i - 1] for i in POINTS if i not in LINES[j]], "X") for j in POINTS}
        P = UniPoly.from_roots(x, "X")
        U = L = None
        if y is not None:
            U = UniPoly.from_roots(y, "Y")
            L = {j: UniPoly.from_roots([y[k - 1] for k in POINTS if k != j], "Y") for j in POINTS}
    return LinePolys(P, r, s, U, L)


def s_matrix(cfg: SeptupleConfig) -> list[list]:
    """5x7 matrix: column j holds the coefficients of s_j (ascending)."""
    lp = line_polys(cfg)
    return [[lp.s[j].coeff(k) for j in POINTS] for k in range(5)]


def det4(cfg: SeptupleConfig) -> Fraction:
    """det of s1, s5, s6, s7 divided by (X - x1), coefficient rows ascending."""
    lp = line_polys(cfg)
    x1 = UniPoly([-cfg.x[0], 1], "X")
    cols = [lp.s[j].exact_div(x1) for j in (1, 5, 6, 7)]
    return det_rational([[c.coeff(k) for c in cols] for k in range(4)])


def det4_expected(cfg: SeptupleConfig) -> Fraction:
    u, _ = covariant_values(cfg)
    x = (None, *cfg.x)
    return u[1] * (x[2] - x[6]) * (x[3] - x[5]) * (x[4] - x[7])


# -- dual points -----------------------------------------------------------

@dataclass(frozen=True)
class DualPoints:
    values: tuple
    method: str
    detail: dict = field(default_factory=dict, compare=False)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, j: int):
        """y_j for j = 1..7."""
        return self.values[j - 1]


def _check_distinct(y, cfg: SeptupleConfig, what: str) -> None:
    scale = max(abs(v) for v in y) if not cfg.exact else 1
    for a, b in combinations(y, 2):
        if cfg.is_zero(a - b, scale):
            raise DegenerateConfiguration(f"{what}: dual points are not pairwise distinct", guard="y_distinct")


def dual_points_kernel(cfg: SeptupleConfig) -> DualPoints:
    """y_j = b'_j / b_j from a basis of the kernel of the s_j coefficient matrix.

    The echelon basis (k1, k2) of the kernel always has zeros in its free
    columns, so b = k1 + c*k2 and b' = k2 with the first c in 0, 1, -1, 2, ...
    making every b_j nonzero.  Any such change of basis moves y by one
    homography.
    """
    if not cfg.exact:
        raise DomainError("kernel route is exact-only")
    ker = kernel_basis(s_matrix(cfg))
    if len(ker) != 2:
        raise DegenerateConfiguration(f"kernel of the s_j system has dimension {len(ker)}, not 2",
                                      guard="kernel_dim")
    k1, k2 = ker
    for step in range(1, 40):
        c = Fraction((step // 2) * (1 if step % 2 else -1))
        b = [p + c * q for p, q in zip(k1, k2)]
        if all(v != 0 for v in b):
            y = tuple(q / p for p, q in zip(b, k2))
            _check_distinct(y, cfg, "kernel route")
            return DualPoints(y, "kernel", {"basis": (tuple(b), tuple(k2)), "c": c})
    raise DegenerateConfiguration("no kernel basis with all b_j nonzero", guard="kernel_basis")


def _canonical_raw(x: Sequence, cfg: SeptupleConfig):
    fam = default_family()
    num1 = y1_numerator()
    out = []
    for b in POINTS:
        sigma = fam.line_perm[b]
        den = fam.v[b](x)
        num = num1.act(sigma)(x)
        out.append((num, den))
    return out


def dual_points_canonical(cfg: SeptupleConfig) -> DualPoints:
    """y_1 = -v1(1/x) x1...x7 / v1(x), transported to every line by the Sylow.

    The numerator is expanded symbolically, so x_i = 0 is harmless.  When
    v_b(x) = 0 the value y_b is at infinity: by equivariance no change of
    coordinates moves it to a finite point (translations leave v_b fixed,
    and y_b(h x) = h(infinity) for any homography h), so this is a guard.
    """
    x = cfg.x
    with _ctx(cfg):
        raw = _canonical_raw(x, cfg)
        scale = (1 + max(abs(v) for v in x)) ** 4 if not cfg.exact else 1
        bad = [b for b, (_, d) in zip(POINTS, raw) if cfg.is_zero(d, scale)]
        if bad:
            raise DegenerateConfiguration(f"v_b vanishes for lines {bad}: y_b is at infinity", guard="v_b")
        y = tuple(n / d for n, d in raw)
        _check_distinct(y, cfg, "canonical route")
        return DualPoints(y, "canonical")


def fit_homography(src: Sequence, dst: Sequence) -> Homography | None:
    """Homography sending src[k] to dst[k] for all k, if one exists (exact)."""
    h = Homography.from_three_points(src[:3], dst[:3])
    try:
        ok = all(h(s) == d for s, d in zip(src, dst))
    except DomainError:
        return None
    return h if ok else None


# -- the correspondences ---------------------------------------------------

def closed_form_coefficients(cfg: SeptupleConfig) -> tuple[dict, dict]:
    """(a_b, b_b): the Sylow-transported values of l1 = u2u3u4 v1^2 and
    m1 = u2u3u4 v1 (x2-x3)(x3-x4)(x4-x2), keyed by the line b = σ(1')."""
    fam = default_family()
    u, v = covariant_values(cfg)
    x = (None, *cfg.x)
    a_coef, b_coef = {}, {}
    with _ctx(cfg):
        for s in fam.sylow.elements:
            b = fam.sylow.line_of(s)
            p2, p3, p4 = s[1], s[2], s[3]
            uuu = u[p2] * u[p3] * u[p4]
            a_coef[b] = uuu * v[b] ** 2
            b_coef[b] = uuu * v[b] * (x[p2] - x[p3]) * (x[p3] - x[p4]) * (x[p4] - x[p2])
    return a_coef, b_coef


def _assemble(cfg, coef: dict, polys: dict, L: dict) -> BiPoly:
    with _ctx(cfg):
        total = BiPoly([], ("X", "Y"))
        for j in POINTS:
            total = total + BiPoly.outer(polys[j], L[j]) * coef[j]
    return total


def _linear_coefficients(cfg, polys: dict, y, nmoments: int, what: str) -> dict:
    """Solve Σ c_j y_j^k polys_j = 0 (k < nmoments); require a 1-dim solution."""
    rows = []
    deg = polys[1].degree
    for k in range(nmoments):
        for d in range(deg + 1):
            rows.append([y[j - 1] ** k * polys[j].coeff(d) for j in POINTS])
    ker = kernel_basis(rows, 7)
    if len(ker) != 1:
        raise DegenerateConfiguration(f"{what}: solution space has dimension {len(ker)}, not 1",
                                      guard=f"{what}_system")
    return dict(zip(POINTS, ker[0]))


def build_F(cfg: SeptupleConfig, y: DualPoints | Sequence, method: str = "formula") -> BiPoly:
    """The 3-3 correspondence Σ a_j r_j(X) L_j(Y).

    ``formula`` uses the covariant coefficients (needs the canonical y to
    realize the claimed bidegree); ``linear`` solves for the a_j making the
    Y-degree collapse to 3, and works for any dual points.
    """
    y = tuple(y)
    lp = line_polys(cfg, y)
    if method == "formula":
        require_generic(cfg)
        coef, _ = closed_form_coefficients(cfg)
    elif method == "linear":
        if not cfg.exact:
            raise DomainError("linear route is exact-only")
        coef = _linear_coefficients(cfg, lp.r, y, 3, "F")
    else:
        raise DomainError(f"unknown method {method!r}")
    return _assemble(cfg, coef, lp.r, lp.L)


def build_H(cfg: SeptupleConfig, y: DualPoints | Sequence, method: str = "formula") -> BiPoly:
    """The 4-4 correspondence Σ b_j s_j(X) L_j(Y)."""
    y = tuple(y)
    lp = line_polys(cfg, y)
    if method == "formula":
        require_generic(cfg)
        _, coef = closed_form_coefficients(cfg)
    elif method == "linear":
        if not cfg.exact:
            raise DomainError("linear route is exact-only")
        coef = _linear_coefficients(cfg, lp.s, y, 2, "H")
    else:
        raise DomainError(f"unknown method {method!r}")
    return _assemble(cfg, coef, lp.s, lp.L)


@dataclass(frozen=True)
class ResultantRoute:
    R1: BiPoly
    H: BiPoly
    diagonal_power: int
    F_power: int


def complementary_via_resultant(F: BiPoly) -> ResultantRoute:
    """Recover H from F alone by two resultants.

    res_Y(F(X,Y), F(Z,Y)) = (X-Z)^3 R1(X,Z) and res_Z(R1(X,Z), F(Z,Y)) =
    c F^2 H^3; H is the cube root of the cofactor of F^2.
    """
    F = F.in_order(("X", "Y"))
    if F.bidegree != (3, 3):
        raise DomainError(f"F must have bidegree (3, 3), not {F.bidegree}")
    FY_X = F.swap()                       # vars (Y, X)
    FY_Z = F.rename("Z", "Y").swap()      # vars (Y, Z)
    res1 = resultant(FY_X, FY_Z, "Y").in_order(("X", "Z"))
    diag = BiPoly.from_matrix([[0, -1], [1]], ("X", "Z"))
    power = res1.divides_by_power(diag)
    if power < 3:
        raise ConsistencyError("res_Y(F(X,Y), F(Z,Y)) is not divisible by (X-Z)^3",
                               check="diagonal_cube", residual=res1)
    R1 = res1.exact_div(diag ** 3)
    if R1.bidegree != (6, 6) or not R1.is_symmetric():
        raise ConsistencyError("R1 is not symmetric of bidegree (6, 6)", check="R1_shape", residual=R1)
    res2 = resultant(R1.swap(), F.rename("Z", "Y"), "Z").in_order(("X", "Y"))
    F2 = F * F
    try:
        cof = res2.exact_div(F2)
    except DomainError as exc:
        raise ConsistencyError("second resultant is not divisible by F^2", check="F_square",
                               residual=res2) from exc
    fpow = 2 + cof.divides_by_power(F)
    H = bivariate_root_up_to_scalar(cof, 3)
    return ResultantRoute(R1.normalized(), H.normalized(), power, fpow)


# -- the quartet -----------------------------------------------------------

def closed_form_Q(cfg: SeptupleConfig) -> UniPoly:
    """P Σ_σ σ(q1/(X - x1)) with q1 = u1^2 P'(x1)(x2-x6)(x3-x5)(x4-x7), σ over the Sylow."""
    fam = default_family()
    u, _ = covariant_values(cfg)
    x = (None, *cfg.x)
    with _ctx(cfg):
        total = UniPoly([], "X")
        for s in fam.sylow.elements:
            xs = lambda i: x[s[i - 1]]
            others = [x[i] for i in POINTS if i != s[0]]
            dP = 1
            for o in others:
                dP = dP * (xs(1) - o)
            q = u[s[0]] ** 2 * dP * (xs(2) - xs(6)) * (xs(3) - xs(5)) * (xs(4) - xs(7))
            total = total + UniPoly.from_roots(others, "X") * q
    return total


@dataclass(frozen=True)
class CorrespondenceQuartet:
    cfg: SeptupleConfig
    y: DualPoints
    F: BiPoly
    H: BiPoly
    P: UniPoly
    Q: UniPoly
    U: UniPoly
    V: UniPoly
    Q_closed: UniPoly
    closed_form_ratio: object

    def identity_residual(self) -> BiPoly:
        """F H - (P V - Q U), identically zero when the quartet is sound."""
        return self.F * self.H - (BiPoly.outer(self.P, self.V) - BiPoly.outer(self.Q, self.U))

    def to_json(self, identity_checks: dict | None = None) -> dict:
        c = self.cfg
        return {
            "x": _scalars_json(c.x, c),
            "values": _scalars_json(c.values, c),
            "structure": c.structure.to_json(),
            "labeling": list(c.perm),
            "y": _scalars_json(self.y.values, c),
            "F": _poly_json(self.F, c),
            "H": _poly_json(self.H, c),
            "P": _poly_json(self.P, c),
            "Q": _poly_json(self.Q, c),
            "U": _poly_json(self.U, c),
            "V": _poly_json(self.V, c),
            "identity_checks": identity_checks or {},
        }


def extract_QV(F: BiPoly, H: BiPoly, P: UniPoly, U: UniPoly, cfg: SeptupleConfig):
    """Divide F H by P in X: quotient V(Y), remainder -Q(X) U(Y)."""
    with _ctx(cfg):
        FH = F * H
        quot, rem = FH.divmod_first(P)
        if quot.bidegree[0] > 0:
            raise ConsistencyError("quotient of F H by P depends on X", check="FH_shape", residual=quot)
        V = quot.rows[0] if quot.rows else UniPoly([], "Y")
        n = U.degree
        Q = UniPoly([-rem.coeff(i, n) for i in range(len(rem.rows))], "X")
        resid = rem + BiPoly.outer(Q, U)
        scale = max((abs(c) for _, c in FH.terms()), default=1)
        if any(not cfg.is_zero(c, scale) for _, c in resid.terms()):
            raise ConsistencyError("remainder of F H by P is not of the form Q(X) U(Y)",
                                   check="FH=PV-QU", residual=resid)
        if not cfg.exact:
            Q = UniPoly([c for c in Q.coeffs], "X")
    return Q, V.with_var("Y")


def quartet(cfg: SeptupleConfig, y: DualPoints | None = None, normalize: bool = True) -> CorrespondenceQuartet:
    """Build F, H from the covariant formulas and extract Q, V from F H = P V - Q U."""
    require_generic(cfg)
    y = y or dual_points_canonical(cfg)
    F = build_F(cfg, y)
    H = build_H(cfg, y)
    if normalize and cfg.exact:
        F, H = F.normalized(), H.normalized()
    lp = line_polys(cfg, tuple(y))
    Q, V = extract_QV(F, H, lp.P, lp.U, cfg)
    Qp = closed_form_Q(cfg)
    ratio = None
    if cfg.exact:
        ratio = proportional(Q, Qp)
    else:
        with _ctx(cfg):
            k = max(range(Qp.degree + 1), key=lambda i: abs(Qp.coeff(i)))
            ratio = Q.coeff(k) / Qp.coeff(k)
    return CorrespondenceQuartet(cfg, y, F, H, lp.P, Q, lp.U, V, Qp, ratio)


# -- correspondence checks----------------------------------------------------

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: object = None
    required: bool = True

    def to_json(self) -> dict:
        d = {"pass": self.passed, "required": self.required}
        if self.detail is not None:
            d["detail"] = self.detail
        return d


@dataclass
class CorrespondenceReport:
    checks: list = field(default_factory=list)

    def add(self, name, passed, detail=None, required=True) -> None:
        self.checks.append(CheckResult(name, bool(passed), detail, required))

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def __getitem__(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def failures(self) -> list[str]:
        return [c.name for c in self.checks if c.required and not c.passed]

    def to_json(self) -> dict:
        return {c.name: c.to_json() for c in self.checks}


def incidence_pattern(B: BiPoly, cfg: SeptupleConfig, y) -> list[list[bool]]:
    """pattern[i-1][j-1] is True when B(x_i, y_j) vanishes."""
    with _ctx(cfg):
        scale = max((abs(c) for _, c in B.terms()), default=1) if not cfg.exact else 1
        return [[cfg.is_zero(B(cfg.x[i - 1], y[j - 1]), scale * (1 + abs(cfg.x[i - 1])) ** 8)
                 for j in POINTS] for i in POINTS]


def discriminant_sides(q: CorrespondenceQuartet) -> dict:
    """disc_X(P - TQ), disc_Y(U - TV) and the covariant products."""
    u, v = covariant_values(q.cfg)
    prod_u = prod_v = Fraction(1)
    for a in POINTS:
        prod_u *= u[a]
        prod_v *= v[a]
    PT = BiPoly([[c] for c in q.P.coeffs], ("X", "T")) - BiPoly([[0, c] for c in q.Q.coeffs], ("X", "T"))
    UT = BiPoly([[c] for c in q.U.coeffs], ("Y", "T")) - BiPoly([[0, c] for c in q.V.coeffs], ("Y", "T"))
    return {"disc_P": discriminant(PT, "X"), "disc_U": discriminant(UT, "Y"),
            "prod_u": prod_u, "prod_v": prod_v}


def track_dual_roots(q: CorrespondenceQuartet, t, digits: int = 100) -> dict:
    """Compare roots of U - tV with the dual points of the roots of P - tQ.

    The roots α of P - tQ are labeled through F's incidence with the roots
    β of U - tV, then y(α) is evaluated and matched line by line.
    """
    with mpmath.workdps(digits + GUARD_DIGITS):
        t = to_mp(t) if not isinstance(t, Fraction) else t
        Pt = q.P - q.Q * t
        Ut = q.U - q.V * t
        alpha = complex_roots(Pt, digits)
        beta = complex_roots(Ut, digits)
        if alpha.profile() != (1,) * 7 or beta.profile() != (1,) * 7:
            return {"ok": False, "reason": "t is a branch point"}
        A, B = list(alpha.roots), list(beta.roots)
        Fm = q.F.map_coeffs(to_mp)
        vals = [[abs(Fm(a, b)) for b in B] for a in A]
        big = max(max(r) for r in vals)
        thresh = big * mpmath.mpf(10) ** (-(digits // 2))
        zero_sets = []
        for k in range(7):
            zs = frozenset(i for i in range(7) if vals[i][k] <= thresh)
            zero_sets.append(zs)
        if any(len(z) != 3 for z in zero_sets):
            return {"ok": False, "reason": "incidence of F at the roots is not 3 per line"}
        index = {z: k for k, z in enumerate(zero_sets)}
        for pi in permutations(range(7)):
            keys = [frozenset(pi[i - 1] for i in LINES[j]) for j in POINTS]
            if all(kk in index for kk in keys):
                break
        else:
            return {"ok": False, "reason": "no Fano labeling of the roots"}
        xa = [A[pi[i - 1]] for i in POINTS]
        ncfg = SeptupleConfig(tuple(xa), FANO_PLANE, "numeric", digits)
        y = dual_points_canonical(ncfg)
        resid = max(abs(y[j] - B[index[keys[j - 1]]]) for j in POINTS)
        return {"ok": True, "residual": resid, "alpha": xa, "beta": [B[index[k]] for k in keys]}


def verify_correspondence(cfg: SeptupleConfig, q: CorrespondenceQuartet | None = None, *,
                    resultant_route: bool = True, tracking_ts: Sequence = (),
                    tracking_digits: int = 100) -> CorrespondenceReport:
    """Run every structural identity on one configuration and collect a report."""
    rep = CorrespondenceReport()
    q = q or quartet(cfg)
    y = q.y.values
    resid = q.identity_residual()
    if cfg.exact:
        rep.add("FH=PV-QU", resid.is_zero())
    else:
        scale = max(abs(c) for _, c in (q.F * q.H).terms())
        rep.add("FH=PV-QU", all(cfg.is_zero(c, scale) for _, c in resid.terms()))
    rep.add("bidegree_F", q.F.bidegree == (3, 3), list(q.F.bidegree))
    rep.add("bidegree_H", q.H.bidegree == (4, 4), list(q.H.bidegree))
    incF = incidence_pattern(q.F, cfg, y)
    incH = incidence_pattern(q.H, cfg, y)
    expected = FANO_PLANE.incidence()
    rep.add("incidence_F", incF == expected, sum(map(sum, incF)))
    rep.add("incidence_H", all(incH[i][j] == (not expected[i][j]) for i in range(7) for j in range(7)),
            sum(map(sum, incH)))
    rep.add("deg_Q<=6", q.Q.degree <= 6, q.Q.degree)
    if cfg.exact:
        rep.add("gcd(P,Q)=1", q.P.gcd(q.Q).degree == 0)
        rep.add("U_monic_deg7", q.U.degree == 7 and q.U.lc == 1)
        rep.add("closed_form_Q_proportional", q.closed_form_ratio is not None,
                fraction_to_str(q.closed_form_ratio) if q.closed_form_ratio is not None else None)
        ker = kernel_basis(s_matrix(cfg))
        rep.add("kernel_dim=2", len(ker) == 2, len(ker))
        lp = line_polys(cfg)
        rep.add("s_5subsets_independent", all(
            rank([[lp.s[j].coeff(k) for j in sub] for k in range(5)]) == 5 for sub in combinations(POINTS, 5)))
        d, e = det4(cfg), det4_expected(cfg)
        rep.add("det4=±u1(x2-x6)(x3-x5)(x4-x7)", d in (e, -e), "+" if d == e else "-" if d == -e else None)
        Fl = build_F(cfg, y, "linear")
        Hl = build_H(cfg, y, "linear")
        rep.add("F_routes_proportional", proportional(q.F, Fl) is not None)
        rep.add("H_routes_proportional", proportional(q.H, Hl) is not None)
        sides = discriminant_sides(q)
        pu12, pv12 = sides["prod_u"] ** 12, sides["prod_v"] ** 12
        lhs, rhs = sides["disc_P"] * pv12, sides["disc_U"] * pu12
        rep.add("disc_identity_as_printed", lhs == rhs, required=False)
        rep.add("disc_identity_u_v_swapped", sides["disc_P"] * pu12 == sides["disc_U"] * pv12)
        if resultant_route:
            try:
                rr = complementary_via_resultant(q.F)
                rep.add("resultant_diagonal_power=3", rr.diagonal_power == 3, rr.diagonal_power)
                rep.add("resultant_H_proportional", proportional(rr.H, q.H) is not None)
            except (ConsistencyError, DomainError) as exc:
                rep.add("resultant_route", False, str(exc))
    for t in tracking_ts:
        tr = track_dual_roots(q, t, tracking_digits)
        ok = tr["ok"] and tr["residual"] < mpmath.mpf(10) ** (-(tracking_digits // 2))
        rep.add(f"dual_root_tracking[t={t}]", ok,
                mpmath.nstr(tr["residual"], 5) if tr["ok"] else tr["reason"])
    return rep


def quartet_document(q: CorrespondenceQuartet, report: CorrespondenceReport | None = None) -> str:
    return json.dumps(q.to_json(report.to_json() if report else None), sort_keys=True)
