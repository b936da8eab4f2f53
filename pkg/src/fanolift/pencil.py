"""The pencil P - TQ: discriminant, branch data, the lift pipeline, Noether form."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import mpmath

from .corr7 import SeptupleConfig, closed_form_Q
from .errors import (AmbiguousClustering, DegenerateConfiguration, DomainError, NotAPowerError,
                     NotInGroupError, RootFindingError)
from .exact.elimination import discriminant, root_up_to_scalar
from .exact.poly import BiPoly, UniPoly, fraction_to_str, parse_fraction
from .exact.reconstruct import rational_reconstruct
from .fano import all_fano_structures
from .numeric import DEFAULT_DIGITS, GUARD_DIGITS, RootSet, complex_roots, complex_to_json, to_mp

INFINITY = "inf"
EXPECTED_PROFILE = (2, 2, 1, 1, 1)
BASE_DENOMINATOR_BOUND = 10**12
MAX_PRECISION_RETRIES = 2


@dataclass(frozen=True)
class Pencil:
    P: UniPoly
    Q: UniPoly

    def __post_init__(self):
        P = self.P.with_var("X")
        Q = self.Q.with_var("X")
        if P.degree != 7 or P.lc != 1:
            raise DomainError("P must be monic of degree 7")
        if Q.is_zero() or Q.degree > 6:
            raise DomainError("Q must be nonzero of degree at most 6")
        if P.gcd(Q).degree > 0:
            raise DomainError("P and Q must be coprime")
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "Q", Q)

    def member(self, t) -> UniPoly:
        return self.P - self.Q * t

    def bivariate(self) -> BiPoly:
        """P(X) - T Q(X) with variables (X, T)."""
        rows = [[p, -q] for p, q in zip(self.P.coeffs, list(self.Q.coeffs) + [0] * 8)]
        return BiPoly.from_matrix(rows, ("X", "T"))

    def to_json(self) -> dict:
        return {"P": self.P.to_json(), "Q": self.Q.to_json()}


@dataclass(frozen=True)
class BranchData:
    disc: UniPoly
    constant: Fraction
    S: UniPoly
    roots: RootSet | None
    infinity: bool

    @property
    def count(self) -> int:
        return (len(self.roots.roots) if self.roots else 0) + int(self.infinity)

    def points(self) -> list:
        pts = list(self.roots.roots) if self.roots else []
        return pts + ([INFINITY] if self.infinity else [])

    def to_json(self) -> dict:
        return {
            "disc": self.disc.to_json(),
            "constant": fraction_to_str(self.constant),
            "S": self.S.to_json(),
            "finite_branch_points": [complex_to_json(r, 30) for r in (self.roots.roots if self.roots else ())],
            "infinity": self.infinity,
        }


def pencil_discriminant(pencil: Pencil) -> UniPoly:
    return discriminant(pencil.bivariate(), "X").with_var("T")


def infinity_is_branch(Q: UniPoly) -> bool:
    return Q.degree < 6 or any(m > 1 for _, m in Q.squarefree_decomposition())


def disc_split(pencil: Pencil, digits: int = 100) -> BranchData:
    """disc_X(P - TQ) = c S(T)^2 exactly, with S's roots and the flag for T = ∞.

    Raises NotInGroupError when the discriminant is not a constant times a square.
    """
    disc = pencil_discriminant(pencil)
    if disc.is_zero():
        raise NotInGroupError("discriminant vanishes identically")
    try:
        c, S = root_up_to_scalar(disc, 2)
    except NotAPowerError as exc:
        raise NotInGroupError("disc_X(P - TQ) is not a square in Q[T]") from exc
    roots = complex_roots(S, digits) if S.degree >= 1 else None
    return BranchData(disc, c, S, roots, infinity_is_branch(pencil.Q))


def _profile_at_infinity(Q: UniPoly) -> tuple[int, ...]:
    mults = []
    for f, m in Q.squarefree_decomposition():
        mults.extend([m] * f.degree)
    drop = 7 - Q.degree
    if drop:
        mults.append(drop)
    return tuple(sorted(mults, reverse=True))


def _refine_root(S: UniPoly, t0, digits: int):
    """Newton-polish a simple root of S at the requested precision."""
    with mpmath.workdps(digits + GUARD_DIGITS):
        cs = [to_mp(c) for c in S.coeffs]
        dcs = [i * c for i, c in enumerate(cs)][1:]
        t = mpmath.mpc(t0)
        for _ in range(200):
            f = mpmath.polyval(cs[::-1], t)
            d = mpmath.polyval(dcs[::-1], t)
            if d == 0:
                break
            step = f / d
            t -= step
            if abs(step) <= mpmath.mpf(10) ** (-(digits + GUARD_DIGITS // 2)) * (1 + abs(t)):
                break
        return t


@dataclass(frozen=True)
class Ramification:
    point: object
    profile: tuple
    residual: object
    digits: int


def ramification(pencil: Pencil, point, digits: int = 100, S: UniPoly | None = None) -> Ramification:
    """Multiplicity pattern of the fibre of X -> P/Q over a branch point.

    T = ∞ is exact (Q's squarefree shape plus the degree drop).  A finite
    t* is only known numerically, so P - t*Q is clustered with coefficient
    uncertainty of the order of t*'s error; an undecidable clustering is
    retried with doubled precision (re-polishing t* on S when S is given).
    """
    if isinstance(point, str) and point == INFINITY:
        return Ramification(INFINITY, _profile_at_infinity(pencil.Q), Fraction(0), digits)
    if isinstance(point, (Fraction, int)):
        return _exact_point(pencil, Fraction(point), digits)
    d = digits
    t = point
    for attempt in range(MAX_PRECISION_RETRIES + 1):
        with mpmath.workdps(d + GUARD_DIGITS):
            if S is not None:
                t = _refine_root(S, t, d)
            member = [to_mp(p) - t * to_mp(q) for p, q in
                      zip(pencil.P.coeffs, list(pencil.Q.coeffs) + [0] * 8)]
            try:
                rs = complex_roots(member, d, coeff_error=mpmath.mpf(10) ** (-(d - 5)))
            except (AmbiguousClustering, RootFindingError):
                if attempt == MAX_PRECISION_RETRIES or S is None:
                    raise
                d *= 2
                continue
            resid = max(abs(mpmath.polyval(member[::-1], r)) for r in rs.roots)
            return Ramification(t, rs.profile(), resid, d)
    raise AmbiguousClustering("clustering undecidable")


def _exact_point(pencil: Pencil, t: Fraction, digits: int) -> Ramification:
    m = pencil.member(t)
    mults = []
    for f, k in m.squarefree_decomposition():
        mults.extend([k] * f.degree)
    return Ramification(t, tuple(sorted(mults, reverse=True)), Fraction(0), digits)


def ramification_profile(pencil: Pencil, point, digits: int = 100, S: UniPoly | None = None) -> tuple:
    return ramification(pencil, point, digits, S).profile


# -- certification ---------------------------------------------------------

@dataclass
class Certification:
    coprime: bool = False
    square_discriminant: bool = False
    distinct_branch_points: bool = False
    branch_count: int = 0
    profiles: list = field(default_factory=list)
    residuals: list = field(default_factory=list)
    error: str | None = None

    @property
    def certified(self) -> bool:
        return (self.coprime and self.square_discriminant and self.distinct_branch_points
                and self.branch_count == 6 and len(self.profiles) == 6
                and all(tuple(p) == EXPECTED_PROFILE for p in self.profiles))

    def to_json(self) -> dict:
        return {
            "coprime": self.coprime,
            "square_discriminant": self.square_discriminant,
            "distinct_branch_points": self.distinct_branch_points,
            "branch_count": self.branch_count,
            "profiles": [list(p) for p in self.profiles],
            "max_residual": mpmath.nstr(max(self.residuals), 5) if self.residuals else None,
            "error": self.error,
            "certified": self.certified,
        }


def certify(P: UniPoly, Q: UniPoly, digits: int = 100) -> Certification:
    """Exact square-discriminant test plus the six (2,2,1,1,1) fibres."""
    cert = Certification()
    if Q.is_zero() or Q.degree > 6 or P.gcd(Q).degree > 0:
        cert.error = "P and Q are not coprime (or Q is out of range)"
        return cert
    cert.coprime = True
    pencil = Pencil(P, Q)
    try:
        bd = disc_split(pencil, digits)
    except NotInGroupError as exc:
        cert.error = str(exc)
        return cert
    cert.square_discriminant = True
    cert.distinct_branch_points = bd.S.degree < 1 or bd.S.gcd(bd.S.derivative()).degree == 0
    cert.branch_count = bd.count
    try:
        for pt in bd.points():
            r = ramification(pencil, pt, digits, bd.S)
            cert.profiles.append(r.profile)
            if pt != INFINITY:
                cert.residuals.append(r.residual)
    except (AmbiguousClustering, RootFindingError) as exc:
        cert.error = str(exc)
    return cert


# -- lift ------------------------------------------------------------------

def default_denominator_bound(P: UniPoly) -> int:
    """10^12, scaled by the 21st power of P's coefficient denominator."""
    d = 1
    for c in P.coeffs:
        d = lcm(d, Fraction(c).denominator)
    return BASE_DENOMINATOR_BOUND * d**21


@dataclass
class Candidate:
    index: int
    structure: list
    Q: UniPoly | None = None
    reason: str | None = None
    certification: Certification | None = None

    @property
    def certified(self) -> bool:
        return self.certification is not None and self.certification.certified

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "structure": self.structure,
            "Q": self.Q.to_json() if self.Q is not None else None,
            "reason": self.reason,
            "certification": self.certification.to_json() if self.certification else None,
        }


@dataclass
class LiftReport:
    input: UniPoly
    P: UniPoly
    scale: Fraction
    digits: int
    denominator_bound: int
    candidates: list

    @property
    def certified(self) -> list[Candidate]:
        return [c for c in self.candidates if c.certified]

    @property
    def status(self) -> str:
        return "CERTIFIED" if self.certified else "NOT_CERTIFIED"

    def classes(self) -> list[dict]:
        """Certified candidates grouped by their (primitive) Q."""
        groups: dict = {}
        for c in self.certified:
            key = tuple(c.Q.primitive().coeffs)
            groups.setdefault(key, []).append(c.index)
        return [{"Q": UniPoly(k).to_json(), "structures": v} for k, v in groups.items()]

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "input": self.input.to_json(),
            "P": self.P.to_json(),
            "normalization": fraction_to_str(self.scale),
            "digits": self.digits,
            "denominator_bound": str(self.denominator_bound),
            "certified_classes": self.classes(),
            "candidates": [c.to_json() for c in self.candidates],
        }


def _reconstruct(Qn: UniPoly, digits: int, bound: int) -> tuple[UniPoly | None, str | None]:
    with mpmath.workdps(digits + GUARD_DIGITS):
        cs = [mpmath.mpc(c) for c in Qn.coeffs]
        if not cs:
            return None, "numeric Q vanishes"
        k = max(range(len(cs)), key=lambda i: abs(cs[i]))
        pivot = cs[k]
        if abs(pivot) <= mpmath.mpf(10) ** (-(digits // 2)):
            return None, "numeric Q vanishes"
        eps = mpmath.mpf(10) ** (-(digits // 2))
        out = []
        for c in cs:
            r = c / pivot
            if abs(r.imag) > eps:
                return None, "coefficients are not real"
            if abs(r.real) <= eps:
                out.append(Fraction(0))
                continue
            f = rational_reconstruct(r.real, bound, eps=eps)
            if f is None:
                return None, "rational reconstruction failed"
            out.append(f)
    return UniPoly(out, "X").primitive(), None


def lift(P: UniPoly, digits: int = DEFAULT_DIGITS, denominator_bound: int | None = None,
         cert_digits: int = 100) -> LiftReport:
    """Search the 30 Fano structures on P's roots for a rational pencil partner Q.

    Every numerically reconstructed Q is re-certified exactly (square
    discriminant, six branch points with fibres (2,2,1,1,1)) before it is
    reported as certified.
    """
    P_in = P.with_var("X")
    if P_in.degree != 7:
        raise DomainError(f"expected a septic, got degree {P_in.degree}")
    scale = P_in.lc
    Pm = P_in.monic()
    if Pm.gcd(Pm.derivative()).degree > 0:
        raise DomainError("P is not separable")
    bound = denominator_bound or default_denominator_bound(Pm)
    roots = complex_roots(Pm, digits)
    if roots.profile() != (1,) * 7:
        raise RootFindingError("numeric roots are not simple")
    candidates = []
    for idx, st in enumerate(all_fano_structures()):
        cand = Candidate(idx, st.to_json())
        candidates.append(cand)
        try:
            cfg = SeptupleConfig(roots.roots, st, "numeric", digits)
            Qn = closed_form_Q(cfg)
        except DegenerateConfiguration as exc:
            cand.reason = f"degenerate: {exc}"
            continue
        Q, why = _reconstruct(Qn, digits, bound)
        if Q is None:
            cand.reason = why
            continue
        cand.Q = Q
        cand.certification = certify(Pm, Q, cert_digits)
    return LiftReport(P_in, Pm, scale, digits, bound, candidates)


# -- Noether decomposition ------------------------------------------------

@dataclass(frozen=True)
class NoetherDecomposition:
    R: UniPoly
    Q1: UniPoly
    t: Fraction
    q6: Fraction

    def to_json(self) -> dict:
        return {"R": self.R.to_json(), "Q1": self.Q1.to_json(), "t": fraction_to_str(self.t),
                "q6": fraction_to_str(self.q6)}


def noether_decompose(P: UniPoly, Q: UniPoly) -> NoetherDecomposition:
    """P = R - t Q1 with Q1 = Q made monic, t = prod(roots)/Q1(0), R(0) = 0."""
    P = P.with_var("X")
    if P.degree != 7 or P.lc != 1:
        raise DomainError("P must be monic of degree 7")
    if Q.degree != 6:
        raise DegenerateConfiguration("decomposition needs deg Q = 6", guard="deg_Q")
    Q1 = Q.with_var("X").monic()
    q6 = Q1.coeff(0)
    if q6 == 0:
        raise DegenerateConfiguration("decomposition needs Q(0) != 0", guard="Q(0)")
    prod_roots = -P.coeff(0)
    t = prod_roots / q6
    R = P + Q1 * t
    if R.degree != 7 or R.lc != 1 or R.coeff(0) != 0 or R - Q1 * t != P:
        raise AssertionError("Noether decomposition failed its own identities")
    return NoetherDecomposition(R, Q1, t, q6)


def parse_poly(coeffs, var: str = "X") -> UniPoly:
    """Ascending coefficient list of exact strings/ints -> UniPoly."""
    return UniPoly([parse_fraction(c) for c in coeffs], var)
