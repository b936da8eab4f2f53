"""Sign-equivariant cubic covariants u_i, v_i of seven values.

Polynomials in x1..x7 are kept as sparse exponent maps.  The group acts by
substitution: σ(f)(x1, ..., x7) = f(x_σ(1), ..., x_σ(7)).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Sequence

from .errors import DomainError
from .exact.linalg import det_rational, rref
from .exact.poly import coerce, fraction_to_str, parse_fraction
from .fano import POINTS, Perm, Sylow, sign_char, stabilizer, sylow7

NVARS = 7
MONOMIALS = tuple(combinations(POINTS, 3))
MONOMIAL_INDEX = {m: k for k, m in enumerate(MONOMIALS)}


class MPoly:
    """Sparse polynomial with rational coefficients in x1..x7."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {e: coerce(c) for e, c in (terms or {}).items() if c != 0}

    @classmethod
    def var(cls, i: int) -> "MPoly":
        e = [0] * NVARS
        e[i - 1] = 1
        return cls({tuple(e): Fraction(1)})

    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({(0,) * NVARS: coerce(c)})

    def _lift(self, other) -> "MPoly":
        return other if isinstance(other, MPoly) else MPoly.const(other)

    def __add__(self, other) -> "MPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "MPoly":
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MPoly":
        out = MPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._lift(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"MPoly({len(self.terms)} terms)"

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def __call__(self, values: Sequence):
        """Evaluate at (x1, ..., x7); values may be any ring elements."""
        if len(values) != NVARS:
            raise DomainError(f"expected {NVARS} values, got {len(values)}")
        total = 0
        for e, c in self.terms.items():
            term = c
            for v, k in zip(values, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def act(self, perm: Perm) -> "MPoly":
        """σ(f)(x) = f(x_σ(1), ..., x_σ(7)): the exponent of x_i moves to x_σ(i)."""
        out = {}
        for e, c in self.terms.items():
            ne = [0] * NVARS
            for i, k in enumerate(e):
                ne[perm[i] - 1] = k
            out[tuple(ne)] = c
        return MPoly(out)

    def is_multilinear(self) -> bool:
        return all(max(e) <= 1 for e in self.terms)

    def is_multilinear_cubic(self) -> bool:
        return self.is_multilinear() and all(sum(e) == 3 for e in self.terms)

    def to_vector(self) -> list[Fraction]:
        """Coefficients on the 35 monomials x_i x_j x_k (i < j < k), lexicographic."""
        if not self.is_multilinear_cubic():
            raise DomainError("not a multilinear cubic")
        vec = [Fraction(0)] * len(MONOMIALS)
        for e, c in self.terms.items():
            vec[MONOMIAL_INDEX[tuple(i + 1 for i, k in enumerate(e) if k)]] = c
        return vec

    @classmethod
    def from_vector(cls, vec: Sequence) -> "MPoly":
        out = {}
        for m, c in zip(MONOMIALS, vec):
            e = [0] * NVARS
            for i in m:
                e[i - 1] = 1
            out[tuple(e)] = c
        return cls(out)

    def reciprocal(self) -> "MPoly":
        """f(1/x1, ..., 1/x7) * x1...x7, valid for multilinear f."""
        if not self.is_multilinear():
            raise DomainError("reciprocal transform needs a multilinear polynomial")
        return MPoly({tuple(1 - k for k in e): c for e, c in self.terms.items()})

    def to_json(self) -> dict:
        vec = self.to_vector()
        return {"monomials": [list(m) for m in MONOMIALS], "coefficients": [fraction_to_str(c) for c in vec]}

    @classmethod
    def from_json(cls, data: dict) -> "MPoly":
        vec = [Fraction(0)] * len(MONOMIALS)
        for m, c in zip(data["monomials"], data["coefficients"]):
            vec[MONOMIAL_INDEX[tuple(m)]] = parse_fraction(c)
        return cls.from_vector(vec)


def _x(i: int) -> MPoly:
    return MPoly.var(i)


@lru_cache(maxsize=1)
def u1() -> MPoly:
    x = _x
    return (x(2) - x(3)) * (x(4) - x(5)) * (x(6) - x(7)) + (x(2) - x(4)) * (x(3) - x(7)) * (x(5) - x(6))


@lru_cache(maxsize=1)
def v1() -> MPoly:
    x = _x
    p = (x(2) * (x(5) - x(7)) * (x(1) - x(6)) + x(3) * (x(1) - x(5)) * (x(7) - x(6))
         + x(4) * (x(1) - x(7)) * (x(6) - x(5)))
    # fail loudly rather than truncate if the expansion leaves the multilinear space
    if not p.is_multilinear_cubic():
        raise AssertionError("v1 expanded outside the multilinear cubic space")
    return p


def u1_factored(x: Sequence):
    """u1 evaluated from its product form, independent of the expansion."""
    x = (None, *x)
    return (x[2] - x[3]) * (x[4] - x[5]) * (x[6] - x[7]) + (x[2] - x[4]) * (x[3] - x[7]) * (x[5] - x[6])


def v1_factored(x: Sequence):
    x = (None, *x)
    return (x[2] * (x[5] - x[7]) * (x[1] - x[6]) + x[3] * (x[1] - x[5]) * (x[7] - x[6])
            + x[4] * (x[1] - x[7]) * (x[6] - x[5]))


@lru_cache(maxsize=1)
def y1_numerator() -> MPoly:
    """Numerator of the canonical dual value: y1 = y1_numerator / v1."""
    return -v1().reciprocal()


def projector_matrix(i: int, kind: str = "point") -> list[list[Fraction]]:
    """(1/|G_i|) Σ ε_i(σ) σ on the 35-dimensional monomial space, as columns."""
    g_i = stabilizer(i, kind)
    eps = sign_char(i, kind)
    n = len(MONOMIALS)
    mat = [[Fraction(0)] * n for _ in range(n)]
    for col, m in enumerate(MONOMIALS):
        for sigma in g_i:
            img = tuple(sorted(sigma[k - 1] for k in m))
            mat[MONOMIAL_INDEX[img]][col] += eps(sigma)
    size = g_i.order
    return [[c / size for c in row] for row in mat]


def st_space(i: int, kind: str = "point") -> list[MPoly]:
    """Basis of the ε_i-isotypic multilinear cubics, as the projector's image."""
    mat = projector_matrix(i, kind)
    transposed = [list(col) for col in zip(*mat)]
    red, _ = rref(transposed)
    return [MPoly.from_vector(row) for row in red]


def involution_condition(pairs: Sequence[tuple]) -> Fraction:
    """det of rows (1, p+q, pq): zero iff one involutive homography swaps all three pairs.

    An involution t -> (a t + b)/(c t - a) swaps p and q exactly when
    c pq - a (p + q) - b = 0, a linear condition on (c, a, b).  For the
    pairs ((x2,x6),(x3,x5),(x4,x7)) the determinant equals u1.
    """
    if len(pairs) != 3:
        raise DomainError("need exactly three pairs")
    flat = [coerce(v) for pr in pairs for v in pr]
    if len(set(flat)) != 6:
        raise DomainError("pair values must be pairwise distinct")
    return det_rational([[1, p + q, p * q] for p, q in (tuple(coerce(v) for v in pr) for pr in pairs)])


@dataclass(frozen=True)
class CovariantFamily:
    """u_a for points and v_b for lines, transported by a fixed 7-Sylow.

    u_σ(1) = σ(u1) and v_σ(1') = σ(v1) for σ in the Sylow.
    """

    sylow: Sylow

    @cached_property
    def u(self) -> dict[int, MPoly]:
        return {s[0]: u1().act(s) for s in self.sylow.elements}

    @cached_property
    def v(self) -> dict[int, MPoly]:
        return {self.sylow.line_of(s): v1().act(s) for s in self.sylow.elements}

    @cached_property
    def point_perm(self) -> dict[int, Perm]:
        return {s[0]: s for s in self.sylow.elements}

    @cached_property
    def line_perm(self) -> dict[int, Perm]:
        return {self.sylow.line_of(s): s for s in self.sylow.elements}

    def sign_relative(self, g: Perm, a: int) -> int:
        """s with g(u1) = s * u_a for any g in G sending point 1 to a."""
        if g[0] != a:
            raise DomainError(f"{g} does not send 1 to {a}")
        img = u1().act(g)
        if img == self.u[a]:
            return 1
        if img == -self.u[a]:
            return -1
        raise AssertionError("image of u1 is not ± u_a")

    def u_values(self, x: Sequence) -> dict[int, object]:
        return {a: p(x) for a, p in self.u.items()}

    def v_values(self, x: Sequence) -> dict[int, object]:
        return {b: p(x) for b, p in self.v.items()}


@lru_cache(maxsize=1)
def default_family() -> CovariantFamily:
    return CovariantFamily(sylow7())
