"""Dense univariate and bivariate polynomials.

Coefficients are stored in ascending degree.  The classes are generic over
the coefficient field: exact work uses :class:`fractions.Fraction`, numeric
work uses ``mpmath`` numbers.  Python ints are promoted to ``Fraction`` so
that ``/`` never silently produces a float.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from ..errors import DomainError, NotAPowerError


def coerce(c):
    if isinstance(c, bool):
        return Fraction(int(c))
    if isinstance(c, (int, str)):
        return Fraction(c)
    return c


def _strip(cs: list) -> tuple:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class UniPoly:
    """Polynomial in a single named variable."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "X"):
        self.coeffs = _strip([coerce(c) for c in coeffs])
        self.var = var

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c, var: str = "X") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "X") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "X") -> "UniPoly":
        p = cls([1], var)
        for r in roots:
            p = p * cls([-coerce(r), 1], var)
        return p

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"UniPoly(0, {self.var})"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            terms.append(f"{c}" if i == 0 else f"{c}*{self.var}^{i}")
        return "UniPoly(" + " + ".join(terms) + f", {self.var})"

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            if self.degree <= 0 and other.degree <= 0:
                return self.coeffs == other.coeffs
            return self.var == other.var and self.coeffs == other.coeffs
        if isinstance(other, BiPoly):
            return NotImplemented
        other = coerce(other)
        if other == 0:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self) -> int:
        return hash((self.var if self.degree > 0 else None, self.coeffs))

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "UniPoly") -> None:
        if other.var != self.var and other.degree > 0 and self.degree > 0:
            raise DomainError(f"variable mismatch: {self.var} vs {other.var}")

    def _var_with(self, other: "UniPoly") -> str:
        return self.var if self.degree > 0 or other.degree <= 0 else other.var

    def __add__(self, other):
        if isinstance(other, BiPoly):
            return NotImplemented
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self._var_with(other))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        if isinstance(other, BiPoly):
            return NotImplemented
        if not isinstance(other, UniPoly):
            other = UniPoly([other], self.var)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, BiPoly):
            return NotImplemented
        if not isinstance(other, UniPoly):
            other = coerce(other)
            return UniPoly([c * other for c in self.coeffs], self.var)
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self._var_with(other))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self._var_with(other))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        if n < 0:
            raise DomainError("negative power of a polynomial")
        result, base = UniPoly([1], self.var), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c) -> "UniPoly":
        if isinstance(c, (UniPoly, BiPoly)):
            raise TypeError("use divmod or exact_div for polynomial division")
        c = coerce(c)
        return UniPoly([a / c for a in self.coeffs], self.var)

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        self._check(other)
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly([], self.var), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.lc
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if c != 0:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return UniPoly(quot, self.var), UniPoly(rem[: len(other.coeffs) - 1], self.var)

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self / other
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError(f"inexact division of {self} by {other}")
        return q

    # -- calculus and transforms -------------------------------------
    def derivative(self, k: int = 1) -> "UniPoly":
        cs = list(self.coeffs)
        for _ in range(k):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return UniPoly(cs, self.var)

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly([], other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, c) -> "UniPoly":
        """p(X + c)."""
        return self.compose(UniPoly([c, 1], self.var))

    def reverse(self, n: int | None = None) -> "UniPoly":
        """X^n p(1/X), with n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return UniPoly(cs[: n + 1][::-1], self.var)

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def map_coeffs(self, f) -> "UniPoly":
        return UniPoly([f(c) for c in self.coeffs], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            raise DomainError("zero polynomial has no monic form")
        return self / self.lc

    def primitive(self) -> "UniPoly":
        """Scale a rational polynomial to coprime integers with positive lead."""
        return UniPoly(_primitive(self.coeffs), self.var)

    def normalized(self) -> "UniPoly":
        """Scale so the first nonzero coefficient (lowest degree) is 1."""
        for c in self.coeffs:
            if c != 0:
                return self / c
        return self

    # -- gcd and factor-shape helpers (rational coefficients) --------
    def gcd(self, other: "UniPoly") -> "UniPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def squarefree_decomposition(self) -> list[tuple["UniPoly", int]]:
        """Yun's algorithm: [(f_i, i)] with p = lc * prod f_i^i, f_i squarefree."""
        if self.degree < 1:
            return []
        f = self.monic()
        out = []
        a = f.gcd(f.derivative())
        b = f.exact_div(a)
        c = f.derivative().exact_div(a)
        d = c - b.derivative()
        i = 1
        while b.degree > 0:
            g = b.gcd(d)
            if g.degree > 0:
                out.append((g, i))
            b = b.exact_div(g)
            c = d.exact_div(g)
            d = c - b.derivative()
            i += 1
        return out

    def nth_root(self, k: int) -> "UniPoly":
        """Exact k-th root of a polynomial whose lowest nonzero term is 1.

        Raises NotAPowerError when no polynomial root exists.
        """
        if self.is_zero():
            return self
        low = next(i for i, c in enumerate(self.coeffs) if c != 0)
        if low % k or self.degree % k:
            raise NotAPowerError(f"degree pattern of {self} is not a {k}-th power")
        f = self.coeffs[low:]
        if f[0] != 1:
            raise NotAPowerError("lowest coefficient must be normalized to 1")
        m = (self.degree - low) // k
        alpha = Fraction(1, k)
        # power-series f^alpha with f0 = 1
        g = [Fraction(1)]
        for n in range(1, m + 1):
            s = 0
            for j in range(1, min(n, len(f) - 1) + 1):
                s += ((alpha + 1) * j - n) * f[j] * g[n - j]
            g.append(s / n)
        root = UniPoly([0] * (low // k) + g, self.var)
        if root ** k != self:
            raise NotAPowerError(f"{self} is not a perfect {k}-th power")
        return root

    # -- serialization -----------------------------------------------
    def to_json(self) -> list[str]:
        return [fraction_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence, var: str = "X") -> "UniPoly":
        return cls([parse_fraction(c) for c in data], var)


class BiPoly:
    """Polynomial in two named variables, stored as rows of UniPolys.

    ``rows[i]`` is the coefficient of ``v1**i``, a UniPoly in ``v2``.
    """

    __slots__ = ("rows", "vars")

    def __init__(self, rows: Iterable = (), vars: tuple[str, str] = ("X", "Y")):
        v1, v2 = vars
        rs = []
        for r in rows:
            if isinstance(r, UniPoly):
                rs.append(r.with_var(v2))
            else:
                rs.append(UniPoly(r, v2))
        while rs and rs[-1].is_zero():
            rs.pop()
        self.rows = tuple(rs)
        self.vars = (v1, v2)

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence], vars=("X", "Y")) -> "BiPoly":
        return cls([UniPoly(row, vars[1]) for row in m], vars)

    @classmethod
    def from_uni(cls, p: UniPoly, vars=("X", "Y")) -> "BiPoly":
        if p.var == vars[0] or p.degree <= 0 and p.var != vars[1]:
            return cls([UniPoly([c], vars[1]) for c in p.coeffs], vars)
        if p.var == vars[1]:
            return cls([p], vars)
        raise DomainError(f"variable {p.var} not in {vars}")

    @classmethod
    def outer(cls, p: UniPoly, q: UniPoly, vars=("X", "Y")) -> "BiPoly":
        """p(v1) * q(v2)."""
        return cls([q * c for c in p.coeffs], vars)

    @property
    def bidegree(self) -> tuple[int, int]:
        if not self.rows:
            return (-1, -1)
        return (len(self.rows) - 1, max(r.degree for r in self.rows))

    def is_zero(self) -> bool:
        return not self.rows

    def coeff(self, i: int, j: int):
        return self.rows[i].coeff(j) if 0 <= i < len(self.rows) else Fraction(0)

    def matrix(self) -> list[list]:
        _, dy = self.bidegree
        return [[r.coeff(j) for j in range(dy + 1)] for r in self.rows]

    def terms(self):
        for i, r in enumerate(self.rows):
            for j, c in enumerate(r.coeffs):
                if c != 0:
                    yield (i, j), c

    def __repr__(self) -> str:
        return f"BiPoly({self.matrix()}, {self.vars})"

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            if self.is_zero() and other.is_zero():
                return True
            return self.vars == other.vars and self.rows == other.rows
        if isinstance(other, UniPoly):
            try:
                return self == BiPoly.from_uni(other, self.vars)
            except DomainError:
                return False
        other = coerce(other)
        return self == BiPoly([[other]], self.vars)

    def __hash__(self) -> int:
        return hash((self.vars, self.rows))

    def __call__(self, a, b):
        acc = 0
        for r in reversed(self.rows):
            acc = acc * a + r(b)
        return acc

    def _lift(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            if other.vars != self.vars and not other.is_zero() and not self.is_zero():
                if other.vars == self.vars[::-1]:
                    return other.swap()
                raise DomainError(f"variable mismatch: {self.vars} vs {other.vars}")
            return BiPoly(other.rows, self.vars)
        if isinstance(other, UniPoly):
            return BiPoly.from_uni(other, self.vars)
        return BiPoly([[other]], self.vars)

    def __add__(self, other) -> "BiPoly":
        other = self._lift(other)
        n = max(len(self.rows), len(other.rows))
        z = UniPoly([], self.vars[1])
        rows = [(self.rows[i] if i < len(self.rows) else z) + (other.rows[i] if i < len(other.rows) else z)
                for i in range(n)]
        return BiPoly(rows, self.vars)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly([-r for r in self.rows], self.vars)

    def __sub__(self, other) -> "BiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "BiPoly":
        return (-self) + other

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, (BiPoly, UniPoly)):
            other = coerce(other)
            return BiPoly([r * other for r in self.rows], self.vars)
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return BiPoly([], self.vars)
        out = [UniPoly([], self.vars[1]) for _ in range(len(self.rows) + len(other.rows) - 1)]
        for i, a in enumerate(self.rows):
            if a.is_zero():
                continue
            for j, b in enumerate(other.rows):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BiPoly(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        result, base = BiPoly([[1]], self.vars), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, c) -> "BiPoly":
        c = coerce(c)
        return BiPoly([r / c for r in self.rows], self.vars)

    # -- evaluation and reshaping ------------------------------------
    def eval_first(self, a) -> UniPoly:
        """Substitute v1 = a; returns a UniPoly in v2."""
        acc = UniPoly([], self.vars[1])
        for r in reversed(self.rows):
            acc = acc * a + r
        return acc

    def eval_second(self, b) -> UniPoly:
        """Substitute v2 = b; returns a UniPoly in v1."""
        return UniPoly([r(b) for r in self.rows], self.vars[0])

    def eval_var(self, var: str, value) -> UniPoly:
        if var == self.vars[0]:
            return self.eval_first(value)
        if var == self.vars[1]:
            return self.eval_second(value)
        raise DomainError(f"{var} not in {self.vars}")

    def swap(self) -> "BiPoly":
        dx, dy = self.bidegree
        rows = [[self.coeff(i, j) for i in range(dx + 1)] for j in range(dy + 1)]
        return BiPoly.from_matrix(rows, self.vars[::-1])

    def rename(self, v1: str, v2: str) -> "BiPoly":
        return BiPoly(self.rows, (v1, v2))

    def in_order(self, vars: tuple[str, str]) -> "BiPoly":
        if self.vars == tuple(vars):
            return self
        if self.vars == tuple(vars)[::-1]:
            return self.swap()
        raise DomainError(f"cannot reorder {self.vars} as {vars}")

    def degree_in(self, var: str) -> int:
        dx, dy = self.bidegree
        if var == self.vars[0]:
            return dx
        if var == self.vars[1]:
            return dy
        return 0 if not self.is_zero() else -1

    def diff(self, var: str) -> "BiPoly":
        if var == self.vars[0]:
            return BiPoly([r * i for i, r in enumerate(self.rows)][1:], self.vars)
        if var == self.vars[1]:
            return BiPoly([r.derivative() for r in self.rows], self.vars)
        return BiPoly([], self.vars)

    def map_coeffs(self, f) -> "BiPoly":
        return BiPoly([r.map_coeffs(f) for r in self.rows], self.vars)

    def is_symmetric(self) -> bool:
        return self == self.swap().rename(*self.vars)

    # -- division ----------------------------------------------------
    def divmod_first(self, d: UniPoly):
        """Euclidean division in v1 by a univariate polynomial in v1.

        Coefficients of the quotient and remainder are polynomials in v2;
        the divisor's coefficients are scalars, so no fractions in v2 arise.
        """
        if d.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.rows)
        n = len(d.coeffs)
        dq = len(rem) - n
        z = UniPoly([], self.vars[1])
        if dq < 0:
            return BiPoly([], self.vars), self
        quot = [z] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + n - 1] / d.lc
            quot[k] = c
            if not c.is_zero():
                for j, b in enumerate(d.coeffs):
                    if b != 0:
                        rem[k + j] = rem[k + j] - c * b
        return BiPoly(quot, self.vars), BiPoly(rem[: n - 1], self.vars)

    def exact_div(self, other) -> "BiPoly":
        """Exact division by a BiPoly (same variables) or a scalar.

        Long division in v1; each leading-coefficient quotient in v2 must be
        exact, otherwise DomainError.
        """
        if not isinstance(other, (BiPoly, UniPoly)):
            return self / other
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.rows)
        n = len(other.rows)
        dq = len(rem) - n
        if dq < 0:
            if self.is_zero():
                return self
            raise DomainError("inexact bivariate division")
        z = UniPoly([], self.vars[1])
        quot = [z] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + n - 1].exact_div(other.rows[-1])
            quot[k] = c
            if not c.is_zero():
                for j, b in enumerate(other.rows):
                    if not b.is_zero():
                        rem[k + j] = rem[k + j] - c * b
        if any(not r.is_zero() for r in rem[: n - 1]):
            raise DomainError("inexact bivariate division")
        return BiPoly(quot, self.vars)

    def divides_by_power(self, d: "BiPoly") -> int:
        """Largest e with d**e dividing self exactly (self nonzero)."""
        e, cur = 0, self
        while True:
            try:
                cur = cur.exact_div(d)
            except DomainError:
                return e
            e += 1

    # -- normalization ------------------------------------------------
    def normalized(self) -> "BiPoly":
        """Scale so the first nonzero coefficient in (i, j) lex order is 1."""
        for _, c in self.terms():
            return self / c
        return self

    def primitive(self) -> "BiPoly":
        cs = [c for _, c in self.terms()]
        if not cs:
            return self
        scale = _primitive_scale(cs)
        return self * scale

    def to_json(self) -> list[list[str]]:
        return [[fraction_to_str(c) for c in row] for row in self.matrix()]

    @classmethod
    def from_json(cls, data, vars=("X", "Y")) -> "BiPoly":
        return cls.from_matrix([[parse_fraction(c) for c in row] for row in data], vars)


def _primitive_scale(cs: Sequence[Fraction]) -> Fraction:
    den = 1
    for c in cs:
        den = lcm(den, Fraction(c).denominator)
    g = 0
    for c in cs:
        g = gcd(g, int(Fraction(c) * den))
    scale = Fraction(den, g)
    return -scale if cs[-1] < 0 else scale


def _primitive(cs: Sequence[Fraction]) -> list[Fraction]:
    nz = [c for c in cs if c != 0]
    if not nz:
        return []
    scale = _primitive_scale(nz)
    return [c * scale for c in cs]


def proportional(a, b):
    """Return r with a == r * b (r nonzero), or None.

    Works for UniPoly, BiPoly and sequences of scalars.
    """
    ta, tb = _term_map(a), _term_map(b)
    if not ta or not tb or ta.keys() != tb.keys():
        return None
    key = next(iter(ta))
    r = ta[key] / tb[key]
    if all(ta[k] == r * tb[k] for k in ta):
        return r
    return None


def _term_map(p) -> dict:
    if isinstance(p, BiPoly):
        return dict(p.terms())
    if isinstance(p, UniPoly):
        return {i: c for i, c in enumerate(p.coeffs) if c != 0}
    return {i: coerce(c) for i, c in enumerate(p) if c != 0}


def fraction_to_str(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, float):
        raise DomainError("floats are not accepted as exact coefficients")
    return Fraction(str(s).strip())
