"""Arbitrary-precision complex roots and numeric evaluation.

Numbers are ``mpmath`` mpf/mpc values; every entry point takes an explicit
``digits`` argument and does its work inside ``mpmath.workdps``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import mpmath
from mpmath import mpc, mpf

from .errors import AmbiguousClustering, DegenerateConfiguration, DomainError, RootFindingError
from .exact.poly import UniPoly

DEFAULT_DIGITS = 200
GUARD_DIGITS = 20
MERGE_FACTOR = 10
# pairs closer than this multiple of the merge threshold are undecidable
AMBIGUITY_FACTOR = 1000
INIT_ANGLE_OFFSET = 0.7
STALL_PATIENCE = 25
CLUSTER_STEP_EVERY = 10
MAX_CLUSTER_STEPS = 3
# a group is tight when its spread is this small relative to the next root
CLUSTER_RATIO = mpf("1e-3")


def to_mp(c):
    """Fraction / int / str / mp number -> mp number at the current precision."""
    if isinstance(c, Fraction):
        return mpf(c.numerator) / c.denominator
    if isinstance(c, (mpf, mpc)):
        return c
    return mpmath.mpmathify(c)


@dataclass(frozen=True)
class NumericValue:
    """A BigComplex value together with an absolute error bound."""

    value: mpc
    error: mpf
    digits: int

    def to_json(self) -> dict:
        return complex_to_json(self.value, self.digits) | {"error": mpmath.nstr(self.error, 5)}


def complex_to_json(z, digits: int) -> dict:
    z = mpmath.mpc(z)
    return {"re": mpmath.nstr(z.real, digits), "im": mpmath.nstr(z.imag, digits), "digits": digits}


def complex_from_json(d: dict):
    with mpmath.workdps(int(d["digits"]) + GUARD_DIGITS):
        return mpc(mpf(d["re"]), mpf(d["im"]))


@dataclass(frozen=True)
class RootSet:
    roots: tuple
    multiplicities: tuple
    residual: mpf
    radii: tuple
    digits: int
    poly: object = field(repr=False, compare=False)

    @property
    def degree(self) -> int:
        return sum(self.multiplicities)

    def profile(self) -> tuple[int, ...]:
        return tuple(sorted(self.multiplicities, reverse=True))

    def simple_roots(self) -> list:
        return [r for r, m in zip(self.roots, self.multiplicities) if m == 1]

    def expanded(self) -> list:
        out = []
        for r, m in zip(self.roots, self.multiplicities):
            out.extend([r] * m)
        return out


def _horner(cs, z):
    acc = 0
    for c in reversed(cs):
        acc = acc * z + c
    return acc


def _deriv(cs, k=1):
    for _ in range(k):
        cs = [i * c for i, c in enumerate(cs)][1:]
    return cs


def _coefficients(p) -> list:
    if isinstance(p, UniPoly):
        return [to_mp(c) for c in p.coeffs]
    return [to_mp(c) for c in p]


def _aberth(cs: list, digits: int, max_iter: int):
    n = len(cs) - 1
    lead = cs[-1]
    c = [x / lead for x in cs]
    dc = _deriv(c)
    center = -c[n - 1] / n
    shifted_bound = max((abs(c[n - k]) ** (mpf(1) / k) for k in range(1, n + 1)), default=mpf(0))
    radius = 2 * shifted_bound + abs(center) + 1
    z = [center + radius / 2 * mpmath.expj(2 * mpmath.pi * k / n + INIT_ANGLE_OFFSET) for k in range(n)]
    tol = mpf(10) ** (-digits)
    best, since_best = mpf("inf"), 0
    steps_left = MAX_CLUSTER_STEPS
    for it in range(max_iter):
        if steps_left and it and it % CLUSTER_STEP_EVERY == 0 and best > tol:
            if _cluster_step(c, z):
                steps_left -= 1
        maxcorr = mpf(0)
        for k in range(n):
            zk = z[k]
            pz = _horner(c, zk)
            if pz == 0:
                continue
            dpz = _horner(dc, zk)
            s = mpf(0)
            for j in range(n):
                if j != k:
                    diff = zk - z[j]
                    if diff == 0:
                        diff = tol * (1 + abs(zk))
                    s += 1 / diff
            if dpz == 0:
                w = -1 / s if s != 0 else tol
            else:
                ratio = pz / dpz
                w = ratio / (1 - ratio * s)
            z[k] = zk - w
            maxcorr = max(maxcorr, abs(w) / (1 + abs(z[k])))
        if maxcorr < tol:
            return z, True
        if maxcorr < best / 2:
            best, since_best = maxcorr, 0
        else:
            since_best += 1
        # stalled corrections near multiple roots: accept once precision is spent
        if since_best > STALL_PATIENCE and best < mpf(10) ** (-digits / (2 * n)):
            return z, True
    return z, False


def _cluster_step(c: list, z: list) -> bool:
    """Re-seed tight groups of approximations from a local model.

    Near an m-fold cluster Aberth converges only linearly.  The group's
    centre is found by Newton on p^(m-1) (quadratic), then the members are
    placed at c + h w^k with h^m = -m! p(c) / p^(m)(c).  Returns True if any
    group was re-seeded.
    """
    n = len(z)
    if n < 2:
        return False
    changed = False
    used = set()
    for i in range(n):
        if i in used:
            continue
        near = sorted((j for j in range(n) if j != i), key=lambda j: abs(z[i] - z[j]))
        dist = [abs(z[i] - z[j]) for j in near] + [1 + abs(z[i])]
        # smallest k whose k nearest neighbours sit far inside the gap to the rest
        k = next((k for k in range(1, n) if dist[k - 1] < CLUSTER_RATIO * dist[k]), None)
        if k is None:
            continue
        group = [i] + near[:k]
        if used.intersection(group):
            continue
        m = len(group)
        centre = sum(z[k] for k in group) / m
        centre = _polish(c, centre, m, steps=30)
        dm = _horner(_deriv(c, m), centre)
        if dm == 0:
            continue
        h = (-math.factorial(m) * _horner(c, centre) / dm) ** (mpf(1) / m)
        for k, idx in enumerate(group):
            z[idx] = centre + h * mpmath.expj(2 * mpmath.pi * k / m)
        used.update(group)
        changed = True
    return changed


def _radius(cs, z, coeff_error, max_mult):
    """Error radius of an approximate root that may belong to a cluster.

    (m! (|p(z)| + slack) / |p^(m)(z)|)^(1/m) estimates the distance to an
    m-fold root; the smallest estimate over m <= max_mult is the tightest
    one consistent with the data (the m = 1 term is the Newton step and
    blows up at genuine multiple roots).  ``slack`` is the evaluation
    uncertainty from the coefficients' relative error.
    """
    pz = abs(_horner(cs, z))
    az = abs(z)
    slack = coeff_error * sum(abs(a) * az**i for i, a in enumerate(cs))
    num = pz + slack
    best = mpf("inf")
    d = cs
    for m in range(1, max_mult + 1):
        d = _deriv(d)
        dm = abs(_horner(d, z))
        if dm == 0:
            continue
        best = min(best, (math.factorial(m) * num / dm) ** (mpf(1) / m))
    return best


def complex_roots(p, digits: int = DEFAULT_DIGITS, coeff_error=None, max_iter: int | None = None) -> RootSet:
    """All complex roots of p with multiplicities.

    Aberth iteration from a fixed perturbed circle, clusters merged when
    their residual-derived disks (scaled by MERGE_FACTOR) overlap, each
    cluster polished by Newton on the (m-1)-th derivative.  ``coeff_error``
    is the relative uncertainty of p's coefficients (default 10**-digits),
    which matters when p itself is only known numerically.
    """
    if digits < 30:
        raise DomainError("digits must be at least 30")
    exact_zero_mult = 0
    if isinstance(p, UniPoly):
        if p.degree < 1:
            raise DomainError(f"cannot find roots of constant {p}")
        cs_exact = list(p.coeffs)
        while cs_exact[0] == 0:
            cs_exact.pop(0)
            exact_zero_mult += 1
    with mpmath.workdps(digits + GUARD_DIGITS):
        full = _coefficients(p)
        if len(full) < 2 or all(c == 0 for c in full[1:]):
            raise DomainError(f"cannot find roots of constant {p}")
        cs = full[exact_zero_mult:]
        while len(cs) > 1 and cs[0] == 0 and not isinstance(p, UniPoly):
            cs = cs[1:]
            exact_zero_mult += 1
        err = mpf(10) ** (-digits) if coeff_error is None else mpf(coeff_error)
        n = len(cs) - 1
        roots, mults, radii = [], [], []
        if n >= 1:
            budget = max_iter or (200 + 10 * digits)
            z, ok = _aberth(cs, digits + GUARD_DIGITS // 2, budget)
            if not ok:
                raise RootFindingError(f"Aberth iteration did not converge for {p}")
            # a disk may only allow for as many coincident roots as there are
            # approximations nearby
            rad = []
            for zk in z:
                near = sum(1 for zj in z if abs(zj - zk) <= CLUSTER_RATIO * (1 + abs(zk)))
                rad.append(_radius(cs, zk, err, min(3, near)))
            parent = list(range(n))

            def find(i):
                while parent[i] != i:
                    parent[i] = parent[parent[i]]
                    i = parent[i]
                return i

            ambiguous = False
            for i in range(n):
                for j in range(i + 1, n):
                    dist = abs(z[i] - z[j])
                    thresh = MERGE_FACTOR * (rad[i] + rad[j])
                    if dist <= thresh:
                        parent[find(i)] = find(j)
                    elif dist <= AMBIGUITY_FACTOR * thresh:
                        ambiguous = True
            if ambiguous:
                raise AmbiguousClustering(f"root clusters of {p} undecidable at {digits} digits")
            clusters: dict[int, list[int]] = {}
            for i in range(n):
                clusters.setdefault(find(i), []).append(i)
            for members in sorted(clusters.values()):
                m = len(members)
                centre = sum(z[i] for i in members) / m
                centre = _polish(cs, centre, m)
                roots.append(centre)
                mults.append(m)
                radii.append(max(rad[i] for i in members))
        if exact_zero_mult:
            roots.insert(0, mpc(0))
            mults.insert(0, exact_zero_mult)
            radii.insert(0, mpf(0))
        residual = max((abs(_horner(full, r)) for r in roots), default=mpf(0))
        order = sorted(range(len(roots)), key=lambda i: (mpmath.nint(roots[i].real * 10**6), roots[i].imag))
        return RootSet(
            roots=tuple(mpc(roots[i]) for i in order),
            multiplicities=tuple(mults[i] for i in order),
            residual=residual,
            radii=tuple(radii[i] for i in order),
            digits=digits,
            poly=p,
        )


def _polish(cs, z, m, steps: int = 8):
    f = _deriv(cs, m - 1)
    df = _deriv(f)
    for _ in range(steps):
        d = _horner(df, z)
        if d == 0:
            break
        step = _horner(f, z) / d
        z = z - step
        if abs(step) <= mpf(10) ** (-mpmath.mp.dps) * (1 + abs(z)):
            break
    return z


def eval_rational_expr(num: Callable[[Sequence], object], den: Callable[[Sequence], object] | None,
                       values: Sequence, digits: int = DEFAULT_DIGITS, name: str = "expression",
                       degree: int = 3) -> NumericValue:
    """Evaluate num(values) / den(values) in high precision.

    Raises DegenerateConfiguration naming ``name`` when the denominator is
    below the precision-derived floor.  The error bound is a first-order
    estimate: relative working error amplified by the size of the inputs
    over the size of the denominator.
    """
    with mpmath.workdps(digits + GUARD_DIGITS):
        xs = [to_mp(v) for v in values]
        scale = (1 + max(abs(x) for x in xs)) ** degree
        unit = mpf(10) ** (-(digits - 10))
        top = to_mp(num(xs))
        if den is None:
            return NumericValue(mpc(top), unit * scale, digits)
        bottom = to_mp(den(xs))
        if abs(bottom) <= unit * scale:
            raise DegenerateConfiguration(f"degenerate configuration: {name} vanishes", guard=name)
        value = top / bottom
        error = unit * (1 + abs(value)) * (1 + scale / abs(bottom))
        return NumericValue(mpc(value), error, digits)
