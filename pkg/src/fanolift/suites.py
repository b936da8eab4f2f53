"""Seeded randomized identity suites, shared by the ``verify`` command and the tests."""
from __future__ import annotations

import dataclasses
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .corr7 import (SeptupleConfig, dual_points_canonical, dual_points_kernel, fit_homography,
                    quartet, verify_correspondence)
from .errors import DegenerateConfiguration, FanoliftError
from .exact.poly import BiPoly, UniPoly
from .homography import Homography
from .smalldeg import (d5_pencil, d6_condition, d6_involution_determinant, v4_factor, v4_q)

FAULTS = ("corrupt-F",)


def random_rational(rng: random.Random, height: int = 30, denominators: int = 3) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, denominators))


def random_distinct(rng: random.Random, n: int, height: int = 30, denominators: int = 3) -> tuple:
    out: list = []
    while len(out) < n:
        v = random_rational(rng, height, denominators)
        if v not in out:
            out.append(v)
    return tuple(out)


def random_generic_septuple(rng: random.Random, height: int = 30) -> SeptupleConfig:
    """Random distinct septuple passing every genericity guard of the correspondence."""
    while True:
        cfg = SeptupleConfig(random_distinct(rng, 7, height))
        try:
            quartet(cfg)
        except DegenerateConfiguration:
            continue
        return cfg


def random_homography(rng: random.Random, height: int = 9) -> Homography:
    while True:
        a, b, c, d = (rng.randint(-height, height) for _ in range(4))
        if a * d - b * c != 0 and c != 0:
            return Homography(a, b, c, d)


@dataclass
class SuiteResult:
    name: str
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, trial: int, failed: list[str]) -> None:
        if failed:
            self.failures.append({"trial": trial, "checks": failed})
        else:
            self.passed += 1

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": self.failures}


def _corrupt_F(q):
    return dataclasses.replace(q, F=q.F + BiPoly.from_matrix([[1]], q.F.vars))


def correspondence_trial(rng: random.Random, fault: str | None = None) -> list[str]:
    cfg = random_generic_septuple(rng)
    q = quartet(cfg)
    if fault == "corrupt-F":
        q = _corrupt_F(q)
    return verify_correspondence(cfg, q).failures()


def dual_point_trial(rng: random.Random) -> list[str]:
    cfg = random_generic_septuple(rng)
    y = dual_points_canonical(cfg)
    failed = []
    try:
        back = dual_points_canonical(SeptupleConfig(tuple(y)))
        if tuple(back) != cfg.values:
            failed.append("canonical_involutive")
    except FanoliftError:
        failed.append("canonical_involutive")
    h = random_homography(rng)
    while h.pole() in cfg.values or h.pole() in y.values:
        h = random_homography(rng)
    moved = SeptupleConfig(tuple(h(v) for v in cfg.values))
    if tuple(dual_points_canonical(moved)) != tuple(h(v) for v in y):
        failed.append("canonical_equivariant")
    if fit_homography(tuple(dual_points_kernel(cfg)), tuple(y)) is None:
        failed.append("kernel_vs_canonical_homography")
    return failed


def v4_trial(rng: random.Random) -> list[str]:
    roots = random_distinct(rng, 4)
    P = UniPoly.from_roots(roots, "X")
    try:
        v4_factor(P, v4_q(P).Q, roots=roots)
    except FanoliftError as exc:
        return [f"v4_factorization: {exc}"]
    return []


def d5_trial(rng: random.Random) -> list[str]:
    x = random_distinct(rng, 5)
    try:
        r = d5_pencil(x)
    except FanoliftError as exc:
        return [f"d5_factorization: {exc}"]
    failed = []
    for i in range(5):
        for j in range(5):
            d = (i - j) % 5
            if (r.F(x[i], x[j]) == 0) != (d in (1, 4)):
                failed.append(f"d5_F_incidence[{i},{j}]")
            if (r.G(x[i], x[j]) == 0) != (d in (2, 3)):
                failed.append(f"d5_G_incidence[{i},{j}]")
    return failed


def involutive_hexagon(rng: random.Random) -> tuple:
    """x_0..x_5 with x_{i+3} = h(x_i) for a random involution h."""
    while True:
        a, b, c = (rng.randint(-9, 9) for _ in range(3))
        if -a * a - b * c == 0:
            continue
        h = Homography(a, b, c, -a)
        try:
            first = random_distinct(rng, 3)
            x = first + tuple(h(v) for v in first)
        except FanoliftError:
            continue
        if len(set(x)) == 6:
            return x


def d6_trial(rng: random.Random) -> list[str]:
    failed = []
    for x, constructed in ((random_distinct(rng, 6), False), (involutive_hexagon(rng), True)):
        cond, det = d6_condition(x), d6_involution_determinant(x)
        if (cond == 0) != (det == 0) or (constructed and cond != 0):
            failed.append("d6_constructed" if constructed else "d6_condition_vs_involution")
    return failed


SUITES: dict[str, Callable] = {
    "correspondence": correspondence_trial,
    "dual_points": dual_point_trial,
    "v4": v4_trial,
    "d5": d5_trial,
    "d6": d6_trial,
}


def run_suites(seed: int, trials: int, fault: str | None = None) -> dict[str, SuiteResult]:
    """Each suite draws from its own generator seeded by (seed, suite name)."""
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}")
    out = {}
    for name, fn in SUITES.items():
        rng = random.Random(f"{seed}:{name}")
        res = SuiteResult(name)
        for k in range(trials):
            failed = fn(rng, fault) if name == "correspondence" else fn(rng)
            res.record(k, failed)
        out[name] = res
    return out
