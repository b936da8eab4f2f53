"""The Fano plane, its collineation group L3(2), stabilizers and Sylow subgroup.

Permutations are tuples in one-line notation: ``perm[i - 1]`` is the image
of point ``i``.  Lines are indexed 1..7 following the fixed labeling below,
in which point a lies on line b' exactly when b lies on line a'.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Iterable

Perm = tuple[int, ...]

POINTS = tuple(range(1, 8))
LINES = {
    1: (2, 3, 4),
    2: (1, 3, 5),
    3: (1, 2, 6),
    4: (1, 4, 7),
    5: (2, 5, 7),
    6: (3, 6, 7),
    7: (4, 5, 6),
}
IDENTITY: Perm = POINTS


def compose(a: Perm, b: Perm) -> Perm:
    """(a o b)(i) = a(b(i))."""
    return tuple(a[b[i] - 1] for i in range(len(b)))


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, ai in enumerate(a, start=1):
        out[ai - 1] = i
    return tuple(out)


def perm_order(a: Perm) -> int:
    n, cur = 1, a
    while cur != IDENTITY:
        cur = compose(a, cur)
        n += 1
    return n


def from_cycles(*cycles: Iterable[int], n: int = 7) -> Perm:
    img = list(range(1, n + 1))
    for cyc in cycles:
        cyc = list(cyc)
        for k, c in enumerate(cyc):
            img[c - 1] = cyc[(k + 1) % len(cyc)]
    return tuple(img)


def perm_sign(a: Perm) -> int:
    seen, sign = set(), 1
    for i in range(1, len(a) + 1):
        if i in seen:
            continue
        length, j = 0, i
        while j not in seen:
            seen.add(j)
            j = a[j - 1]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


@dataclass(frozen=True)
class FanoStructure:
    """Seven triples on {1..7} forming a projective plane of order 2.

    ``lines[j - 1]`` is line j'.
    """

    lines: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(tuple(sorted(l)) for l in self.lines))

    @cached_property
    def line_index(self) -> dict[frozenset, int]:
        return {frozenset(l): j for j, l in enumerate(self.lines, start=1)}

    def line(self, j: int) -> tuple[int, int, int]:
        return self.lines[j - 1]

    def incidence(self) -> list[list[bool]]:
        """incidence[i-1][j-1] is True iff point i lies on line j'."""
        return [[i in l for l in self.lines] for i in POINTS]

    def key(self) -> tuple:
        return tuple(sorted(self.lines))

    def check_axioms(self) -> bool:
        if len(self.lines) != 7 or len(set(self.lines)) != 7:
            return False
        if any(len(set(l)) != 3 or not set(l) <= set(POINTS) for l in self.lines):
            return False
        if any(sum(p in l for l in self.lines) != 3 for p in POINTS):
            return False
        for a, b in combinations(POINTS, 2):
            if sum(a in l and b in l for l in self.lines) != 1:
                return False
        return True

    def preserves(self, perm: Perm) -> bool:
        return all(frozenset(perm[i - 1] for i in l) in self.line_index for l in self.lines)

    def line_perm(self, perm: Perm) -> Perm:
        """Induced permutation of line labels: j -> index of perm(line j')."""
        return tuple(self.line_index[frozenset(perm[i - 1] for i in l)] for l in self.lines)

    def image(self, perm: Perm) -> "FanoStructure":
        """Structure whose line j' is perm applied to this line j'."""
        return FanoStructure(tuple(tuple(perm[i - 1] for i in l) for l in self.lines))

    def is_self_dual_labeling(self) -> bool:
        return all((a in self.line(b)) == (b in self.line(a)) for a in POINTS for b in POINTS)

    def to_json(self) -> list[list[int]]:
        return [list(l) for l in self.lines]

    @classmethod
    def from_json(cls, data) -> "FanoStructure":
        return cls(tuple(tuple(int(v) for v in l) for l in data))


FANO_PLANE = FanoStructure(tuple(LINES[j] for j in range(1, 8)))
FanoPlane = FanoStructure


@dataclass(frozen=True)
class PermGroup:
    elements: tuple[Perm, ...]
    generators: tuple[Perm, ...]
    structure: FanoStructure = FANO_PLANE

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm) -> bool:
        return tuple(perm) in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def line_perm(self, perm: Perm) -> Perm:
        return self.structure.line_perm(perm)

    def is_closed(self) -> bool:
        s = self._set
        return all(compose(a, b) in s for a in self.elements for b in self.elements) and all(
            inverse(a) in s for a in self.elements)

    def intersection(self, other: "PermGroup") -> "PermGroup":
        elems = tuple(e for e in self.elements if e in other)
        return PermGroup(elems, (), self.structure)


@lru_cache(maxsize=64)
def build_group(structure: FanoStructure = FANO_PLANE) -> PermGroup:
    """All permutations of the 7 points preserving the line set (brute force over S7)."""
    elems = tuple(p for p in permutations(POINTS) if structure.preserves(p))
    gens = ()
    if structure == FANO_PLANE:
        # an element of order 3 fixing point 1 together with a 7-cycle
        gens = (from_cycles((2, 3, 4), (5, 7, 6)), from_cycles((1, 2, 3, 5, 7, 6, 4)))
    return PermGroup(elems, gens, structure)


def _fixes(group: PermGroup, perm: Perm, i: int, kind: str) -> bool:
    if kind == "point":
        return perm[i - 1] == i
    if kind == "line":
        return group.line_perm(perm)[i - 1] == i
    raise ValueError(f"kind must be 'point' or 'line', not {kind!r}")


@lru_cache(maxsize=64)
def stabilizer(i: int, kind: str = "point", group: PermGroup | None = None) -> PermGroup:
    """G_i: the elements fixing point i (kind='point') or line i' (kind='line')."""
    group = group or build_group()
    if not 1 <= i <= 7:
        raise ValueError(f"invalid index {i}")
    elems = tuple(p for p in group if _fixes(group, p, i, kind))
    return PermGroup(elems, (), group.structure)


def generated_subgroup(gens: Iterable[Perm]) -> frozenset:
    gens = list(gens)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose(g, a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


@dataclass(frozen=True)
class SignChar:
    """The nontrivial character G_i -> {+1, -1}."""

    site: tuple[int, str]
    kernel: frozenset
    domain: PermGroup

    def __call__(self, perm: Perm) -> int:
        perm = tuple(perm)
        if perm not in self.domain:
            raise ValueError(f"{perm} is not in the stabilizer of {self.site}")
        return 1 if perm in self.kernel else -1


@lru_cache(maxsize=64)
def sign_char(i: int, kind: str = "point") -> SignChar:
    """ε_i: +1 exactly on the unique index-2 subgroup of G_i.

    Every index-2 subgroup contains all squares, so when the subgroup
    generated by squares already has index 2 it is the only one.
    """
    g_i = stabilizer(i, kind)
    squares = {compose(p, p) for p in g_i}
    kernel = generated_subgroup(squares)
    if 2 * len(kernel) != g_i.order:
        raise AssertionError(f"squares of G_{i} do not span an index-2 subgroup")
    return SignChar((i, kind), kernel, g_i)


@dataclass(frozen=True)
class Sylow:
    """A cyclic 7-Sylow, with coset representatives for points and lines."""

    generator: Perm
    elements: tuple[Perm, ...]
    group: PermGroup

    @property
    def order(self) -> int:
        return len(self.elements)

    def for_point(self, a: int) -> Perm:
        """The unique σ in the Sylow with σ(1) = a."""
        return next(s for s in self.elements if s[0] == a)

    def for_line(self, b: int) -> Perm:
        """The unique σ in the Sylow with σ(1') = b'."""
        return next(s for s in self.elements if self.group.line_perm(s)[0] == b)

    def line_of(self, sigma: Perm) -> int:
        return self.group.line_perm(sigma)[0]


@lru_cache(maxsize=8)
def sylow7(group: PermGroup | None = None) -> Sylow:
    """Cyclic subgroup generated by the lexicographically smallest element of order 7."""
    group = group or build_group()
    gen = min(p for p in group if perm_order(p) == 7)
    elems = [IDENTITY]
    for _ in range(6):
        elems.append(compose(gen, elems[-1]))
    return Sylow(gen, tuple(elems), group)


@lru_cache(maxsize=1)
def all_fano_structures() -> tuple[FanoStructure, ...]:
    """The 30 Fano structures on {1..7}, sorted by their sorted line lists.

    Each structure keeps the line labeling inherited from the first
    permutation (in lexicographic order) carrying the reference plane onto
    it, so ``labeling(s)`` maps line j' of the reference plane to line j'
    of ``s``.
    """
    found: dict[tuple, FanoStructure] = {}
    for p in permutations(POINTS):
        s = FANO_PLANE.image(p)
        found.setdefault(s.key(), s)
    return tuple(found[k] for k in sorted(found))


def labeling(structure: FanoStructure) -> Perm:
    """Smallest permutation π with π(line j' of the reference) = line j' of structure.

    Falls back to matching line sets only (ignoring labels) when the
    structure's labels are not an image labeling.
    """
    target = structure.lines
    for p in permutations(POINTS):
        if all(tuple(sorted(p[i - 1] for i in LINES[j])) == target[j - 1] for j in range(1, 8)):
            return p
    keys = set(structure.line_index)
    for p in permutations(POINTS):
        if all(frozenset(p[i - 1] for i in LINES[j]) in keys for j in range(1, 8)):
            return p
    raise ValueError("not a Fano structure")
