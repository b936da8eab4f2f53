"""Exact Möbius transformations t -> (a t + b) / (c t + d) over Q."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exact.poly import coerce, fraction_to_str


@dataclass(frozen=True)
class Homography:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, coerce(getattr(self, k)))
        if self.det == 0:
            raise DomainError("singular homography")

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    @property
    def matrix(self) -> tuple:
        return ((self.a, self.b), (self.c, self.d))

    @property
    def is_involution(self) -> bool:
        return self.a + self.d == 0

    def pole(self):
        """The finite point sent to infinity, or None for affine maps."""
        return None if self.c == 0 else -self.d / self.c

    def __call__(self, t):
        den = self.c * t + self.d
        if den == 0:
            raise DomainError(f"{t} is the pole of {self}")
        return (self.a * t + self.b) / den

    def __matmul__(self, other: "Homography") -> "Homography":
        """Composition self o other."""
        (a, b), (c, d) = self.matrix
        (e, f), (g, h) = other.matrix
        return Homography(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Homography":
        return Homography(self.d, -self.b, -self.c, self.a)

    def normalized(self) -> "Homography":
        """Scale so the first nonzero entry of (a, b, c, d) is 1."""
        lead = next(v for v in (self.a, self.b, self.c, self.d) if v != 0)
        return Homography(self.a / lead, self.b / lead, self.c / lead, self.d / lead)

    def same_as(self, other: "Homography") -> bool:
        return self.normalized() == other.normalized()

    @classmethod
    def identity(cls) -> "Homography":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_three_points(cls, src: Sequence, dst: Sequence) -> "Homography":
        """The unique h with h(src[k]) = dst[k] for k = 0, 1, 2."""
        return _to_standard(dst).inverse() @ _to_standard(src)

    def to_json(self) -> list[list[str]]:
        return [[fraction_to_str(v) for v in row] for row in self.matrix]

    def __repr__(self) -> str:
        return f"Homography(({self.a}t + {self.b}) / ({self.c}t + {self.d}))"


def _to_standard(z: Sequence) -> Homography:
    """Send z0, z1, z2 to 0, 1, infinity."""
    z0, z1, z2 = (coerce(v) for v in z)
    if len({z0, z1, z2}) != 3:
        raise DomainError("three distinct points required")
    return Homography(z1 - z2, -z0 * (z1 - z2), z1 - z0, -z2 * (z1 - z0))
