"""Points on the Riemann sphere and Moebius transformations.

The point at infinity is a first-class value (never a large float): every
operation that would overflow re-charts through w = 1/z.  The chordal
metric makes the sphere a bounded metric space (diameter 2), which is what
lets orbit detection treat cycles passing through infinity uniformly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

GEOMETRY_TOL = 1e-12


@dataclass(frozen=True)
class SpherePoint:
    """A point of the sphere: a finite complex number, or infinity (value None)."""

    value: complex | None

    def __post_init__(self):
        if self.value is not None:
            v = complex(self.value)
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(
                    "non-finite components are not allowed; use INFINITY for the "
                    "point at infinity"
                )
            object.__setattr__(self, "value", v)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def conjugate(self) -> "SpherePoint":
        if self.value is None:
            return self
        return SpherePoint(self.value.conjugate())

    def chart(self) -> tuple[complex, bool]:
        """Numerically comfortable chart: (w, inverted) with z = 1/w when inverted."""
        if self.value is None:
            return 0j, True
        if abs(self.value) > 1.0:
            return 1.0 / self.value, True
        return self.value, False

    def __repr__(self):
        return "SpherePoint(infinity)" if self.value is None else f"SpherePoint({self.value})"


INFINITY = SpherePoint(None)


def finite(z: complex) -> SpherePoint:
    return SpherePoint(complex(z))


def from_chart(w: complex, inverted: bool) -> SpherePoint:
    if inverted:
        if w == 0:
            return INFINITY
        return SpherePoint(1.0 / w)
    return SpherePoint(w)


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal metric: 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)), extended to infinity.

    Symmetric, bounded by 2, and zero exactly on the diagonal.
    """
    if p.is_infinity and q.is_infinity:
        return 0.0
    if p.is_infinity or q.is_infinity:
        z = q.value if p.is_infinity else p.value
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    a, b = p.value, q.value
    return 2.0 * abs(a - b) / math.sqrt((1.0 + abs(a) ** 2) * (1.0 + abs(b) ** 2))


def chordal_distance_chart(
    w1: complex, inv1: bool, w2: complex, inv2: bool
) -> float:
    """Chordal distance between chart representations (z = 1/w when inverted).

    Same-chart pairs use |w1-w2|; mixed charts use |w1*w2 - 1|: both reduce to
    the standard formula, with no overflow for small w in the inverted chart.
    """
    n1 = 1.0 + abs(w1) ** 2
    n2 = 1.0 + abs(w2) ** 2
    num = abs(w1 - w2) if inv1 == inv2 else abs(w1 * w2 - 1.0)
    return 2.0 * num / math.sqrt(n1 * n2)


class DegenerateMobiusError(ValueError):
    pass


@dataclass(frozen=True)
class Mobius:
    """The transformation z -> (a z + b) / (c z + d), with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if abs(self.det) <= GEOMETRY_TOL * max(
            1.0, abs(self.a), abs(self.b), abs(self.c), abs(self.d)
        ) ** 2:
            raise DegenerateMobiusError(f"degenerate coefficients {self}")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def apply(self, p: SpherePoint) -> SpherePoint:
        if p.is_infinity:
            if self.c == 0:
                return INFINITY
            return SpherePoint(self.a / self.c)
        z = p.value
        num = self.a * z + self.b
        den = self.c * z + self.d
        if den == 0:
            return INFINITY
        v = num / den
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            return INFINITY
        return SpherePoint(v)

    def __call__(self, p: SpherePoint) -> SpherePoint:
        return self.apply(p)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other: (self @ other)(z) = self(other(z))."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return self.compose(other)


IDENTITY = Mobius(1, 0, 0, 1)


def mobius_apply(m: Mobius, p: SpherePoint) -> SpherePoint:
    return m.apply(p)


def test_grid(n: int = 100) -> list[SpherePoint]:
    """Deterministic spread of sphere points used by round-trip checks."""
    pts = [INFINITY, finite(0)]
    k = 0
    while len(pts) < n:
        r = 0.25 + 1.75 * ((k * 0.37) % 1.0)
        theta = 2.0 * math.pi * ((k * 0.61803398875) % 1.0)
        pts.append(finite(cmath.rect(r, theta)))
        k += 1
    return pts[:n]
