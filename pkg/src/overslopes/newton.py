"""Newton polygons: lower convex hulls of (index, valuation) points."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .valuation import INFINITY, vp

__all__ = [
    "NewtonPolygon",
    "SlopeSequence",
    "polygon_from_points",
    "polygon_of_poly",
    "slopes_of",
    "polygons_equal",
]

SOURCES = ("classical", "conjectural", "spectral", "diagonal")


@dataclass(frozen=True)
class NewtonPolygon:
    """Vertices of a lower convex hull, strictly increasing in index, starting at (0, 0)."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple((int(i), Fraction(h)) for i, h in self.vertices)
        if not vs or vs[0] != (0, 0):
            raise ValueError("a Newton polygon starts at the origin")
        object.__setattr__(self, "vertices", vs)

    @property
    def extent(self) -> int:
        return self.vertices[-1][0]

    def segment_slopes(self) -> list[Fraction]:
        return [
            (h1 - h0) / (i1 - i0)
            for (i0, h0), (i1, h1) in zip(self.vertices, self.vertices[1:])
        ]

    def height(self, x: int) -> Fraction:
        """Height of the hull above integer abscissa ``x``."""
        if not 0 <= x <= self.extent:
            raise ValueError(f"{x} lies outside the polygon's extent {self.extent}")
        for (i0, h0), (i1, h1) in zip(self.vertices, self.vertices[1:]):
            if i0 <= x <= i1:
                return h0 + (h1 - h0) * (x - i0) / (i1 - i0)
        return self.vertices[0][1]

    def restricted(self, upto: int) -> tuple:
        """Vertices in [0, upto], with the hull point at ``upto`` appended if needed."""
        vs = [v for v in self.vertices if v[0] <= upto]
        if vs[-1][0] != upto:
            vs.append((upto, self.height(upto)))
        return tuple(vs)

    def to_json_obj(self):
        return [[i, str(h) if h.denominator != 1 else h.numerator] for i, h in self.vertices]


@dataclass(frozen=True)
class SlopeSequence:
    """Slopes in nondecreasing order, with multiplicity, plus where they came from."""

    slopes: tuple
    source: str
    certificate: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        s = tuple(Fraction(x) for x in self.slopes)
        if any(a > b for a, b in zip(s, s[1:])):
            raise ValueError("slopes must be nondecreasing")
        if self.source not in SOURCES:
            raise ValueError(f"unknown slope source {self.source!r}")
        object.__setattr__(self, "slopes", s)

    def __len__(self):
        return len(self.slopes)

    def __iter__(self):
        return iter(self.slopes)

    def as_ints(self) -> list[int]:
        if any(s.denominator != 1 for s in self.slopes):
            raise ValueError("slopes are not all integers")
        return [s.numerator for s in self.slopes]


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def polygon_from_points(points: Iterable[tuple]) -> NewtonPolygon:
    """Lower convex hull of (index, valuation) points.

    Points whose valuation is :data:`INFINITY` are skipped. Collinear interior
    points are dropped so that slopes strictly increase from vertex to vertex.
    """
    pts = list(points)
    idx = [i for i, _ in pts]
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate indices in Newton polygon input")
    finite = sorted((int(i), Fraction(v)) for i, v in pts if v is not INFINITY)
    if not finite or finite[0] != (0, 0):
        raise ValueError("Newton polygon input must contain the origin (0, 0)")
    hull: list = []
    for p in finite:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return NewtonPolygon(tuple(hull))


def polygon_of_poly(coeffs: Sequence, p: int = 2) -> NewtonPolygon:
    """p-adic Newton polygon of sum coeffs[n] X^n with coeffs[0] = 1."""
    if not coeffs or Fraction(coeffs[0]) != 1:
        raise ValueError("constant coefficient must be 1")
    return polygon_from_points((n, vp(Fraction(c), p)) for n, c in enumerate(coeffs))


def slopes_of(np_: NewtonPolygon, count: int, source: str = "spectral") -> SlopeSequence:
    """First ``count`` unit-step slopes along the hull, with multiplicity."""
    if count < 0:
        raise ValueError("count must be nonnegative")
    if count > np_.extent:
        raise ValueError(f"polygon extent {np_.extent} is smaller than the requested {count} slopes")
    out: list[Fraction] = []
    for (i0, h0), (i1, h1) in zip(np_.vertices, np_.vertices[1:]):
        s = (h1 - h0) / (i1 - i0)
        out.extend([s] * (i1 - i0))
        if len(out) >= count:
            break
    return SlopeSequence(tuple(out[:count]), source)


def polygons_equal(a: NewtonPolygon, b: NewtonPolygon, upto: int | None = None) -> bool:
    """Whether the two hulls coincide on [0, upto] (default: both whole and same extent)."""
    if upto is None:
        return a.vertices == b.vertices
    if upto > a.extent or upto > b.extent:
        raise ValueError(f"comparison up to {upto} exceeds a polygon's extent")
    return a.restricted(upto) == b.restricted(upto)
