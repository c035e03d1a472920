"""Points and transversal hyperplanes of GF(q)^(d+1), with the shifted maps.

A transversal hyperplane is the graph of

    x_{d+1} = a_1 x_1 + ... + a_d x_d + b,

so it holds exactly one point above every point of GF(q)^d and has q**d
points in total.  There are q**(d+1) of them, and q**d through any fixed
point.  Restricted to the hyperplanes through a fixed point, the slope map
V -> (a_1, ..., a_d) is a bijection onto GF(q)^d; that bijection is what
makes the shifted maps below hide the slope from an observer.

``shift_down`` sends a point w of V to project(w) + slope(V); ``shift_up``
inverts it by lifting y - slope(V) back onto V.  The two are mutually
inverse on GF(q)^d and on V.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import (
    Ambiguous,
    DimensionMismatch,
    NoneContains,
    PointNotOnHyperplane,
    SpecMismatch,
)
from .fields import FieldElement, FieldSpec

__all__ = [
    "Point",
    "TransversalHyperplane",
    "project",
    "space_points",
    "space_point_set",
    "enumerate_transversal",
    "through_point",
    "unique_hyperplane_containing",
]


@dataclass(frozen=True, eq=False)
class Point:
    """A tuple of coordinates over one field; its length is its dimension."""

    coords: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.coords:
            raise DimensionMismatch("a point needs at least one coordinate")
        spec = self.coords[0].spec
        if any(c.spec != spec for c in self.coords[1:]):
            raise SpecMismatch("all coordinates of a point must share one field")
        object.__setattr__(self, "_hash", hash(self.coords))

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return self._hash

    @classmethod
    def of(cls, spec: FieldSpec, *values: int) -> Point:
        return cls(tuple(spec.element(v) for v in values))

    @property
    def spec(self) -> FieldSpec:
        return self.coords[0].spec

    @property
    def dim(self) -> int:
        return len(self.coords)

    def values(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coords)

    def _pair(self, other: Point):
        if not isinstance(other, Point):
            raise TypeError(f"cannot combine Point with {type(other).__name__}")
        if other.dim != self.dim:
            raise DimensionMismatch(f"point dimensions differ: {self.dim} vs {other.dim}")
        return other

    def __add__(self, other: Point) -> Point:
        other = self._pair(other)
        return Point(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: Point) -> Point:
        other = self._pair(other)
        return Point(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __repr__(self):
        return f"Point{self.values()}"


def project(x: Point) -> Point:
    """Drop the last coordinate."""
    if x.dim < 2:
        raise DimensionMismatch("cannot project a 1-dimensional point")
    return Point(x.coords[:-1])


def _dot(a: Point, y: Point) -> FieldElement:
    total = a.spec.zero
    for ai, yi in zip(a.coords, y.coords):
        total = total + ai * yi
    return total


@dataclass(frozen=True)
class TransversalHyperplane:
    """Graph of x_{d+1} = slope . (x_1..x_d) + intercept."""

    slope: Point
    intercept: FieldElement

    def __post_init__(self):
        if self.intercept.spec != self.slope.spec:
            raise SpecMismatch("slope and intercept must share one field")

    @property
    def spec(self) -> FieldSpec:
        return self.slope.spec

    @property
    def d(self) -> int:
        return self.slope.dim

    def _height(self, y: Point) -> FieldElement:
        return _dot(self.slope, y) + self.intercept

    def contains(self, x: Point) -> bool:
        if x.dim != self.d + 1:
            raise DimensionMismatch(f"expected a point of dimension {self.d + 1}, got {x.dim}")
        total = self.intercept
        for a, c in zip(self.slope.coords, x.coords):  # pairs only the first d coords
            total = total + a * c
        return total == x.coords[-1]

    def lift(self, y: Point) -> Point:
        """The unique point of this hyperplane projecting to y."""
        if y.dim != self.d:
            raise DimensionMismatch(f"expected a point of dimension {self.d}, got {y.dim}")
        return Point(y.coords + (self._height(y),))

    def points(self) -> tuple[Point, ...]:
        """All q**d points, in canonical order of their projections."""
        return tuple(self.lift(y) for y in space_points(self.spec, self.d))

    def shift_down(self, w: Point) -> Point:
        """project(w) + slope, for w on this hyperplane."""
        if not self.contains(w):
            raise PointNotOnHyperplane(f"{w} is not on {self}")
        return project(w) + self.slope

    def shift_up(self, y: Point) -> Point:
        """Inverse of shift_down: lift y - slope back onto the hyperplane."""
        return self.lift(y - self.slope)

    def __repr__(self):
        return f"Hyperplane(slope={self.slope.values()}, intercept={self.intercept.value})"


@lru_cache(maxsize=None)
def space_points(spec: FieldSpec, dim: int) -> tuple[Point, ...]:
    """All points of GF(q)^dim in lexicographic order of canonical values."""
    if dim < 1:
        raise DimensionMismatch(f"dimension must be positive, got {dim}")
    return tuple(Point(coords) for coords in product(spec.elements(), repeat=dim))


@lru_cache(maxsize=None)
def space_point_set(spec: FieldSpec, dim: int) -> frozenset:
    """space_points as a frozenset, cached for the validators' hot paths."""
    return frozenset(space_points(spec, dim))


@lru_cache(maxsize=None)
def enumerate_transversal(spec: FieldSpec, d: int) -> tuple[TransversalHyperplane, ...]:
    """All q**(d+1) transversal hyperplanes, ordered by slope then intercept."""
    return tuple(
        TransversalHyperplane(slope, b)
        for slope in space_points(spec, d)
        for b in spec.elements()
    )


def through_point(x: Point) -> tuple[TransversalHyperplane, ...]:
    """The q**d transversal hyperplanes containing x, in slope order.

    For each slope the intercept is forced: b = x_{d+1} - slope . project(x).
    """
    if x.dim < 2:
        raise DimensionMismatch("ambient dimension must be at least 2")
    base = project(x)
    return tuple(
        TransversalHyperplane(slope, x.coords[-1] - _dot(slope, base))
        for slope in space_points(x.spec, x.dim - 1)
    )


def _solve_full_rank(points: list[Point]):
    """Try to pin the hyperplane through the points by linear elimination.

    Returns the unique candidate (slope coefficients solved from point
    differences), None if the differences do not span, and raises
    NoneContains if they are inconsistent with any function graph.
    """
    spec = points[0].spec
    d = points[0].dim - 1
    base = points[0]
    rows: list[tuple[list[FieldElement], FieldElement]] = []  # echelon, pivot normalized to 1
    pivots: list[int] = []
    for pt in points[1:]:
        vec = [a - b for a, b in zip(pt.coords[:-1], base.coords[:-1])]
        val = pt.coords[-1] - base.coords[-1]
        for (row, rval), piv in zip(rows, pivots):
            factor = vec[piv]
            if factor.value:
                vec = [a - factor * b for a, b in zip(vec, row)]
                val = val - factor * rval
        piv = next((i for i, c in enumerate(vec) if c.value), None)
        if piv is None:
            if val.value:
                # same projection, different heights: no graph contains both
                raise NoneContains("two points differ only in the last coordinate")
            continue
        inv = vec[piv].inverse()
        rows.append(([c * inv for c in vec], val * inv))
        pivots.append(piv)
        if len(rows) == d:
            break
    if len(rows) < d:
        return None
    # back-substitute: reduce each row against the ones added after it
    slope = [spec.zero] * d
    for idx in range(len(rows) - 1, -1, -1):
        row, rval = rows[idx]
        acc = rval
        for j in range(d):
            if j != pivots[idx] and row[j].value:
                acc = acc - row[j] * slope[j]
        slope[pivots[idx]] = acc
    slope_pt = Point(tuple(slope))
    intercept = base.coords[-1] - _dot(slope_pt, project(base))
    return TransversalHyperplane(slope_pt, intercept)


def unique_hyperplane_containing(points) -> TransversalHyperplane:
    """The single transversal hyperplane through all the points.

    Solves for the coefficients directly when the points span; otherwise
    falls back to scanning all q**(d+1) candidates.  Raises NoneContains if
    no hyperplane fits and Ambiguous if more than one does (possible only
    when the points span too little, e.g. fewer than q**(d-1) + 1 of them).
    """
    points = list(points)
    if not points:
        raise Ambiguous("every hyperplane contains the empty set")
    dim = points[0].dim
    if dim < 2:
        raise DimensionMismatch("ambient dimension must be at least 2")
    if any(p.dim != dim for p in points[1:]):
        raise DimensionMismatch("points of mixed dimensions")
    heights: dict = {}
    for pt in points:
        proj = pt.coords[:-1]
        seen = heights.setdefault(proj, pt.coords[-1])
        if seen != pt.coords[-1]:
            # a function graph holds at most one point above each projection
            raise NoneContains("two points differ only in the last coordinate")
    candidate = _solve_full_rank(points)
    if candidate is not None:
        if all(candidate.contains(pt) for pt in points):
            return candidate
        raise NoneContains("points do not lie on any transversal hyperplane")
    spec = points[0].spec
    d = points[0].dim - 1
    found = None
    for plane in enumerate_transversal(spec, d):
        if all(plane.contains(pt) for pt in points):
            if found is not None:
                raise Ambiguous("more than one transversal hyperplane fits")
            found = plane
    if found is None:
        raise NoneContains("points do not lie on any transversal hyperplane")
    return found
