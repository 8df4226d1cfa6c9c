"""Points, affine cuts, and convex polytope enclosures.

A cut is the hyperplane ``w . x + b = 0`` together with an orientation: the
attached perceptron fires (outputs 1) exactly on the closed positive
half-space ``w . x + b >= 0``.  Appending a constant 1 to the input lets the
bias ``b`` act as an ordinary weight on that extra channel, so a cut is fully
described by the homogeneous weight vector ``(w, b)``.

A polytope is an ordered conjunction of cuts, all oriented so that one
cluster of points lies on their common positive side.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateCut,
    DimensionMismatch,
    EmptyDataset,
    StraddlingCluster,
)

__all__ = [
    "Box",
    "Cut",
    "PolytopeSpec",
    "bounding_box_cuts",
    "box_cuts",
    "convex_hull",
    "convex_hull_cuts",
    "cut_side",
    "homogenize",
    "input_bound",
    "normalize_cut",
    "orient_cut",
    "point_in_polytope",
    "points_in_polytope",
]


def _point(p, dim: int | None = None) -> np.ndarray:
    """Coerce ``p`` to a finite 1-D float64 coordinate array."""
    arr = np.asarray(p, dtype=float)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError("a point must be a 1-D sequence with at least one coordinate")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"point coordinates must be finite, got {arr}")
    if dim is not None and arr.size != dim:
        raise DimensionMismatch(f"expected a {dim}-D point, got {arr.size}-D")
    return arr


def _points(points, dim: int | None = None) -> np.ndarray:
    """Coerce a point sequence to a finite (m, n) float64 matrix, m >= 1."""
    arr = np.asarray(points, dtype=float)
    if arr.size == 0:
        raise EmptyDataset("expected at least one point")
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    if arr.ndim != 2:
        raise ValueError("points must form a (count, dimension) array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point coordinates must be finite")
    if dim is not None and arr.shape[1] != dim:
        raise DimensionMismatch(f"expected {dim}-D points, got {arr.shape[1]}-D")
    return arr


def homogenize(p) -> np.ndarray:
    """Return ``p`` with the constant bias channel 1 appended."""
    return np.append(_point(p), 1.0)


@dataclass(frozen=True, eq=False)
class Cut:
    """Oriented affine half-space test with homogeneous weights ``(w, b)``."""

    w: np.ndarray
    b: float

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.w, dtype=float)) + 0.0  # drop negative zeros
        b = float(self.b) + 0.0
        if w.ndim != 1 or w.size < 1:
            raise ValueError("spatial weights must be a 1-D sequence")
        if not np.all(np.isfinite(w)) or not np.isfinite(b):
            raise ValueError("cut weights must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", b)

    @property
    def dimension(self) -> int:
        return self.w.size

    @cached_property
    def homogeneous(self) -> np.ndarray:
        """The full weight vector ``(w_1, ..., w_n, b)``."""
        h = np.append(self.w, self.b)
        h.setflags(write=False)
        return h

    def flipped(self) -> "Cut":
        """The same hyperplane with the opposite positive side."""
        return Cut(-self.w, -self.b)

    def value(self, p) -> float:
        """The affine form ``w . p + b``."""
        return float(self.w @ _point(p, self.dimension) + self.b)

    def values(self, points: np.ndarray) -> np.ndarray:
        """Vectorized :meth:`value` over a (m, n) point matrix."""
        return _points(points, self.dimension) @ self.w + self.b

    def __eq__(self, other):
        if not isinstance(other, Cut):
            return NotImplemented
        return self.b == other.b and np.array_equal(self.w, other.w)


def cut_side(cut: Cut, p) -> int:
    """1 if ``w . p + b >= 0`` (the boundary is inclusive), else 0."""
    return int(cut.value(p) >= 0.0)


def normalize_cut(cut: Cut) -> Cut:
    """Scale the cut so its homogeneous vector ``(w, b)`` has unit norm.

    Positive scaling preserves the sign of the affine form, so the cut's
    output is unchanged at every point.
    """
    if not np.any(cut.w):
        raise DegenerateCut("cannot normalize a cut with all-zero spatial weights")
    return Cut(*_normalized(cut.w, cut.b))


def _normalized(w: np.ndarray, b: float) -> tuple[np.ndarray, float]:
    norm = float(np.sqrt(w @ w + b * b))
    return w / norm, b / norm


def orient_cut(cut: Cut, cluster) -> Cut:
    """Flip the cut's weights if the cluster sits in its negative half-space.

    Every cluster point must lie strictly on one side; a point exactly on the
    hyperplane, or points on both sides, raise :class:`StraddlingCluster`.
    Callers that cannot guarantee clearance should apply a margin first.
    """
    vals = cut.values(_points(cluster, cut.dimension))
    if np.any(vals == 0.0):
        raise StraddlingCluster("a cluster point lies exactly on the cut hyperplane")
    if np.all(vals > 0.0):
        return cut
    if np.all(vals < 0.0):
        return cut.flipped()
    raise StraddlingCluster("cluster points fall on both sides of the cut")


@dataclass(frozen=True, eq=False)
class PolytopeSpec:
    """Ordered cuts whose positive-side conjunction encloses one cluster.

    Cuts are normalized and inward-oriented; a point is inside exactly when
    every cut test passes.  The region need not be bounded.
    """

    cuts: tuple[Cut, ...]
    dimension: int

    def __post_init__(self):
        cuts = tuple(self.cuts)
        if not cuts:
            raise ValueError("a polytope needs at least one cut")
        n = int(self.dimension)
        seen = set()
        for c in cuts:
            if c.dimension != n:
                raise DimensionMismatch(
                    f"cut dimension {c.dimension} does not match polytope dimension {n}"
                )
            if not np.any(c.w):
                raise DegenerateCut("polytope cuts must have a spatial direction")
            if abs(float(np.linalg.norm(c.homogeneous)) - 1.0) > 1e-9:
                raise ValueError("polytope cuts must be normalized (unit (w, b) norm)")
            key = (tuple(c.w), c.b)
            if key in seen:
                raise ValueError("polytope cuts must be pairwise distinct")
            seen.add(key)
        object.__setattr__(self, "cuts", cuts)
        object.__setattr__(self, "dimension", n)

    @property
    def cut_count(self) -> int:
        return len(self.cuts)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Homogeneous cut weights stacked into a (cut_count, n + 1) matrix."""
        m = np.stack([c.homogeneous for c in self.cuts])
        m.setflags(write=False)
        return m

    def __eq__(self, other):
        if not isinstance(other, PolytopeSpec):
            return NotImplemented
        return self.dimension == other.dimension and self.cuts == other.cuts


def point_in_polytope(polytope: PolytopeSpec, p) -> int:
    """1 iff every cut of the polytope fires on ``p`` (boundaries inclusive)."""
    h = np.append(_point(p, polytope.dimension), 1.0)
    return int(bool(np.all(polytope.matrix @ h >= 0.0)))


def points_in_polytope(polytope: PolytopeSpec, points) -> np.ndarray:
    """Vectorized :func:`point_in_polytope`; returns an int8 bit per point."""
    pts = _points(points, polytope.dimension)
    h = np.hstack([pts, np.ones((len(pts), 1))])
    return np.all(h @ polytope.matrix.T >= 0.0, axis=1).astype(np.int8)


def convex_hull(points) -> np.ndarray:
    """Strictly convex hull of 2-D points, counter-clockwise.

    Monotone chain over lexicographically sorted points; collinear and
    duplicate points never appear as vertices.  Returns fewer than three
    vertices when the input has no three non-collinear points.
    """
    pts = np.unique(_points(points, 2), axis=0)  # lexicographic sort + dedup
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[np.ndarray] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0.0:
            lower.pop()
        lower.append(p)
    upper: list[np.ndarray] = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0.0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:  # all points collinear
        return pts[[0, -1]]
    return np.array(hull)


def convex_hull_cuts(cluster, margin: float = 0.0) -> PolytopeSpec:
    """Enclose a 2-D cluster with one inward-oriented cut per hull edge.

    Each cut's boundary is translated outward by ``margin``, so with a
    positive margin every cluster point is strictly interior with geometric
    clearance at least ``margin``.  Clusters without three non-collinear
    points fall back to box cuts around the bounding box expanded by
    ``margin``.
    """
    pts = _points(cluster)
    if pts.shape[1] != 2:
        raise DimensionMismatch("convex_hull_cuts handles 2-D clusters only")
    if margin < 0.0:
        raise ValueError("margin must be nonnegative")
    hull = convex_hull(pts)
    if len(hull) < 3:
        return box_cuts(pts.min(axis=0) - margin, pts.max(axis=0) + margin)
    cuts = []
    for a, b in zip(hull, np.roll(hull, -1, axis=0)):
        d = b - a
        normal = np.array([-d[1], d[0]]) / np.linalg.norm(d)  # interior on the left
        cuts.append(normalize_cut(Cut(normal, margin - normal @ a)))
    return PolytopeSpec(tuple(cuts), dimension=2)


def box_cuts(lower, upper) -> PolytopeSpec:
    """Axis-aligned cuts enclosing the box ``[lower, upper]``, two per axis."""
    lo = _point(lower)
    hi = _point(upper, lo.size)
    if np.any(hi < lo):
        raise ValueError("box upper corner must dominate the lower corner")
    cuts = []
    for i in range(lo.size):
        axis = np.zeros(lo.size)
        axis[i] = 1.0
        cuts.append(normalize_cut(Cut(axis, -lo[i])))   # x_i >= lower_i
        cuts.append(normalize_cut(Cut(-axis, hi[i])))   # x_i <= upper_i
    return PolytopeSpec(tuple(cuts), dimension=lo.size)


def bounding_box_cuts(center, margin: float) -> PolytopeSpec:
    """2n cuts enclosing the axis-aligned box ``center +- margin``."""
    if not margin > 0.0:
        raise ValueError("margin must be positive")
    c = _point(center)
    return box_cuts(c - margin, c + margin)


def input_bound(points) -> float:
    """Largest Euclidean norm among the points' spatial coordinates."""
    pts = _points(points)
    return float(np.linalg.norm(pts, axis=1).max())


@dataclass(frozen=True, eq=False)
class Box:
    """Axis-aligned box given by componentwise lower and upper corners."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = _point(self.lower)
        hi = _point(self.upper, lo.size)
        if np.any(hi < lo):
            raise ValueError("box upper corner must dominate the lower corner")
        lo.setflags(write=False)
        hi.setflags(write=False)
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @classmethod
    def from_points(cls, points) -> "Box":
        pts = _points(points)
        return cls(pts.min(axis=0), pts.max(axis=0))

    @property
    def dimension(self) -> int:
        return self.lower.size

    @property
    def diagonal(self) -> float:
        return float(np.linalg.norm(self.upper - self.lower))

    @property
    def is_degenerate(self) -> bool:
        """True when some axis has zero width."""
        return bool(np.any(self.upper <= self.lower))

    @cached_property
    def corners(self) -> np.ndarray:
        """All 2^n corner points, lexicographic in (lower, upper) choices."""
        grids = np.meshgrid(*zip(self.lower, self.upper), indexing="ij")
        c = np.stack([g.ravel() for g in grids], axis=1)
        c.setflags(write=False)
        return c

    def contains(self, points) -> np.ndarray:
        """Inclusive membership bit per point."""
        pts = _points(points, self.dimension)
        return np.all((pts >= self.lower) & (pts <= self.upper), axis=1)

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        return np.array_equal(self.lower, other.lower) and np.array_equal(
            self.upper, other.upper
        )
