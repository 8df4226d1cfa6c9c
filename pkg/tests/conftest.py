"""Shared builders for randomized geometries and reference shapes."""

import numpy as np
import pytest

from cutnets import Box, PolytopeSpec, convex_hull_cuts, input_bound


def random_convex_polytope(rng, cut_count, center_scale=6.0, radius_range=(0.8, 3.0)):
    """A polytope with exactly ``cut_count`` cuts: hull of points on a circle.

    Points at distinct angles on a common circle are in convex position, so
    every point is a hull vertex and the hull has exactly ``cut_count`` edges.
    """
    center = rng.uniform(-center_scale, center_scale, 2)
    radius = rng.uniform(*radius_range)
    while True:
        angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, cut_count))
        gaps = np.diff(np.append(angles, angles[0] + 2.0 * np.pi))
        if gaps.min() > 0.15:  # well-separated vertices keep edges distinct
            break
    points = center + radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return convex_hull_cuts(points, margin=0.0)


def random_geometry(rng, polytope_range=(1, 5), cut_range=(3, 8)):
    """A random list of 2-D polytopes, possibly overlapping."""
    count = int(rng.integers(polytope_range[0], polytope_range[1] + 1))
    return [
        random_convex_polytope(rng, int(rng.integers(cut_range[0], cut_range[1] + 1)))
        for _ in range(count)
    ]


def membership_oracle(polytopes, points):
    """Reference classifier: OR over polytopes of inclusive membership."""
    from cutnets import points_in_polytope

    bits = np.zeros(len(np.atleast_2d(points)), dtype=np.int8)
    for poly in polytopes:
        bits |= points_in_polytope(poly, points)
    return bits


@pytest.fixture
def unit_square() -> PolytopeSpec:
    return convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)


@pytest.fixture
def box10() -> Box:
    return Box(np.array([-10.0, -10.0]), np.array([10.0, 10.0]))


@pytest.fixture
def bound10(box10) -> float:
    """Input-norm bound covering every point of the [-10, 10]^2 box."""
    return input_bound(box10.corners)
