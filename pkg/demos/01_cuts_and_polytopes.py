"""Cuts, orientation, and convex polytope enclosure.

A perceptron with homogeneous weights (w, b) splits the plane along the
line w.x + b = 0 and fires on the closed positive side.  This script walks
through the primitive operations: testing sides, normalizing, orienting a
cut toward a cluster, and enclosing point sets with hull or box cuts.

Run: python demos/01_cuts_and_polytopes.py
"""

import numpy as np

from cutnets import (
    Cut,
    bounding_box_cuts,
    convex_hull_cuts,
    cut_side,
    homogenize,
    input_bound,
    normalize_cut,
    orient_cut,
    point_in_polytope,
)


def main():
    print("=" * 64)
    print("Cuts and polytopes")
    print("=" * 64)

    print("\n[1] One cut, two half-planes")
    cut = Cut(np.array([1.0, 0.0]), 0.0)  # fires where x >= 0
    for p in [(2, 3), (0, 5), (-0.1, 7)]:
        print(f"  cut_side(x >= 0, {p}) = {cut_side(cut, p)}")
    print("  homogenize((2, 3)) =", homogenize((2, 3)).tolist(),
          " <- bias rides on the constant channel")

    print("\n[2] Normalization does not move the cut")
    raw = Cut(np.array([3.0, 4.0]), 10.0)
    unit = normalize_cut(raw)
    print(f"  raw (w, b) = {raw.w.tolist()}, {raw.b}")
    print(f"  unit (w, b) = {np.round(unit.w, 6).tolist()}, {unit.b:.6f}")
    probe = (-2.5, 0.75)
    print(f"  same side at {probe}: {cut_side(raw, probe)} == {cut_side(unit, probe)}")

    print("\n[3] Orientation: the cluster decides the positive side")
    cluster = [(-1.0, 0.0), (-2.0, 1.0)]
    oriented = orient_cut(Cut(np.array([1.0, 0.0]), 0.0), cluster)
    print(f"  cluster on the negative side -> weights flipped to {oriented.w.tolist()}")
    print("  every cluster point now passes:",
          [cut_side(oriented, p) for p in cluster])

    print("\n[4] A polytope is a conjunction of cuts")
    corners = [(0, 0), (1, 0), (1, 1), (0, 1)]
    square = convex_hull_cuts(corners, margin=0.0)
    print(f"  unit square -> {square.cut_count} hull cuts")
    for p in [(0.5, 0.5), (0.0, 0.5), (1.2, 0.5)]:
        print(f"  inside{p}: {point_in_polytope(square, p)}")
    print("  the boundary is inclusive: (0.0, 0.5) is still inside")

    print("\n[5] Margins buy clearance")
    cloud = np.array([(0.2, 0.1), (1.1, -0.2), (0.9, 1.0), (-0.1, 0.8)])
    snug = convex_hull_cuts(cloud, margin=0.0)
    roomy = convex_hull_cuts(cloud, margin=0.5)
    probe = (1.4, 1.2)
    print(f"  {probe} in snug hull: {point_in_polytope(snug, probe)}"
          f", in margin-0.5 hull: {point_in_polytope(roomy, probe)}")

    print("\n[6] Degenerate clusters fall back to boxes")
    collinear = convex_hull_cuts([(0, 0), (1, 0)], margin=0.1)
    print(f"  two collinear points -> {collinear.cut_count} box cuts")
    singleton = bounding_box_cuts((1, 2), margin=0.5)
    print(f"  singleton box holds its center: {point_in_polytope(singleton, (1, 2))}")
    print(f"  and excludes (1, 3): {point_in_polytope(singleton, (1, 3))}")

    print("\n[7] The input-norm bound")
    pts = [(3, 4), (0, 1), (-1, -1)]
    print(f"  input_bound({pts}) = {input_bound(pts)}  (the farthest point)")


if __name__ == "__main__":
    main()
