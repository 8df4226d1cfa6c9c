"""Differential verification of the two network forms.

The lowered chain tests strict interiority while the source network's cuts
are inclusive, so the only place they may disagree is exactly on a cut
hyperplane.  The checker samples points, compares both networks, and
attributes every disagreement with its distance to the nearest hyperplane.

Run: python demos/04_equivalence.py
"""

import numpy as np

from cutnets import (
    Box,
    ChainNetwork,
    boundary_distance,
    build_dnf,
    check_equivalence,
    convex_hull_cuts,
    default_epsilon,
    eval_chain,
    eval_dnf,
    input_bound,
    lower_to_chain,
    sample_points,
)


def random_polygon(rng, cut_count):
    center = rng.uniform(-6, 6, 2)
    radius = rng.uniform(1.0, 3.0)
    angles = np.sort(rng.uniform(0, 2 * np.pi, cut_count))
    pts = center + radius * np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return convex_hull_cuts(pts, margin=0.0)


def main():
    print("=" * 64)
    print("Differential equivalence checking")
    print("=" * 64)

    box = Box(np.array([-10.0, -10.0]), np.array([10.0, 10.0]))
    L = input_bound(box.corners)
    epsilon = default_epsilon(box)
    rng = np.random.Generator(np.random.Philox(2024))
    polytopes = [random_polygon(rng, k) for k in (5, 3, 7)]
    dnf = build_dnf(polytopes)
    chain = lower_to_chain(polytopes, L)

    print(f"\n[1] 100000 random points, epsilon = {epsilon:.3g}")
    points = sample_points(box, 100_000, seed=7)
    report = check_equivalence(dnf, chain, polytopes, points, epsilon, seed=7)
    print(f"  agreements: {report.agreements}/{report.points_tested}")
    print(f"  disagreements beyond epsilon: {len(report.beyond_epsilon)}")
    print(f"  passed: {report.passed}")

    print("\n[2] The one honest disagreement: a boundary tie")
    square = convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)
    sq_dnf = build_dnf([square])
    sq_chain = lower_to_chain([square], L)
    edge = (0.0, 0.5)
    dnf_bit, _ = eval_dnf(sq_dnf, edge)
    chain_bit, _ = eval_chain(sq_chain, edge)
    print(f"  point {edge} sits exactly on the x >= 0 cut")
    print(f"  inclusive network: {dnf_bit}, strict chain: {chain_bit},"
          f" hyperplane distance: {boundary_distance([square], edge)}")

    print("\n[3] Sabotage: a carry weight that cannot dominate")
    weak = ChainNetwork(
        dimension=chain.dimension,
        gates=chain.gates,
        module_boundaries=chain.module_boundaries,
        S=0.5,
        L=chain.L,
    )
    print(f"  S = 0.5 vs sqrt(L^2+1) = {np.sqrt(L * L + 1):.4f}"
          f" -> carry_dominates = {weak.carry_dominates}")
    broken = check_equivalence(dnf, weak, polytopes, points, epsilon, seed=7)
    print(f"  beyond-epsilon disagreements: {len(broken.beyond_epsilon)}"
          f" of {broken.points_tested} -> passed: {broken.passed}")
    worst = max(broken.beyond_epsilon, key=lambda d: d.boundary_distance)
    print(f"  e.g. {tuple(round(c, 3) for c in worst.point)} at distance"
          f" {worst.boundary_distance:.3f} from any hyperplane")


if __name__ == "__main__":
    main()
