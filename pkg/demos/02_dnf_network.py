"""The three-layer source network: cuts, conjunctions, one disjunction.

Perceptrons implement Boolean gates outright, so a classifier that encloses
each positive cluster in a polytope is just a circuit: a layer of cuts, an
AND gate per polytope, and an OR gate on top.  This script builds the
nine-cut, three-polytope configuration and inspects its wiring and traces.

Run: python demos/02_dnf_network.py
"""

import numpy as np

from cutnets import (
    Cut,
    PolytopeSpec,
    build_dnf,
    convex_hull_cuts,
    eval_dnf,
    make_and_gate,
    make_not_gate,
    make_or_gate,
    normalize_cut,
    point_in_polytope,
)


def main():
    print("=" * 64)
    print("The cut / AND / OR network")
    print("=" * 64)

    print("\n[1] Perceptrons as logic gates")
    and3 = make_and_gate(3)
    print(f"  AND(3): weights {and3.weights.tolist()}, bias {and3.bias}")
    print("    fires only on 111:",
          [and3.fire(bits) for bits in [(1, 1, 0), (1, 1, 1)]])
    or2 = make_or_gate(2)
    print(f"  OR(2): weights {or2.weights.tolist()}, bias {or2.bias}")
    inv = make_not_gate()
    print(f"  NOT: weight {inv.weights.tolist()}, bias {inv.bias};"
          f" 0 -> {inv.fire([0])}, 1 -> {inv.fire([1])}")

    print("\n[2] Three polytopes with 4 + 3 + 2 cuts")
    square = convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)
    triangle = convex_hull_cuts([(3, 0), (5, 0), (3, 2)], margin=0.0)
    quadrant = PolytopeSpec(
        (
            normalize_cut(Cut(np.array([1.0, 0.0]), 8.0)),   # x >= -8
            normalize_cut(Cut(np.array([0.0, 1.0]), 8.0)),   # y >= -8
        ),
        2,
    )
    polytopes = [square, triangle, quadrant]
    net = build_dnf(polytopes)
    print(f"  layer sizes: {net.layer_sizes[0]} cuts / "
          f"{net.layer_sizes[1]} AND gates / {net.layer_sizes[2]} OR gate")
    print(f"  cut index ranges per polytope: {net.cluster_extents}")

    print("\n[3] Unused connections have weight 0")
    middle = net.and_layer[1]
    print(f"  AND gate 2 weights: {middle.weights.astype(int).tolist()}")
    print(f"  AND gate 2 bias: {middle.bias} (fires only when all 3 own cuts do)")

    print("\n[4] Traces name the polytope that fired")
    for probe in [(0.5, 0.5), (3.5, 0.5), (-9.0, 0.0)]:
        bit, trace = eval_dnf(net, probe)
        members = [point_in_polytope(p, probe) for p in polytopes]
        print(f"  {probe}: output {bit}, AND layer {trace.and_bits},"
              f" oracle membership {tuple(members)}")

    print("\n[5] Cuts are never shared between polytopes")
    twice = build_dnf([square, square])
    print(f"  the same square twice -> {twice.layer_sizes[0]} cut units"
          f" ({square.cut_count} duplicated)")


if __name__ == "__main__":
    main()
