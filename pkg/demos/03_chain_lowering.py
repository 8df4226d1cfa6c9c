"""Lowering the three-layer network to one gate per layer.

The trick is a carry weight S larger than any achievable affine term: a
chain of gates over the sign-flipped cuts computes a running OR (once a
gate fires, S forces every later gate to fire), and a combiner inverts the
run, turning "some negated cut fired" into "strictly inside the polytope".
Combiner-to-combiner skip connections then OR the modules together.

Run: python demos/03_chain_lowering.py
"""

import numpy as np

from cutnets import (
    CombinerGate,
    chain_stats,
    choose_S,
    convex_hull_cuts,
    eval_chain,
    input_bound,
    lower_to_chain,
)


def show_trace(chain, point):
    bit, trace = eval_chain(chain, point)
    cells = []
    for i, b in enumerate(trace.bits):
        mark = "C" if isinstance(chain.gates[i], CombinerGate) else "."
        cells.append(f"{mark}{b}")
    print(f"  {str(point):>14}  ->  {' '.join(cells)}   output {bit}")
    return bit


def main():
    print("=" * 64)
    print("One gate per layer, with skip connections")
    print("=" * 64)

    print("\n[1] Sizing the carry weight")
    for L in (0.0, np.sqrt(3.0), 10.0):
        print(f"  |x| <= {L:<10.6g} ->  S = {choose_S(L):.6g}")
    print("  any unit cut satisfies |(w,b).(x,1)| <= sqrt(L^2+1) < S")

    print("\n[2] Lower a two-polytope classifier")
    square = convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)
    triangle = convex_hull_cuts([(3, 0), (5, 0), (3, 2)], margin=0.0)
    view_corners = [(-6, -6), (6, -6), (6, 6), (-6, 6)]
    L = input_bound(view_corners)
    chain = lower_to_chain([square, triangle], L)
    stats = chain_stats(chain)
    print(f"  depth {stats.depth} = {stats.cut_count} cut gates"
          f" + {stats.module_count} combiners, S = {stats.S:.4f}")
    print(f"  combiner layers: {tuple(b + 1 for b in chain.module_boundaries)}"
          " (1-indexed)")

    print("\n[3] Layer-by-layer traces ('C' marks a combiner)")
    print("  inside the square: no negated cut fires, combiner 1 inverts to 1")
    show_trace(chain, (0.5, 0.5))
    print("  inside the triangle: module 2 finds it")
    show_trace(chain, (3.5, 0.5))
    print("  outside both: every module's chain saturates, output 0")
    show_trace(chain, (-3.0, -3.0))

    print("\n[4] The carry is sticky")
    _, trace = eval_chain(chain, (-3.0, -3.0))
    first_module = trace.bits[: chain.module_boundaries[0]]
    print(f"  module-1 chain bits {first_module}: after the first 1,"
          " S keeps every later gate at 1")

    print("\n[5] Inputs beyond the bound are flagged, not rejected")
    _, trace = eval_chain(chain, (40.0, 0.0))
    print(f"  |x| = {trace.input_norm:.1f} > L = {chain.L:.4f}"
          f" -> bound_exceeded = {trace.bound_exceeded}")


if __name__ == "__main__":
    main()
