"""Regenerate the frozen fixtures used by the format-stability tests.

Run from the repository root:

    python tests/data/regenerate.py

Rewrites acceptance_spec.json (a fixed two-polytope document) and
acceptance_render.ppm (its 32x32 diff render over the box [-2, 6]^2).
Regenerate only when the document schema or rendering rules change on
purpose; the point of these files is to pin today's bytes.
"""

from pathlib import Path

import numpy as np

from cutnets import (
    Box,
    NetworkSpecDocument,
    build_dnf,
    convex_hull_cuts,
    eval_chain_many,
    eval_dnf_many,
    input_bound,
    lower_to_chain,
    render_decision_map,
    serialize_networks,
)

HERE = Path(__file__).parent
VIEW_BOX = Box(np.array([-2.0, -2.0]), np.array([6.0, 6.0]))


def fixed_document() -> NetworkSpecDocument:
    square = convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)
    triangle = convex_hull_cuts([(3, 0), (5, 0), (3, 2)], margin=0.0)
    polytopes = (square, triangle)
    L = input_bound(VIEW_BOX.corners)
    return NetworkSpecDocument(
        dimension=2,
        polytopes=polytopes,
        dnf=build_dnf(polytopes),
        chain=lower_to_chain(polytopes, L),
        bounds=VIEW_BOX,
    )


def main():
    doc = fixed_document()
    (HERE / "acceptance_spec.json").write_text(
        serialize_networks(doc), encoding="utf-8"
    )
    evaluators = [
        lambda pts: eval_dnf_many(doc.dnf, pts),
        lambda pts: eval_chain_many(doc.chain, pts),
    ]
    (HERE / "acceptance_render.ppm").write_bytes(
        render_decision_map(evaluators, VIEW_BOX, 32, 32)
    )
    print("fixtures rewritten")


if __name__ == "__main__":
    main()
