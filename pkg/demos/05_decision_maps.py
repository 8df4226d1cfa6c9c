"""Synthesize a classifier from labeled blobs and rasterize its regions.

Writes PPM images under demos/output/: the source network's decision map,
the lowered chain's map, and their diff (red pixels would mark any
disagreement; there are none off the boundaries).

Run: python demos/05_decision_maps.py
"""

from pathlib import Path

from cutnets import (
    chain_stats,
    document_from_synthesis,
    eval_chain_many,
    eval_dnf_many,
    render_decision_map,
    serialize_networks,
    synthesize,
)
from cutnets.datasets import three_blobs

OUTPUT = Path(__file__).parent / "output"


def main():
    print("=" * 64)
    print("From labeled points to decision maps")
    print("=" * 64)

    dataset = three_blobs()
    print(f"\n[1] Dataset: {int((dataset.labels == 1).sum())} positives in 3 blobs,"
          f" {int((dataset.labels == 0).sum())} background negatives")

    result = synthesize(dataset)
    stats = chain_stats(result.chain)
    print(f"[2] Synthesis: {len(result.polytopes)} polytopes,"
          f" {stats.cut_count} cuts, chain depth {stats.depth}")
    print(f"    training accuracy: dnf {result.train_accuracy_dnf},"
          f" chain {result.train_accuracy_chain}")

    OUTPUT.mkdir(exist_ok=True)
    box = dataset.bbox
    jobs = {
        "blobs_dnf.ppm": lambda pts: eval_dnf_many(result.dnf, pts),
        "blobs_chain.ppm": lambda pts: eval_chain_many(result.chain, pts),
    }
    for name, evaluator in jobs.items():
        (OUTPUT / name).write_bytes(render_decision_map(evaluator, box, 256, 256))
        print(f"[3] wrote {OUTPUT / name}")
    diff = render_decision_map(
        [jobs["blobs_dnf.ppm"], jobs["blobs_chain.ppm"]], box, 256, 256
    )
    (OUTPUT / "blobs_diff.ppm").write_bytes(diff)
    red = sum(
        diff[i : i + 3] == b"\xff\x00\x00"
        for i in range(len(b"P6\n256 256\n255\n"), len(diff), 3)
    )
    print(f"[3] wrote {OUTPUT / 'blobs_diff.ppm'} ({red} red pixels)")

    spec = OUTPUT / "blobs_spec.json"
    spec.write_text(
        serialize_networks(document_from_synthesis(result, bounds=box)),
        encoding="utf-8",
    )
    print(f"[4] wrote {spec} (try: cutnets verify --spec {spec})")


if __name__ == "__main__":
    main()
