"""Synthetic datasets for demos and tests."""

from __future__ import annotations

import numpy as np

from .synth import LabeledDataset

__all__ = ["three_blobs"]

_CENTERS = np.array([[-6.0, -4.0], [5.0, -5.0], [0.0, 6.0]])
_BLOB_RADIUS = 2.0
_CLEARANCE_RADIUS = 3.5
_BOX_HALF_WIDTH = 10.0


def three_blobs(
    seed: int = 7,
    points_per_blob: int = 30,
    background: int = 300,
    with_cluster_ids: bool = True,
) -> LabeledDataset:
    """Three positive clusters on a field of background negatives.

    Blob points scatter within radius 2 of their centers; negatives fill the
    [-10, 10]^2 box but keep at least 3.5 from every center, so the classes
    stay separable with generous margins in both clustered and per-point
    modes.  Deterministic for a fixed seed.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    positives = []
    ids = []
    for cid, center in enumerate(_CENTERS):
        kept = 0
        while kept < points_per_blob:
            offset = rng.normal(scale=0.9, size=2)
            if np.linalg.norm(offset) <= _BLOB_RADIUS:
                positives.append(center + offset)
                ids.append(cid)
                kept += 1
    negatives = []
    while len(negatives) < background:
        candidate = rng.uniform(-_BOX_HALF_WIDTH, _BOX_HALF_WIDTH, size=2)
        if np.linalg.norm(candidate - _CENTERS, axis=1).min() >= _CLEARANCE_RADIUS:
            negatives.append(candidate)
    points = np.vstack([positives, negatives])
    labels = np.concatenate(
        [np.ones(len(positives), dtype=int), np.zeros(background, dtype=int)]
    )
    cluster_ids = tuple(ids) + (None,) * background if with_cluster_ids else None
    return LabeledDataset(points=points, labels=labels, cluster_ids=cluster_ids)
