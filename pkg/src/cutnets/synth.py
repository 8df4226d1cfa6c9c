"""End-to-end synthesis: labeled points to a verified pair of networks.

Positive points are grouped into clusters (by caller-supplied ids, or one
cluster per point when none are given), each cluster is enclosed in a
margined convex polytope, and the polytopes are compiled into both network
forms.  Separation of the two classes is validated exhaustively against the
training negatives, and margins keep every training point clear of every cut
hyperplane, so both networks classify the training data perfectly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .chain_net import ChainNetwork, eval_chain_many, lower_to_chain
from .dnf_net import DnfNetwork, build_dnf, eval_dnf_many
from .errors import MarginTooSmall, NoPositiveClass, SeparationFailure
from .geometry import (
    Box,
    PolytopeSpec,
    bounding_box_cuts,
    box_cuts,
    convex_hull_cuts,
    input_bound,
    points_in_polytope,
    _points,
)
from .verify import accuracy, boundary_distances, default_epsilon

__all__ = [
    "DEFAULT_MARGIN_FRACTION",
    "LabeledDataset",
    "SynthesisResult",
    "build_polytopes",
    "default_margin",
    "group_positive",
    "synthesize",
]

DEFAULT_MARGIN_FRACTION = 0.01


@dataclass(frozen=True, eq=False)
class LabeledDataset:
    """Two-class point set, optionally with cluster ids on the positives.

    ``cluster_ids`` has one entry per point: an integer on every positive
    point and None on every negative, or is None entirely when no clustering
    is given.
    """

    points: np.ndarray
    labels: np.ndarray
    cluster_ids: tuple[int | None, ...] | None = None

    def __post_init__(self):
        pts = _points(self.points)
        labels = np.asarray(self.labels)
        if labels.shape != (len(pts),):
            raise ValueError("labels must be a flat sequence, one per point")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        labels = labels.astype(np.int8)
        labels.setflags(write=False)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)
        if self.cluster_ids is not None:
            ids = tuple(None if i is None else int(i) for i in self.cluster_ids)
            if len(ids) != len(pts):
                raise ValueError("cluster ids must align with points")
            for label, cid in zip(labels, ids):
                if (cid is None) == (label == 1):
                    raise ValueError(
                        "cluster ids must cover exactly the positive points"
                    )
            object.__setattr__(self, "cluster_ids", ids)

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)

    @property
    def positives(self) -> np.ndarray:
        return self.points[self.labels == 1]

    @property
    def negatives(self) -> np.ndarray:
        return self.points[self.labels == 0]

    @property
    def bbox(self) -> Box:
        return Box.from_points(self.points)


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    """Everything the pipeline produced, plus its training accuracies."""

    polytopes: tuple[PolytopeSpec, ...]
    dnf: DnfNetwork
    chain: ChainNetwork
    train_accuracy_dnf: float
    train_accuracy_chain: float
    L: float
    margin: float


def group_positive(dataset: LabeledDataset) -> list[np.ndarray]:
    """Split the positive points into clusters.

    With cluster ids, groups follow the ids in order of first appearance.
    Without ids, every positive point becomes its own singleton group, the
    limit construction that always separates (at a cost in network size).
    """
    mask = dataset.labels == 1
    if not mask.any():
        raise NoPositiveClass("the dataset has no points labeled 1")
    if dataset.cluster_ids is None:
        return [p[np.newaxis, :] for p in dataset.points[mask]]
    groups: dict[int, list[np.ndarray]] = {}
    for point, label, cid in zip(dataset.points, dataset.labels, dataset.cluster_ids):
        if label == 1:
            groups.setdefault(cid, []).append(point)
    return [np.array(members) for members in groups.values()]


def build_polytopes(
    groups: Sequence[np.ndarray], negatives, margin: float
) -> list[PolytopeSpec]:
    """Enclose each group in a margined polytope and validate separation.

    2-D groups of several points get convex-hull cuts; singletons and higher
    dimensions get axis-aligned boxes.  Every negative point must land
    outside every polytope (checked exhaustively), and every group point must
    sit strictly inside its own polytope with clearance close to ``margin``.
    """
    if not margin > 0.0:
        raise ValueError("margin must be positive")
    groups = [np.atleast_2d(np.asarray(g, dtype=float)) for g in groups]
    if not groups:
        raise ValueError("at least one group is required")
    polytopes = []
    for group in groups:
        n = group.shape[1]
        if n == 2 and len(group) > 1:
            poly = convex_hull_cuts(group, margin)
        elif len(group) == 1:
            poly = bounding_box_cuts(group[0], margin)
        else:
            poly = box_cuts(group.min(axis=0) - margin, group.max(axis=0) + margin)
        polytopes.append(poly)

    negatives = np.asarray(negatives, dtype=float)
    if negatives.size:
        failures = []
        for idx, poly in enumerate(polytopes):
            inside = points_in_polytope(poly, negatives)
            failures.extend((idx, p) for p in negatives[inside == 1])
        if failures:
            raise SeparationFailure(failures)

    for idx, (group, poly) in enumerate(zip(groups, polytopes)):
        clearance = boundary_distances([poly], group)
        if np.any(points_in_polytope(poly, group) == 0) or np.any(
            clearance < margin * (1.0 - 1e-9)
        ):
            raise MarginTooSmall(
                f"polytope {idx} does not hold its own cluster at margin {margin}"
            )
    return polytopes


def default_margin(dataset: LabeledDataset) -> float:
    """One percent of the dataset's bounding-box diagonal."""
    diagonal = dataset.bbox.diagonal
    if diagonal == 0.0:
        raise ValueError(
            "the dataset has zero extent; pass an explicit margin instead"
        )
    return DEFAULT_MARGIN_FRACTION * diagonal


def synthesize(dataset: LabeledDataset, margin: float | None = None) -> SynthesisResult:
    """Run the full pipeline and require perfect training separation.

    Builds margined polytopes per positive cluster, sizes the carry weight
    from the input-norm bound over all points, compiles both networks, and
    checks that every training point clears every cut hyperplane by more
    than the equivalence epsilon, so the two networks agree on the whole
    training set and both reach accuracy exactly 1.0.
    """
    if margin is None:
        margin = default_margin(dataset)
    groups = group_positive(dataset)
    polytopes = tuple(build_polytopes(groups, dataset.negatives, margin))
    L = input_bound(dataset.points)
    dnf = build_dnf(polytopes)
    chain = lower_to_chain(polytopes, L)

    epsilon = default_epsilon(dataset.bbox)
    clearance = boundary_distances(polytopes, dataset.points)
    if np.any(clearance <= epsilon):
        offender = int(np.argmin(clearance))
        raise MarginTooSmall(
            f"training point {tuple(dataset.points[offender])} lies within "
            f"{epsilon:.3g} of a cut hyperplane; increase the margin"
        )

    acc_dnf = accuracy(lambda pts: eval_dnf_many(dnf, pts), dataset)
    acc_chain = accuracy(lambda pts: eval_chain_many(chain, pts), dataset)
    if acc_dnf != 1.0 or acc_chain != 1.0:
        # Unreachable when the separation and clearance checks above hold.
        raise RuntimeError(
            f"synthesis postcondition violated: accuracies ({acc_dnf}, {acc_chain})"
        )
    return SynthesisResult(
        polytopes=polytopes,
        dnf=dnf,
        chain=chain,
        train_accuracy_dnf=acc_dnf,
        train_accuracy_chain=acc_chain,
        L=L,
        margin=float(margin),
    )
