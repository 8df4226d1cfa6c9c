"""Differential equivalence checking between the two network forms.

The source and lowered networks agree everywhere except possibly on the cut
hyperplanes themselves, where the source tests ``>= 0`` and the lowered
network tests ``> 0``.  The checker therefore evaluates both networks on a
deterministic point sample and attributes every disagreement with its exact
geometric distance to the nearest cut hyperplane: the check passes when no
disagreement lies further than epsilon from every hyperplane.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .chain_net import ChainNetwork, eval_chain_many
from .dnf_net import DnfNetwork, LogicGate, eval_dnf_many
from .errors import (
    DegenerateCut,
    DimensionMismatch,
    EmptyDataset,
    InputBoundExceeded,
)
from .geometry import Box, PolytopeSpec, _points

__all__ = [
    "Disagreement",
    "EquivalenceReport",
    "GateCheckResult",
    "PRNG_ID",
    "accuracy",
    "boundary_distance",
    "boundary_distances",
    "brute_force_gate_check",
    "check_equivalence",
    "default_epsilon",
    "sample_points",
]

# Counter-based, splittable generator; recorded in reports so the sampling
# stream is reproducible.
PRNG_ID = "numpy-philox4x64"

MAX_BRUTE_FORCE_ARITY = 20


def default_epsilon(box: Box) -> float:
    """Boundary-exclusion radius for a sampling box: 1e-9 times its diagonal.

    Far above double-precision noise at this scale, far below any meaningful
    geometric feature.
    """
    return 1e-9 * box.diagonal


def sample_points(bounds: Box, count: int, seed: int = 0, mode: str = "uniform") -> np.ndarray:
    """Deterministic point sample inside an axis-aligned box.

    ``uniform`` draws ``count`` points from a Philox stream keyed by
    ``seed``; ``grid`` emits the full ceil(count^(1/n))-per-axis lattice,
    endpoints included, which may exceed ``count``.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    if bounds.is_degenerate:
        raise ValueError("cannot sample a degenerate box")
    n = bounds.dimension
    if mode == "grid":
        per_axis = 1
        while per_axis**n < count:
            per_axis += 1
        axes = [np.linspace(lo, hi, per_axis) for lo, hi in zip(bounds.lower, bounds.upper)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([g.ravel() for g in mesh], axis=1)
    if mode == "uniform":
        rng = np.random.Generator(np.random.Philox(seed))
        return rng.uniform(bounds.lower, bounds.upper, size=(count, n))
    raise ValueError(f"unknown sampling mode {mode!r} (expected 'grid' or 'uniform')")


def _cut_stack(polytopes: Sequence[PolytopeSpec]) -> tuple[np.ndarray, int]:
    polys = tuple(polytopes)
    if not polys:
        raise ValueError("at least one polytope is required")
    n = polys[0].dimension
    if any(p.dimension != n for p in polys):
        raise DimensionMismatch("all polytopes must share one dimension")
    return np.vstack([p.matrix for p in polys]), n


def boundary_distances(polytopes: Sequence[PolytopeSpec], points) -> np.ndarray:
    """Per point, the geometric distance to the nearest cut hyperplane.

    The distance to a cut is ``|w . p + b| / |w|`` over the spatial weights,
    which is invariant under joint rescaling of ``(w, b)``.
    """
    cuts, n = _cut_stack(polytopes)
    spatial_norms = np.linalg.norm(cuts[:, :-1], axis=1)
    if np.any(spatial_norms == 0.0):
        raise DegenerateCut("a cut with all-zero spatial weights has no hyperplane")
    pts = _points(points, n)
    h = np.hstack([pts, np.ones((len(pts), 1))])
    return np.min(np.abs(h @ cuts.T) / spatial_norms, axis=1)


def boundary_distance(polytopes: Sequence[PolytopeSpec], p) -> float:
    """Scalar form of :func:`boundary_distances`."""
    return float(boundary_distances(polytopes, np.asarray(p, dtype=float)[np.newaxis, :])[0])


@dataclass(frozen=True)
class Disagreement:
    """One point where the two networks differ, with boundary attribution."""

    point: tuple[float, ...]
    dnf_bit: int
    chain_bit: int
    boundary_distance: float


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of a differential run over a point sample.

    ``passed`` holds when every disagreement lies within ``epsilon`` of some
    cut hyperplane, i.e. inside the zone where inclusive and strict boundary
    semantics legitimately diverge.
    """

    points_tested: int
    agreements: int
    disagreements: tuple[Disagreement, ...]
    epsilon: float
    seed: int | None = None
    prng: str | None = None

    def __post_init__(self):
        if self.agreements + len(self.disagreements) != self.points_tested:
            raise ValueError("agreements plus disagreements must equal points tested")

    @property
    def passed(self) -> bool:
        return all(d.boundary_distance <= self.epsilon for d in self.disagreements)

    @property
    def beyond_epsilon(self) -> tuple[Disagreement, ...]:
        """Disagreements that cannot be blamed on a boundary tie."""
        return tuple(d for d in self.disagreements if d.boundary_distance > self.epsilon)


def check_equivalence(
    dnf: DnfNetwork,
    chain: ChainNetwork,
    polytopes: Sequence[PolytopeSpec],
    points,
    epsilon: float,
    seed: int | None = None,
) -> EquivalenceReport:
    """Evaluate both networks on every point and attribute all disagreements.

    The points must respect the chain's input bound; ``seed`` is carried into
    the report as sampling metadata.  Points are processed in order, so the
    report is deterministic for a fixed sample.
    """
    pts = _points(points, dnf.dimension)
    if chain.dimension != dnf.dimension:
        raise DimensionMismatch("the two networks disagree on input dimension")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(norms > chain.L):
        worst = float(norms.max())
        raise InputBoundExceeded(
            f"a sample point has norm {worst:.6g}, above the chain bound L={chain.L:.6g}"
        )
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    dnf_bits = eval_dnf_many(dnf, pts)
    chain_bits = eval_chain_many(chain, pts)
    differ = np.flatnonzero(dnf_bits != chain_bits)
    disagreements = []
    if len(differ):
        dists = boundary_distances(polytopes, pts[differ])
        for idx, dist in zip(differ, dists):
            disagreements.append(
                Disagreement(
                    point=tuple(float(x) for x in pts[idx]),
                    dnf_bit=int(dnf_bits[idx]),
                    chain_bit=int(chain_bits[idx]),
                    boundary_distance=float(dist),
                )
            )
    return EquivalenceReport(
        points_tested=len(pts),
        agreements=len(pts) - len(disagreements),
        disagreements=tuple(disagreements),
        epsilon=float(epsilon),
        seed=seed,
        prng=PRNG_ID if seed is not None else None,
    )


@dataclass(frozen=True)
class GateCheckResult:
    """Outcome of an exhaustive truth-table comparison."""

    passed: bool
    counterexample: tuple[int, ...] | None = None
    got: int | None = None
    expected: int | None = None


_BOOLEAN_FUNCTIONS: dict[str, Callable[[tuple[int, ...]], int]] = {
    "conjunction": lambda bits: int(all(bits)),
    "disjunction": lambda bits: int(any(bits)),
    "negation": lambda bits: int(not bits[0]),
}


def brute_force_gate_check(gate: LogicGate, k: int, expected: str) -> GateCheckResult:
    """Enumerate all 2^k bit patterns and compare the gate to a named function.

    ``expected`` is one of ``conjunction``, ``disjunction`` or ``negation``
    (the latter requires k = 1).  Returns the first counterexample found.
    """
    if expected not in _BOOLEAN_FUNCTIONS:
        raise ValueError(f"unknown boolean function {expected!r}")
    if k < 1:
        raise ValueError("arity must be at least 1")
    if k > MAX_BRUTE_FORCE_ARITY:
        raise ValueError(f"arity {k} too large to enumerate (limit {MAX_BRUTE_FORCE_ARITY})")
    if expected == "negation" and k != 1:
        raise ValueError("negation is checked at arity 1")
    if gate.arity != k:
        raise DimensionMismatch(f"gate has arity {gate.arity}, check requested {k}")
    reference = _BOOLEAN_FUNCTIONS[expected]
    for bits in itertools.product((0, 1), repeat=k):
        got = gate.fire(bits)
        want = reference(bits)
        if got != want:
            return GateCheckResult(False, counterexample=bits, got=got, expected=want)
    return GateCheckResult(True)


def accuracy(evaluator: Callable[[np.ndarray], np.ndarray], dataset) -> float:
    """Fraction of dataset points whose predicted bit equals the label.

    ``evaluator`` maps a (m, n) point matrix to m output bits; ``dataset``
    provides ``points`` and ``labels``.
    """
    points = np.asarray(dataset.points, dtype=float)
    labels = np.asarray(dataset.labels)
    if len(points) == 0:
        raise EmptyDataset("cannot score an empty dataset")
    bits = np.asarray(evaluator(points)).reshape(-1)
    if bits.shape != labels.shape:
        raise DimensionMismatch("evaluator must return one bit per dataset point")
    return float(np.mean(bits == labels))
