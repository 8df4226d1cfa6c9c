"""The three-layer source network: cuts, conjunctions, one disjunction.

The first layer holds every cut of every polytope (cuts are never shared
between polytopes; a geometrically repeated cut gets its own entry).  The
second layer has one AND gate per polytope, connected with weight 1 to its
own cuts and weight 0 to all others.  A single OR gate over the AND outputs
is the network output.  Every unit fires iff its weighted input sum plus
bias is >= 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch
from .geometry import Cut, PolytopeSpec, _point, _points

__all__ = [
    "DnfNetwork",
    "DnfTrace",
    "LogicGate",
    "build_dnf",
    "eval_dnf",
    "eval_dnf_many",
    "make_and_gate",
    "make_not_gate",
    "make_or_gate",
]

# Half-integer gate biases maximize robustness for bit inputs: the firing
# threshold lands midway between achievable weighted sums.
OR_BIAS = -0.5


def _and_bias(k: int) -> float:
    return -(k - 0.5)


@dataclass(frozen=True, eq=False)
class LogicGate:
    """Perceptron over bit inputs: fires iff ``weights . bits + bias >= 0``."""

    weights: np.ndarray
    bias: float

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        b = float(self.bias)
        if w.ndim != 1 or w.size < 1:
            raise ValueError("gate weights must be a nonempty 1-D sequence")
        if not np.all(np.isfinite(w)) or not np.isfinite(b):
            raise ValueError("gate weights must be finite")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "bias", b)

    @property
    def arity(self) -> int:
        return self.weights.size

    def fire(self, bits) -> int:
        bits = np.asarray(bits, dtype=float)
        if bits.shape != (self.arity,):
            raise DimensionMismatch(
                f"gate expects {self.arity} input bits, got {bits.shape}"
            )
        return int(self.weights @ bits + self.bias >= 0.0)

    def __eq__(self, other):
        if not isinstance(other, LogicGate):
            return NotImplemented
        return self.bias == other.bias and np.array_equal(self.weights, other.weights)


def make_and_gate(k: int) -> LogicGate:
    """Gate firing iff all ``k`` input bits are 1: weights 1, bias -(k - 1/2)."""
    if k < 1:
        raise ValueError("an AND gate needs at least one input")
    return LogicGate(np.ones(k), _and_bias(k))


def make_or_gate(k: int) -> LogicGate:
    """Gate firing iff any of ``k`` input bits is 1: weights 1, bias -1/2."""
    if k < 1:
        raise ValueError("an OR gate needs at least one input")
    return LogicGate(np.ones(k), OR_BIAS)


def make_not_gate() -> LogicGate:
    """Single-input inverter: weight -1, bias 0 (so step(0) = 1 maps 0 to 1)."""
    return LogicGate(np.array([-1.0]), 0.0)


@dataclass(frozen=True, eq=False)
class DnfNetwork:
    """Three-layer perceptron network computing an OR of ANDs of cuts.

    ``cluster_extents[j]`` is the half-open index range of polytope j's cuts
    within ``cut_layer``; AND gate j is nonzero exactly on that range.
    """

    dimension: int
    cut_layer: tuple[Cut, ...]
    and_layer: tuple[LogicGate, ...]
    or_gate: LogicGate
    cluster_extents: tuple[tuple[int, int], ...]

    def __post_init__(self):
        cuts = tuple(self.cut_layer)
        ands = tuple(self.and_layer)
        extents = tuple((int(a), int(b)) for a, b in self.cluster_extents)
        n = int(self.dimension)
        if not cuts or not ands:
            raise ValueError("a DNF network needs at least one polytope with cuts")
        if len(ands) != len(extents):
            raise ValueError("one cut-index extent per AND gate is required")
        if any(c.dimension != n for c in cuts):
            raise DimensionMismatch("all cuts must match the network dimension")
        pos = 0
        for (start, stop), gate in zip(extents, ands):
            if start != pos or stop <= start:
                raise ValueError("cluster extents must partition the cut layer in order")
            pos = stop
            k = stop - start
            expected = np.zeros(len(cuts))
            expected[start:stop] = 1.0
            if gate.arity != len(cuts) or not np.array_equal(gate.weights, expected):
                raise ValueError(
                    "AND gate weights must be 1 on the polytope's own cuts and 0 elsewhere"
                )
            if gate.bias != _and_bias(k):
                raise ValueError("AND gate bias must be -(cut count - 1/2)")
        if pos != len(cuts):
            raise ValueError("cluster extents must cover the whole cut layer")
        if self.or_gate.arity != len(ands) or not np.all(self.or_gate.weights == 1.0):
            raise ValueError("OR gate must have weight 1 on every AND output")
        if self.or_gate.bias != OR_BIAS:
            raise ValueError("OR gate bias must be -1/2")
        object.__setattr__(self, "dimension", n)
        object.__setattr__(self, "cut_layer", cuts)
        object.__setattr__(self, "and_layer", ands)
        object.__setattr__(self, "cluster_extents", extents)

    @property
    def layer_sizes(self) -> tuple[int, int, int]:
        return (len(self.cut_layer), len(self.and_layer), 1)

    @cached_property
    def cut_matrix(self) -> np.ndarray:
        m = np.stack([c.homogeneous for c in self.cut_layer])
        m.setflags(write=False)
        return m

    @cached_property
    def and_matrix(self) -> np.ndarray:
        m = np.stack([g.weights for g in self.and_layer])
        m.setflags(write=False)
        return m

    @cached_property
    def and_biases(self) -> np.ndarray:
        b = np.array([g.bias for g in self.and_layer])
        b.setflags(write=False)
        return b

    def __eq__(self, other):
        if not isinstance(other, DnfNetwork):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.cut_layer == other.cut_layer
            and self.and_layer == other.and_layer
            and self.or_gate == other.or_gate
            and self.cluster_extents == other.cluster_extents
        )


@dataclass(frozen=True)
class DnfTrace:
    """Per-layer bits from one DNF evaluation."""

    cut_bits: tuple[int, ...]
    and_bits: tuple[int, ...]
    output: int


def build_dnf(polytopes: Sequence[PolytopeSpec]) -> DnfNetwork:
    """Assemble the three-layer network for a list of polytopes.

    Layer sizes are (total cuts, polytope count, 1); each polytope's cuts are
    copied into the cut layer in order, never shared with another polytope.
    """
    polys = tuple(polytopes)
    if not polys:
        raise ValueError("at least one polytope is required")
    n = polys[0].dimension
    if any(p.dimension != n for p in polys):
        raise DimensionMismatch("all polytopes must share one dimension")
    cuts: list[Cut] = []
    extents: list[tuple[int, int]] = []
    for p in polys:
        extents.append((len(cuts), len(cuts) + p.cut_count))
        cuts.extend(p.cuts)
    total = len(cuts)
    ands = []
    for start, stop in extents:
        weights = np.zeros(total)
        weights[start:stop] = 1.0
        ands.append(LogicGate(weights, _and_bias(stop - start)))
    return DnfNetwork(
        dimension=n,
        cut_layer=tuple(cuts),
        and_layer=tuple(ands),
        or_gate=make_or_gate(len(polys)),
        cluster_extents=tuple(extents),
    )


def _forward(net: DnfNetwork, h: np.ndarray):
    """Shared forward pass over homogeneous inputs of shape (m, n + 1)."""
    cut_bits = (h @ net.cut_matrix.T >= 0.0).astype(float)
    and_bits = (cut_bits @ net.and_matrix.T + net.and_biases >= 0.0).astype(float)
    out = and_bits @ net.or_gate.weights + net.or_gate.bias >= 0.0
    return cut_bits, and_bits, out


def eval_dnf(net: DnfNetwork, p) -> tuple[int, DnfTrace]:
    """Evaluate the network on one point, returning the bit and all layer bits."""
    h = np.append(_point(p, net.dimension), 1.0)
    cut_bits, and_bits, out = _forward(net, h[np.newaxis, :])
    trace = DnfTrace(
        cut_bits=tuple(int(b) for b in cut_bits[0]),
        and_bits=tuple(int(b) for b in and_bits[0]),
        output=int(out[0]),
    )
    return trace.output, trace


def eval_dnf_many(net: DnfNetwork, points) -> np.ndarray:
    """Vectorized evaluation; returns one output bit (int8) per point."""
    pts = _points(points, net.dimension)
    h = np.hstack([pts, np.ones((len(pts), 1))])
    return _forward(net, h)[2].astype(np.int8)
