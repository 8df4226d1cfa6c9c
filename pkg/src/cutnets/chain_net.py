"""The one-gate-per-layer target network and the lowering pass onto it.

Each polytope becomes a module: a run of cut gates testing the sign-flipped
(negated) cuts, closed by a combiner gate.  Within a module, every cut gate
after the first also receives the previous gate's bit with the carry weight
S.  Because every stored cut has a unit homogeneous weight vector and inputs
are bounded in norm by L, any S above sqrt(L^2 + 1) dominates the affine
term, so a 1 anywhere in the run forces every later gate in the run to 1.
The run therefore computes the disjunction of the negated cuts, and the
combiner's inversion turns that into the conjunction of the original cuts,
i.e. strict polytope membership.

Modules are chained through the combiners alone: combiner j receives the
previous combiner's bit through a skip connection with weight S and the
module's final chain bit with weight -1, computing "a cluster was already
found OR the point is strictly inside this polytope".  Cut gates read the
input x through skip connections; combiners read no input channel at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import DimensionMismatch
from .geometry import Cut, PolytopeSpec, _point, _points

__all__ = [
    "ChainNetwork",
    "ChainStats",
    "ChainTrace",
    "CombinerGate",
    "CutGate",
    "chain_or_module",
    "chain_stats",
    "choose_S",
    "eval_chain",
    "eval_chain_many",
    "lower_to_chain",
]


def choose_S(L: float) -> float:
    """Carry weight for inputs of norm at most ``L``: ``2 * sqrt(L^2 + 1)``.

    For any unit-norm homogeneous cut ``(w, b)`` and any ``|x| <= L``,
    ``|(w, b) . (x, 1)| <= sqrt(L^2 + 1)``, so this S dominates the affine
    term with a factor-2 safety margin.
    """
    L = float(L)
    if not np.isfinite(L) or L < 0.0:
        raise ValueError("the input bound L must be finite and nonnegative")
    return 2.0 * float(np.sqrt(L * L + 1.0))


@dataclass(frozen=True, eq=False)
class CutGate:
    """Chain gate thresholding an affine form of the skipped input plus a carry.

    ``weights`` is the unit-norm homogeneous vector ``(w, b)``; in a lowered
    network it is the sign-flipped image of an oriented polytope cut.  When
    ``has_carry`` the gate also adds S times the previous layer's bit; the
    gate opening a module has no carry.
    """

    weights: np.ndarray
    has_carry: bool

    def __post_init__(self):
        w = np.atleast_1d(np.asarray(self.weights, dtype=float)).copy()
        if w.ndim != 1 or w.size < 2:
            raise ValueError("a cut gate needs spatial weights plus a bias weight")
        if not np.all(np.isfinite(w)):
            raise ValueError("gate weights must be finite")
        if abs(float(np.linalg.norm(w)) - 1.0) > 1e-9:
            raise ValueError("cut gate weights must have unit homogeneous norm")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "has_carry", bool(self.has_carry))

    @property
    def dimension(self) -> int:
        return self.weights.size - 1

    def __eq__(self, other):
        if not isinstance(other, CutGate):
            return NotImplemented
        return self.has_carry == other.has_carry and np.array_equal(
            self.weights, other.weights
        )


@dataclass(frozen=True)
class CombinerGate:
    """Module-closing gate: weight -1 on the preceding bit, bias 0.

    With no other input, step(-bit) inverts the module's chain bit.  When
    ``has_skip`` the gate also adds S times the previous combiner's bit,
    forwarding "a cluster was already found" past the inversion; the first
    module's combiner has no skip.  Combiners read no input channel, not even
    the constant bias channel.
    """

    has_skip: bool


ChainGate = Union[CutGate, CombinerGate]


@dataclass(frozen=True, eq=False)
class ChainNetwork:
    """One-gate-per-layer network with skip connections and carry weight S.

    ``module_boundaries`` are the indices of the combiner gates; ``S`` is the
    single carry weight used by every carry and skip connection; ``L`` is the
    input-norm bound the network was sized for.  Construction checks the
    one-gate-per-layer wiring but not that S dominates L (see
    :attr:`carry_dominates`), so deliberately mis-sized networks can still be
    evaluated and studied.
    """

    dimension: int
    gates: tuple[ChainGate, ...]
    module_boundaries: tuple[int, ...]
    S: float
    L: float

    def __post_init__(self):
        gates = tuple(self.gates)
        boundaries = tuple(int(i) for i in self.module_boundaries)
        n = int(self.dimension)
        S = float(self.S)
        L = float(self.L)
        if not gates:
            raise ValueError("a chain network needs at least one module")
        if not np.isfinite(S) or S <= 0.0:
            raise ValueError("the carry weight S must be finite and positive")
        if not np.isfinite(L) or L < 0.0:
            raise ValueError("the input bound L must be finite and nonnegative")
        combiner_at = set(boundaries)
        if boundaries != tuple(sorted(combiner_at)) or len(combiner_at) != len(boundaries):
            raise ValueError("module boundaries must be strictly increasing indices")
        if any(i < 0 or i >= len(gates) for i in boundaries):
            raise ValueError("module boundaries must index into the gate sequence")
        if sum(isinstance(g, CombinerGate) for g in gates) != len(boundaries):
            raise ValueError("module boundaries must list every combiner gate")
        opens_module = True  # gate 0 starts module 1
        for i, gate in enumerate(gates):
            if isinstance(gate, CombinerGate):
                if i not in combiner_at:
                    raise ValueError(f"gate {i} is a combiner but not a module boundary")
                if opens_module:
                    raise ValueError("every module needs at least one cut gate")
                if gate.has_skip != (i != boundaries[0]):
                    raise ValueError(
                        "exactly the combiners after the first module carry a skip"
                    )
                opens_module = True
            else:
                if i in combiner_at:
                    raise ValueError(f"module boundary {i} must be a combiner gate")
                if gate.dimension != n:
                    raise DimensionMismatch(
                        f"gate {i} has dimension {gate.dimension}, network has {n}"
                    )
                if gate.has_carry == opens_module:
                    raise ValueError(
                        "a module's first cut gate has no carry; later ones must carry"
                    )
                opens_module = False
        if not isinstance(gates[-1], CombinerGate):
            raise ValueError("the last gate must be a combiner")
        object.__setattr__(self, "dimension", n)
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "module_boundaries", boundaries)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "L", L)

    @property
    def depth(self) -> int:
        """Number of layers; exactly one gate per layer."""
        return len(self.gates)

    @property
    def module_count(self) -> int:
        return len(self.module_boundaries)

    @property
    def cut_count(self) -> int:
        return self.depth - self.module_count

    @property
    def carry_dominates(self) -> bool:
        """Whether S exceeds the largest affine term reachable within L."""
        return self.S > float(np.sqrt(self.L * self.L + 1.0))

    def __eq__(self, other):
        if not isinstance(other, ChainNetwork):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.S == other.S
            and self.L == other.L
            and self.module_boundaries == other.module_boundaries
            and self.gates == other.gates
        )


@dataclass(frozen=True)
class ChainTrace:
    """Per-layer bits from one chain evaluation.

    ``bound_exceeded`` flags inputs with norm above the network's L, where
    the carry-dominance guarantee is void; evaluation still proceeds.
    """

    bits: tuple[int, ...]
    module_boundaries: tuple[int, ...]
    input_norm: float
    bound_exceeded: bool

    @property
    def combiner_bits(self) -> tuple[int, ...]:
        return tuple(self.bits[i] for i in self.module_boundaries)


@dataclass(frozen=True)
class ChainStats:
    depth: int
    module_count: int
    cut_count: int
    S: float
    L: float


def chain_or_module(cuts: Sequence[Cut], S: float) -> tuple[CutGate, ...]:
    """One carry-linked gate per cut, computing the disjunction of the cuts.

    The cuts are used exactly as given (no sign flip here) and must be
    normalized.  The first gate has no carry, so the run's semantics is
    self-contained: with S from :func:`choose_S` and inputs within the bound,
    gate i outputs 1 iff its own cut fires or any earlier gate fired, making
    the final bit the OR of all cut tests.
    """
    cuts = tuple(cuts)
    if not cuts:
        raise ValueError("a chain module needs at least one cut")
    if float(S) <= 0.0:
        raise ValueError("the carry weight S must be positive")
    return tuple(
        CutGate(c.homogeneous, has_carry=i > 0) for i, c in enumerate(cuts)
    )


def lower_to_chain(polytopes: Sequence[PolytopeSpec], L: float) -> ChainNetwork:
    """Lower polytopes to the equivalent one-gate-per-layer network.

    Each polytope contributes a run of gates over its sign-flipped cuts (a
    disjunction of negated cuts) plus one combiner that inverts the run and
    merges the previous module's result, so the final combiner's bit is the
    disjunction over polytopes of strict membership.  The polytopes' cuts
    must be normalized and oriented; agreement with the source network is
    guaranteed for inputs of norm at most ``L`` that do not lie exactly on a
    cut hyperplane.
    """
    polys = tuple(polytopes)
    if not polys:
        raise ValueError("at least one polytope is required")
    n = polys[0].dimension
    if any(p.dimension != n for p in polys):
        raise DimensionMismatch("all polytopes must share one dimension")
    S = choose_S(L)
    gates: list[ChainGate] = []
    boundaries: list[int] = []
    for j, poly in enumerate(polys):
        gates.extend(chain_or_module([c.flipped() for c in poly.cuts], S))
        boundaries.append(len(gates))
        gates.append(CombinerGate(has_skip=j > 0))
    return ChainNetwork(
        dimension=n,
        gates=tuple(gates),
        module_boundaries=tuple(boundaries),
        S=S,
        L=float(L),
    )


def _forward(net: ChainNetwork, h: np.ndarray, collect: bool):
    """Layer-by-layer pass over homogeneous inputs of shape (m, n + 1)."""
    m = len(h)
    prev = np.zeros(m)
    comb = np.zeros(m)
    trace = np.empty((net.depth, m), dtype=np.int8) if collect else None
    for i, gate in enumerate(net.gates):
        if isinstance(gate, CutGate):
            val = h @ gate.weights
            if gate.has_carry:
                val = val + net.S * prev
        else:
            val = -prev
            if gate.has_skip:
                val = val + net.S * comb
        bits = (val >= 0.0).astype(float)
        if isinstance(gate, CombinerGate):
            comb = bits
        prev = bits
        if collect:
            trace[i] = bits
    return prev.astype(np.int8), trace


def eval_chain(net: ChainNetwork, p) -> tuple[int, ChainTrace]:
    """Evaluate the network on one point, returning the bit and a full trace."""
    pt = _point(p, net.dimension)
    h = np.append(pt, 1.0)
    out, trace = _forward(net, h[np.newaxis, :], collect=True)
    norm = float(np.linalg.norm(pt))
    return int(out[0]), ChainTrace(
        bits=tuple(int(b) for b in trace[:, 0]),
        module_boundaries=net.module_boundaries,
        input_norm=norm,
        bound_exceeded=norm > net.L,
    )


def eval_chain_many(net: ChainNetwork, points, return_traces: bool = False):
    """Vectorized evaluation; returns output bits, plus a (depth, m) trace
    matrix when ``return_traces`` is set."""
    pts = _points(points, net.dimension)
    h = np.hstack([pts, np.ones((len(pts), 1))])
    out, trace = _forward(net, h, collect=return_traces)
    return (out, trace) if return_traces else out


def chain_stats(net: ChainNetwork) -> ChainStats:
    """Structural summary of a chain network."""
    return ChainStats(
        depth=net.depth,
        module_count=net.module_count,
        cut_count=net.cut_count,
        S=net.S,
        L=net.L,
    )
