"""Logic gates and the three-layer cut/AND/OR network."""

import itertools

import numpy as np
import pytest

from cutnets import (
    Cut,
    DimensionMismatch,
    bounding_box_cuts,
    build_dnf,
    convex_hull_cuts,
    eval_dnf,
    eval_dnf_many,
    make_and_gate,
    make_not_gate,
    make_or_gate,
    normalize_cut,
    point_in_polytope,
)
from conftest import membership_oracle, random_geometry


def axis_polytope(bx: float, by: float):
    """Two-cut polytope x >= -bx and y >= -by (unbounded quadrant)."""
    from cutnets import PolytopeSpec

    cuts = (
        normalize_cut(Cut(np.array([1.0, 0.0]), bx)),
        normalize_cut(Cut(np.array([0.0, 1.0]), by)),
    )
    return PolytopeSpec(cuts, 2)


class TestGates:
    def test_and_gate_weights(self):
        gate = make_and_gate(2)
        assert gate.weights.tolist() == [1.0, 1.0] and gate.bias == -1.5
        assert make_and_gate(3).bias == -2.5

    def test_and_gate_truth_tables(self):
        for k in range(1, 11):
            gate = make_and_gate(k)
            for bits in itertools.product((0, 1), repeat=k):
                assert gate.fire(bits) == int(all(bits)), (k, bits)

    def test_or_gate_truth_tables(self):
        for k in range(1, 11):
            gate = make_or_gate(k)
            assert gate.bias == -0.5
            for bits in itertools.product((0, 1), repeat=k):
                assert gate.fire(bits) == int(any(bits)), (k, bits)

    def test_or_gate_nine_inputs(self):
        gate = make_or_gate(9)
        assert gate.fire([0] * 9) == 0
        for i in range(9):
            one_hot = [0] * 9
            one_hot[i] = 1
            assert gate.fire(one_hot) == 1

    def test_single_input_gates_are_identity(self):
        for gate in (make_and_gate(1), make_or_gate(1)):
            assert gate.fire([0]) == 0 and gate.fire([1]) == 1

    def test_not_gate(self):
        inv = make_not_gate()
        assert inv.weights.tolist() == [-1.0] and inv.bias == 0.0
        assert inv.fire([0]) == 1 and inv.fire([1]) == 0
        for bit in (0, 1):
            assert inv.fire([inv.fire([bit])]) == bit

    def test_rejects_zero_arity(self):
        with pytest.raises(ValueError):
            make_and_gate(0)
        with pytest.raises(ValueError):
            make_or_gate(0)


def build_4_3_2():
    square = convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)
    triangle = convex_hull_cuts([(3, 0), (5, 0), (3, 2)], margin=0.0)
    quadrant = axis_polytope(8.0, 8.0)
    return [square, triangle, quadrant]


class TestBuildDnf:
    def test_layer_sizes_9_3_1(self):
        net = build_dnf(build_4_3_2())
        assert net.layer_sizes == (9, 3, 1)
        assert net.cluster_extents == ((0, 4), (4, 7), (7, 9))

    def test_single_polytope(self):
        tri = convex_hull_cuts([(0, 0), (2, 0), (0, 2)], margin=0.0)
        assert build_dnf([tri]).layer_sizes == (3, 1, 1)

    def test_and_gate_weight_placement(self):
        net = build_dnf(build_4_3_2())
        gate = net.and_layer[1]  # middle polytope: cut indices 4..6
        assert gate.weights.tolist() == [0, 0, 0, 0, 1, 1, 1, 0, 0]
        assert gate.bias == -2.5

    def test_cuts_are_not_shared(self):
        square = convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0)
        net = build_dnf([square, square])
        assert net.layer_sizes == (8, 2, 1)
        assert net.cut_layer[:4] == net.cut_layer[4:]  # duplicated, not shared

    def test_rejects_empty_and_mixed_dimension(self):
        with pytest.raises(ValueError):
            build_dnf([])
        with pytest.raises(DimensionMismatch):
            build_dnf([bounding_box_cuts((0, 0), 1.0), bounding_box_cuts((0, 0, 0), 1.0)])


class TestEvalDnf:
    def test_trace_identifies_the_polytope(self):
        net = build_dnf(build_4_3_2())
        polys = build_4_3_2()
        # Inside the triangle only: quadrant excluded by probing x < -8.
        probe = (3.5, 0.5)
        assert [point_in_polytope(p, probe) for p in polys] == [0, 1, 1]
        bit, trace = eval_dnf(net, probe)
        assert bit == 1 and trace.and_bits == (0, 1, 1)

    def test_outside_everything(self):
        polys = [
            convex_hull_cuts([(0, 0), (1, 0), (1, 1), (0, 1)], margin=0.0),
            convex_hull_cuts([(3, 0), (5, 0), (3, 2)], margin=0.0),
        ]
        net = build_dnf(polys)
        bit, trace = eval_dnf(net, (-4, -4))
        assert bit == 0 and trace.and_bits == (0, 0)

    def test_inside_two_overlapping(self):
        a = convex_hull_cuts([(0, 0), (2, 0), (2, 2), (0, 2)], margin=0.0)
        b = convex_hull_cuts([(1, 1), (3, 1), (3, 3), (1, 3)], margin=0.0)
        bit, trace = eval_dnf(build_dnf([a, b]), (1.5, 1.5))
        assert bit == 1 and trace.and_bits == (1, 1)

    def test_matches_membership_oracle(self):
        rng = np.random.Generator(np.random.Philox(21))
        for _ in range(12):
            polys = random_geometry(rng)
            net = build_dnf(polys)
            points = rng.uniform(-10, 10, size=(10_000, 2))
            assert np.array_equal(
                eval_dnf_many(net, points), membership_oracle(polys, points)
            )

    def test_scalar_and_batch_agree(self):
        rng = np.random.Generator(np.random.Philox(22))
        polys = random_geometry(rng)
        net = build_dnf(polys)
        points = rng.uniform(-10, 10, size=(50, 2))
        batch = eval_dnf_many(net, points)
        for p, expected in zip(points, batch):
            bit, trace = eval_dnf(net, p)
            assert bit == expected and trace.output == expected

    def test_dimension_mismatch(self):
        net = build_dnf([bounding_box_cuts((0, 0), 1.0)])
        with pytest.raises(DimensionMismatch):
            eval_dnf(net, (1, 2, 3))
