"""Sampling, boundary attribution, and the differential equivalence checker."""

from types import SimpleNamespace

import numpy as np
import pytest

from cutnets import (
    Box,
    Cut,
    InputBoundExceeded,
    LabeledDataset,
    LogicGate,
    PolytopeSpec,
    accuracy,
    boundary_distance,
    brute_force_gate_check,
    build_dnf,
    check_equivalence,
    default_epsilon,
    input_bound,
    lower_to_chain,
    make_and_gate,
    make_or_gate,
    normalize_cut,
    sample_points,
)
from cutnets.errors import EmptyDataset
from conftest import random_geometry


class TestSamplePoints:
    def test_grid_corners(self):
        box = Box(np.array([0.0, 0.0]), np.array([1.0, 1.0]))
        pts = sample_points(box, 4, mode="grid")
        assert sorted(map(tuple, pts)) == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_grid_lattice_size_uses_integer_root(self):
        box = Box(np.array([0.0, 0.0, 0.0]), np.array([1.0, 1.0, 1.0]))
        assert len(sample_points(box, 8, mode="grid")) == 8  # 2 per axis, not 3
        assert len(sample_points(box, 9, mode="grid")) == 27

    def test_uniform_is_deterministic_and_contained(self, box10):
        a = sample_points(box10, 1_000, seed=9, mode="uniform")
        b = sample_points(box10, 1_000, seed=9, mode="uniform")
        assert np.array_equal(a, b)
        assert box10.contains(a).all()
        c = sample_points(box10, 1_000, seed=10, mode="uniform")
        assert not np.array_equal(a, c)

    def test_degenerate_box_and_bad_mode(self):
        flat = Box(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
        with pytest.raises(ValueError):
            sample_points(flat, 10)
        with pytest.raises(ValueError):
            sample_points(Box(np.zeros(2), np.ones(2)), 10, mode="sobol")


class TestBoundaryDistance:
    def test_distance_to_axis(self):
        poly = PolytopeSpec((normalize_cut(Cut(np.array([1.0, 0.0]), 0.0)),), 2)
        assert boundary_distance([poly], (0.5, 9.0)) == pytest.approx(0.5)
        assert boundary_distance([poly], (0.0, 3.0)) == 0.0

    def test_minimum_over_cuts(self):
        poly = PolytopeSpec(
            (
                normalize_cut(Cut(np.array([1.0, 0.0]), 0.0)),
                normalize_cut(Cut(np.array([0.0, 1.0]), 0.0)),
            ),
            2,
        )
        assert boundary_distance([poly], (0.3, 0.2)) == pytest.approx(0.2)

    def test_invariant_under_joint_rescaling(self):
        rng = np.random.Generator(np.random.Philox(41))
        for _ in range(100):
            w = rng.normal(size=2)
            b = float(rng.normal())
            p = rng.uniform(-5, 5, 2)
            reference = abs(w @ p + b) / np.linalg.norm(w)
            poly = PolytopeSpec((normalize_cut(Cut(w, b)),), 2)
            assert boundary_distance([poly], p) == pytest.approx(reference)


class TestCheckEquivalence:
    def build(self, rng, bound):
        polys = random_geometry(rng)
        return polys, build_dnf(polys), lower_to_chain(polys, bound)

    def test_no_disagreement_beyond_epsilon(self, box10, bound10):
        rng = np.random.Generator(np.random.Philox(42))
        polys, dnf, chain = self.build(rng, bound10)
        points = sample_points(box10, 100_000, seed=1)
        report = check_equivalence(
            dnf, chain, polys, points, default_epsilon(box10), seed=1
        )
        assert report.points_tested == 100_000
        assert report.agreements + len(report.disagreements) == 100_000
        assert report.passed and report.beyond_epsilon == ()

    def test_boundary_point_disagrees_at_distance_zero(self, unit_square, bound10):
        dnf = build_dnf([unit_square])
        chain = lower_to_chain([unit_square], bound10)
        edge_point = np.array([[0.0, 0.5]])
        report = check_equivalence(dnf, chain, [unit_square], edge_point, 1e-9)
        assert len(report.disagreements) == 1
        d = report.disagreements[0]
        assert (d.dnf_bit, d.chain_bit) == (1, 0)
        assert d.boundary_distance == 0.0
        assert report.passed  # a distance-0 tie is within any epsilon

    def test_lattice_ties_all_attributed_to_boundaries(self):
        from cutnets import box_cuts

        # Integer-lattice sampling over integer-cornered boxes lands many
        # points exactly on cut hyperplanes; every disagreement must be an
        # exact distance-0 tie, so the report still passes.
        a = box_cuts((0, 0), (4, 4))
        b = box_cuts((2, 2), (6, 6))
        box = Box(np.array([-1.0, -1.0]), np.array([7.0, 7.0]))
        bound = input_bound(box.corners)
        dnf = build_dnf([a, b])
        chain = lower_to_chain([a, b], bound)
        pts = sample_points(box, 81, mode="grid")
        report = check_equivalence(dnf, chain, [a, b], pts, default_epsilon(box))
        assert len(report.disagreements) > 0
        assert all(d.boundary_distance == 0.0 for d in report.disagreements)
        assert all(
            (d.dnf_bit, d.chain_bit) == (1, 0) for d in report.disagreements
        )
        assert report.passed

    def test_determinism(self, box10, bound10):
        rng = np.random.Generator(np.random.Philox(43))
        polys, dnf, chain = self.build(rng, bound10)
        pts = sample_points(box10, 5_000, seed=7)
        r1 = check_equivalence(dnf, chain, polys, pts, 1e-9, seed=7)
        r2 = check_equivalence(dnf, chain, polys, pts, 1e-9, seed=7)
        assert r1 == r2

    def test_rejects_points_beyond_bound(self, unit_square):
        dnf = build_dnf([unit_square])
        chain = lower_to_chain([unit_square], L=1.0)
        with pytest.raises(InputBoundExceeded):
            check_equivalence(dnf, chain, [unit_square], np.array([[5.0, 0.0]]), 1e-9)

    def test_corrupt_carry_weight_fails_loudly(self, box10, bound10):
        from cutnets import ChainNetwork

        rng = np.random.Generator(np.random.Philox(44))
        polys, dnf, chain = self.build(rng, bound10)
        weak = ChainNetwork(2, chain.gates, chain.module_boundaries, 0.5, chain.L)
        pts = sample_points(box10, 20_000, seed=3)
        report = check_equivalence(dnf, weak, polys, pts, default_epsilon(box10), seed=3)
        assert not report.passed
        assert len(report.beyond_epsilon) > 0


class TestBruteForceGateCheck:
    def test_canonical_gates_pass(self):
        assert brute_force_gate_check(make_and_gate(2), 2, "conjunction").passed
        assert brute_force_gate_check(make_or_gate(3), 3, "disjunction").passed
        from cutnets import make_not_gate

        assert brute_force_gate_check(make_not_gate(), 1, "negation").passed

    def test_counterexample_reported(self):
        bad = LogicGate(np.array([1.0, 1.0]), -2.5)
        result = brute_force_gate_check(bad, 2, "conjunction")
        assert not result.passed
        assert result.counterexample == (1, 1)
        assert (result.got, result.expected) == (0, 1)

    def test_arity_limit(self):
        with pytest.raises(ValueError):
            brute_force_gate_check(make_and_gate(21), 21, "conjunction")

    def test_exhaustiveness(self):
        # A gate that looks like OR except when the last input is set.
        trick = LogicGate(np.array([1.0, 1.0, 1.0, -3.0]), -0.5)
        result = brute_force_gate_check(trick, 4, "disjunction")
        assert not result.passed
        assert result.counterexample is not None


class TestAccuracy:
    def test_perfect_and_zero(self):
        dataset = LabeledDataset(
            points=np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0]]),
            labels=np.array([1, 0, 1]),
        )
        assert accuracy(lambda pts: dataset.labels, dataset) == 1.0
        ones = LabeledDataset(points=dataset.points, labels=np.array([1, 1, 1]))
        assert accuracy(lambda pts: np.zeros(len(pts), dtype=int), ones) == 0.0

    def test_fractional(self):
        dataset = LabeledDataset(
            points=np.zeros((4, 2)), labels=np.array([1, 1, 0, 0])
        )
        assert accuracy(lambda pts: np.array([1, 0, 0, 0]), dataset) == 0.75

    def test_empty_dataset(self):
        # Any object with points and labels will do; an empty one is rejected.
        empty = SimpleNamespace(points=np.zeros((0, 2)), labels=np.zeros(0, dtype=int))
        with pytest.raises(EmptyDataset):
            accuracy(lambda pts: np.zeros(0), empty)
