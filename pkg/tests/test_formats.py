"""CSV parsing, JSON document round trips, schema errors, report output."""

import json

import numpy as np
import pytest

from cutnets import (
    Box,
    DatasetFormatError,
    NetworkSpecDocument,
    SchemaError,
    UnsupportedVersion,
    check_equivalence,
    document_from_synthesis,
    parse_dataset_csv,
    parse_networks,
    sample_points,
    serialize_networks,
    serialize_report,
    synthesize,
)
from cutnets.datasets import three_blobs


class TestParseDatasetCsv:
    def test_basic_two_points(self):
        ds = parse_dataset_csv("x1,x2,label\n0,0,1\n5,5,0\n")
        assert ds.points.tolist() == [[0, 0], [5, 5]]
        assert ds.labels.tolist() == [1, 0]
        assert ds.cluster_ids is None

    def test_cluster_column(self):
        ds = parse_dataset_csv("x1,x2,label,cluster\n0,0,1,1\n5,5,0,\n")
        assert ds.cluster_ids == (1, None)

    def test_label_out_of_range(self):
        with pytest.raises(DatasetFormatError) as exc:
            parse_dataset_csv("x1,x2,label\n0,0,1\n1,1,2\n")
        assert exc.value.line == 3

    def test_inconsistent_columns(self):
        with pytest.raises(DatasetFormatError) as exc:
            parse_dataset_csv("x1,x2,label\n0,0,1\n1,1\n")
        assert exc.value.line == 3

    def test_bad_header(self):
        with pytest.raises(DatasetFormatError):
            parse_dataset_csv("a,b,label\n0,0,1\n")

    def test_non_numeric_coordinate(self):
        with pytest.raises(DatasetFormatError) as exc:
            parse_dataset_csv("x1,x2,label\noops,0,1\n")
        assert exc.value.line == 2

    def test_positive_missing_id(self):
        with pytest.raises(DatasetFormatError) as exc:
            parse_dataset_csv("x1,x2,label,cluster\n0,0,1,1\n2,2,1,\n")
        assert exc.value.line == 3

    def test_three_dimensional(self):
        ds = parse_dataset_csv("x1,x2,x3,label\n1,2,3,1\n4,5,6,0\n")
        assert ds.dimension == 3


@pytest.fixture(scope="module")
def synthesized_doc():
    ds = three_blobs(points_per_blob=10, background=60)
    result = synthesize(ds)
    return document_from_synthesis(result, bounds=ds.bbox)


class TestNetworkDocumentRoundTrip:
    def test_round_trip_identity(self, synthesized_doc):
        text = serialize_networks(synthesized_doc)
        parsed = parse_networks(text)
        assert parsed == synthesized_doc
        assert serialize_networks(parsed) == text

    def test_serialization_is_deterministic(self, synthesized_doc):
        assert serialize_networks(synthesized_doc) == serialize_networks(synthesized_doc)

    def test_floats_survive_exactly(self, synthesized_doc):
        parsed = parse_networks(serialize_networks(synthesized_doc))
        for a, b in zip(parsed.polytopes, synthesized_doc.polytopes):
            for ca, cb in zip(a.cuts, b.cuts):
                assert ca.b == cb.b and np.array_equal(ca.w, cb.w)
        assert parsed.chain.S == synthesized_doc.chain.S
        assert parsed.chain.L == synthesized_doc.chain.L

    def test_polytopes_only_document(self, synthesized_doc):
        doc = NetworkSpecDocument(
            dimension=2, polytopes=synthesized_doc.polytopes
        )
        parsed = parse_networks(serialize_networks(doc))
        assert parsed == doc and parsed.dnf is None and parsed.chain is None


class TestSchemaValidation:
    def test_unsupported_version(self, synthesized_doc):
        data = json.loads(serialize_networks(synthesized_doc))
        data["format_version"] = 2
        with pytest.raises(UnsupportedVersion):
            parse_networks(json.dumps(data))
        data["format_version"] = "2"
        with pytest.raises(UnsupportedVersion):
            parse_networks(json.dumps(data))

    def test_missing_chain_s_names_the_path(self, synthesized_doc):
        data = json.loads(serialize_networks(synthesized_doc))
        del data["chain"]["S"]
        with pytest.raises(SchemaError) as exc:
            parse_networks(json.dumps(data))
        assert exc.value.path == "chain.S"

    def test_missing_version(self):
        with pytest.raises(SchemaError) as exc:
            parse_networks("{}")
        assert exc.value.path == "format_version"

    def test_bad_gate_kind(self, synthesized_doc):
        data = json.loads(serialize_networks(synthesized_doc))
        data["chain"]["gates"][0]["kind"] = "mystery"
        with pytest.raises(SchemaError) as exc:
            parse_networks(json.dumps(data))
        assert "kind" in exc.value.path

    def test_invalid_json(self):
        with pytest.raises(SchemaError):
            parse_networks("not json at all")

    def test_structurally_inconsistent_chain(self, synthesized_doc):
        data = json.loads(serialize_networks(synthesized_doc))
        data["chain"]["module_boundaries"] = [0]
        with pytest.raises(SchemaError) as exc:
            parse_networks(json.dumps(data))
        assert exc.value.path == "chain"

    def test_corrupted_s_still_parses(self, synthesized_doc):
        # Mis-sized carry weights must load so their failure can be observed.
        data = json.loads(serialize_networks(synthesized_doc))
        data["chain"]["S"] = 0.5
        parsed = parse_networks(json.dumps(data))
        assert parsed.chain.S == 0.5 and not parsed.chain.carry_dominates


class TestReportSerialization:
    def test_deterministic_and_complete(self, synthesized_doc):
        half = synthesized_doc.chain.L / np.sqrt(2.0) * 0.999
        pts = sample_points(Box(np.array([-half, -half]), np.array([half, half])), 2_000, seed=5)
        report = check_equivalence(
            synthesized_doc.dnf,
            synthesized_doc.chain,
            synthesized_doc.polytopes,
            pts,
            1e-9,
            seed=5,
        )
        text = serialize_report(report)
        assert text == serialize_report(report)
        data = json.loads(text)
        assert data["points_tested"] == 2_000
        assert data["agreements"] + len(data["disagreements"]) == 2_000
        assert data["seed"] == 5
        assert data["prng"] == "numpy-philox4x64"
        assert data["passed"] is True
