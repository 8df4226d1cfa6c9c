"""File formats: CSV datasets, JSON network documents, JSON reports.

Documents serialize every real number through Python's shortest round-trip
decimal representation (at most 17 significant digits), so parsing a
serialized document reproduces the original bit for bit.  Keys are emitted
in sorted order, making serialization deterministic.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .chain_net import ChainNetwork, CombinerGate, CutGate
from .dnf_net import DnfNetwork, LogicGate
from .errors import (
    CutnetsError,
    DatasetFormatError,
    SchemaError,
    UnsupportedVersion,
)
from .geometry import Box, Cut, PolytopeSpec
from .synth import LabeledDataset, SynthesisResult
from .verify import EquivalenceReport

__all__ = [
    "FORMAT_VERSION",
    "NetworkSpecDocument",
    "document_from_synthesis",
    "parse_dataset_csv",
    "parse_networks",
    "serialize_networks",
    "serialize_report",
]

FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# CSV datasets


def parse_dataset_csv(text: str) -> LabeledDataset:
    """Parse a dataset from CSV with header ``x1,...,xn,label[,cluster]``.

    Labels must be 0 or 1; the optional cluster column holds an integer id on
    positive rows and is empty on negative rows.  Errors carry the 1-based
    line number of the offending row.
    """
    rows = list(csv.reader(io.StringIO(text)))
    rows = [(i + 1, row) for i, row in enumerate(rows) if any(cell.strip() for cell in row)]
    if not rows:
        raise DatasetFormatError("the file is empty")
    header_line, header = rows[0]
    header = [cell.strip() for cell in header]
    has_cluster = header[-1] == "cluster" if header else False
    coord_names = header[: -2 if has_cluster else -1]
    expected = [f"x{i + 1}" for i in range(len(coord_names))]
    label_pos = len(coord_names)
    if (
        not coord_names
        or coord_names != expected
        or len(header) <= label_pos
        or header[label_pos] != "label"
    ):
        raise DatasetFormatError(
            "header must be x1,...,xn,label with an optional trailing cluster column",
            line=header_line,
        )
    n = len(coord_names)
    points, labels, ids = [], [], []
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise DatasetFormatError(
                f"expected {len(header)} columns, found {len(row)}", line=line
            )
        try:
            coords = [float(cell) for cell in row[:n]]
        except ValueError:
            raise DatasetFormatError("coordinates must be numeric", line=line) from None
        label_cell = row[n].strip()
        if label_cell not in ("0", "1"):
            raise DatasetFormatError(
                f"label must be 0 or 1, got {label_cell!r}", line=line
            )
        cid = None
        if has_cluster:
            cid_cell = row[n + 1].strip()
            if cid_cell:
                try:
                    cid = int(cid_cell)
                except ValueError:
                    raise DatasetFormatError(
                        f"cluster id must be an integer, got {cid_cell!r}", line=line
                    ) from None
        points.append(coords)
        labels.append(int(label_cell))
        ids.append((line, cid))
    if not points:
        raise DatasetFormatError("the file has a header but no data rows")

    cluster_ids = None
    if has_cluster and any(cid is not None for _, cid in ids):
        for (line, cid), label in zip(ids, labels):
            if label == 1 and cid is None:
                raise DatasetFormatError(
                    "positive rows need a cluster id once any row has one", line=line
                )
            if label == 0 and cid is not None:
                raise DatasetFormatError(
                    "negative rows must leave the cluster column empty", line=line
                )
        cluster_ids = tuple(cid for _, cid in ids)
    return LabeledDataset(
        points=np.array(points), labels=np.array(labels), cluster_ids=cluster_ids
    )


# ---------------------------------------------------------------------------
# JSON network documents


@dataclass(frozen=True, eq=False)
class NetworkSpecDocument:
    """Serializable bundle: polytopes plus optionally both compiled networks.

    ``bounds`` records the region the polytopes were synthesized from; the
    verifier uses it to pick a default sampling box.
    """

    dimension: int
    polytopes: tuple[PolytopeSpec, ...]
    dnf: DnfNetwork | None = None
    chain: ChainNetwork | None = None
    bounds: Box | None = None
    version: int = FORMAT_VERSION

    def __post_init__(self):
        object.__setattr__(self, "polytopes", tuple(self.polytopes))
        if not self.polytopes:
            raise ValueError("a document needs at least one polytope")

    def __eq__(self, other):
        if not isinstance(other, NetworkSpecDocument):
            return NotImplemented
        return (
            self.version == other.version
            and self.dimension == other.dimension
            and self.polytopes == other.polytopes
            and self.dnf == other.dnf
            and self.chain == other.chain
            and self.bounds == other.bounds
        )


def document_from_synthesis(result: SynthesisResult, bounds: Box | None = None) -> NetworkSpecDocument:
    """Wrap a synthesis result for serialization."""
    return NetworkSpecDocument(
        dimension=result.dnf.dimension,
        polytopes=result.polytopes,
        dnf=result.dnf,
        chain=result.chain,
        bounds=bounds,
    )


def _floats(values) -> list[float]:
    return [float(v) for v in values]


def _cut_dict(cut: Cut) -> dict:
    return {"w": _floats(cut.w), "b": float(cut.b)}


def _gate_dict(gate: LogicGate) -> dict:
    return {"weights": _floats(gate.weights), "bias": float(gate.bias)}


def serialize_networks(doc: NetworkSpecDocument) -> str:
    """Render a document as deterministic, round-trip-exact JSON text."""
    payload: dict[str, Any] = {
        "format_version": doc.version,
        "dimension": doc.dimension,
        "polytopes": [
            {"cuts": [_cut_dict(c) for c in p.cuts]} for p in doc.polytopes
        ],
    }
    if doc.bounds is not None:
        payload["bounds"] = {
            "lower": _floats(doc.bounds.lower),
            "upper": _floats(doc.bounds.upper),
        }
    if doc.dnf is not None:
        payload["dnf"] = {
            "cut_layer": [_cut_dict(c) for c in doc.dnf.cut_layer],
            "cluster_extents": [list(e) for e in doc.dnf.cluster_extents],
            "and_layer": [_gate_dict(g) for g in doc.dnf.and_layer],
            "or_gate": _gate_dict(doc.dnf.or_gate),
        }
    if doc.chain is not None:
        gates = []
        for gate in doc.chain.gates:
            if isinstance(gate, CutGate):
                gates.append(
                    {
                        "kind": "cut",
                        "weights": _floats(gate.weights),
                        "has_carry": gate.has_carry,
                    }
                )
            else:
                gates.append({"kind": "combiner", "has_skip": gate.has_skip})
        payload["chain"] = {
            "S": float(doc.chain.S),
            "L": float(doc.chain.L),
            "module_boundaries": list(doc.chain.module_boundaries),
            "gates": gates,
        }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _require(obj: dict, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(f"{path}.{key}" if path else key)
    return obj[key]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, "expected a number")
    return float(value)


def _number_list(value, path: str) -> list[float]:
    if not isinstance(value, list) or not value:
        raise SchemaError(path, "expected a nonempty array of numbers")
    return [_number(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(path, "expected an integer")
    return value


def _bool(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise SchemaError(path, "expected a boolean")
    return value


def _parse_cut(obj, path: str) -> Cut:
    w = _number_list(_require(obj, "w", path), f"{path}.w")
    b = _number(_require(obj, "b", path), f"{path}.b")
    return Cut(np.array(w), b)


def _parse_gate(obj, path: str) -> LogicGate:
    weights = _number_list(_require(obj, "weights", path), f"{path}.weights")
    bias = _number(_require(obj, "bias", path), f"{path}.bias")
    return LogicGate(np.array(weights), bias)


def _wrap_value_error(build, path: str):
    try:
        return build()
    except (ValueError, TypeError, CutnetsError) as exc:
        raise SchemaError(path, str(exc)) from exc


def parse_networks(text: str) -> NetworkSpecDocument:
    """Parse JSON text back into a document, validating structure.

    Raises :class:`UnsupportedVersion` for unknown format versions and
    :class:`SchemaError` (naming the field path) for structural violations.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise SchemaError("$", "the document must be a JSON object")
    version = _require(data, "format_version", "")
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(
            f"format version {version!r} is not supported (expected {FORMAT_VERSION})"
        )
    dimension = _int(_require(data, "dimension", ""), "dimension")
    polys_raw = _require(data, "polytopes", "")
    if not isinstance(polys_raw, list) or not polys_raw:
        raise SchemaError("polytopes", "expected a nonempty array")
    polytopes = []
    for i, poly_obj in enumerate(polys_raw):
        path = f"polytopes[{i}]"
        cuts_raw = _require(poly_obj, "cuts", path)
        if not isinstance(cuts_raw, list) or not cuts_raw:
            raise SchemaError(f"{path}.cuts", "expected a nonempty array")
        cuts = tuple(
            _parse_cut(c, f"{path}.cuts[{j}]") for j, c in enumerate(cuts_raw)
        )
        polytopes.append(
            _wrap_value_error(lambda c=cuts: PolytopeSpec(c, dimension), path)
        )

    bounds = None
    if "bounds" in data:
        lower = _number_list(_require(data["bounds"], "lower", "bounds"), "bounds.lower")
        upper = _number_list(_require(data["bounds"], "upper", "bounds"), "bounds.upper")
        bounds = _wrap_value_error(
            lambda: Box(np.array(lower), np.array(upper)), "bounds"
        )

    dnf = None
    if "dnf" in data:
        section = data["dnf"]
        cut_layer = tuple(
            _parse_cut(c, f"dnf.cut_layer[{i}]")
            for i, c in enumerate(_require(section, "cut_layer", "dnf"))
        )
        extents_raw = _require(section, "cluster_extents", "dnf")
        if not isinstance(extents_raw, list):
            raise SchemaError("dnf.cluster_extents", "expected an array")
        extents = []
        for i, pair in enumerate(extents_raw):
            path = f"dnf.cluster_extents[{i}]"
            if not isinstance(pair, list) or len(pair) != 2:
                raise SchemaError(path, "expected a [start, stop] pair")
            extents.append((_int(pair[0], path), _int(pair[1], path)))
        and_layer = tuple(
            _parse_gate(g, f"dnf.and_layer[{i}]")
            for i, g in enumerate(_require(section, "and_layer", "dnf"))
        )
        or_gate = _parse_gate(_require(section, "or_gate", "dnf"), "dnf.or_gate")
        dnf = _wrap_value_error(
            lambda: DnfNetwork(
                dimension=dimension,
                cut_layer=cut_layer,
                and_layer=and_layer,
                or_gate=or_gate,
                cluster_extents=tuple(extents),
            ),
            "dnf",
        )

    chain = None
    if "chain" in data:
        section = data["chain"]
        S = _number(_require(section, "S", "chain"), "chain.S")
        L = _number(_require(section, "L", "chain"), "chain.L")
        boundaries = tuple(
            _int(v, f"chain.module_boundaries[{i}]")
            for i, v in enumerate(_require(section, "module_boundaries", "chain"))
        )
        gates_raw = _require(section, "gates", "chain")
        if not isinstance(gates_raw, list) or not gates_raw:
            raise SchemaError("chain.gates", "expected a nonempty array")
        gates: list = []
        for i, gate_obj in enumerate(gates_raw):
            path = f"chain.gates[{i}]"
            kind = _require(gate_obj, "kind", path)
            if kind == "cut":
                weights = _number_list(
                    _require(gate_obj, "weights", path), f"{path}.weights"
                )
                has_carry = _bool(_require(gate_obj, "has_carry", path), f"{path}.has_carry")
                gates.append(
                    _wrap_value_error(
                        lambda w=weights, c=has_carry: CutGate(np.array(w), c), path
                    )
                )
            elif kind == "combiner":
                gates.append(
                    CombinerGate(_bool(_require(gate_obj, "has_skip", path), f"{path}.has_skip"))
                )
            else:
                raise SchemaError(f"{path}.kind", f"unknown gate kind {kind!r}")
        chain = _wrap_value_error(
            lambda: ChainNetwork(
                dimension=dimension,
                gates=tuple(gates),
                module_boundaries=boundaries,
                S=S,
                L=L,
            ),
            "chain",
        )

    return NetworkSpecDocument(
        dimension=dimension,
        polytopes=tuple(polytopes),
        dnf=dnf,
        chain=chain,
        bounds=bounds,
        version=version,
    )


# ---------------------------------------------------------------------------
# Equivalence reports


def serialize_report(report: EquivalenceReport) -> str:
    """Render an equivalence report as deterministic JSON text."""
    payload = {
        "format_version": FORMAT_VERSION,
        "points_tested": report.points_tested,
        "agreements": report.agreements,
        "epsilon": report.epsilon,
        "seed": report.seed,
        "prng": report.prng,
        "passed": report.passed,
        "disagreements": [
            {
                "point": _floats(d.point),
                "dnf_bit": d.dnf_bit,
                "chain_bit": d.chain_bit,
                "boundary_distance": d.boundary_distance,
            }
            for d in report.disagreements
        ],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"
