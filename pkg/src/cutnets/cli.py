"""Command-line interface over the synthesis, lowering and verification pipeline.

Exit codes: 0 on success, 1 when separation or equivalence fails (or a file
cannot be processed), 2 on usage errors.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .chain_net import chain_stats, eval_chain, eval_chain_many, lower_to_chain
from .dnf_net import build_dnf, eval_dnf, eval_dnf_many
from .errors import CutnetsError, InputBoundExceeded
from .formats import (
    NetworkSpecDocument,
    document_from_synthesis,
    parse_dataset_csv,
    parse_networks,
    serialize_networks,
    serialize_report,
)
from .geometry import Box
from .render import render_decision_map
from .synth import synthesize
from .verify import check_equivalence, default_epsilon, sample_points


def _parse_point(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated point: {text!r}")


def _parse_box(text: str) -> Box:
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("expected --box x0,y0,x1,y1")
    try:
        x0, y0, x1, y1 = (float(v) for v in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a numeric box: {text!r}")
    return Box(np.array([x0, y0]), np.array([x1, y1]))


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected --size WxH, got {text!r}")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cutnets",
        description="Polytope-enclosure classifiers: synthesize, lower, verify, render.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="dataset CSV -> polytopes and both networks")
    p_synth.add_argument("--data", required=True, help="dataset CSV file")
    p_synth.add_argument("--margin", type=float, default=None,
                         help="enclosure margin (default: 1%% of the data diagonal)")
    p_synth.add_argument("--out", required=True, help="output network JSON file")

    p_lower = sub.add_parser("lower", help="rebuild the chain network from the polytopes")
    p_lower.add_argument("--spec", required=True, help="network JSON file")
    p_lower.add_argument("--bound", type=float, default=None,
                         help="input-norm bound L (default: the stored chain's L)")
    p_lower.add_argument("--out", required=True, help="output network JSON file")

    p_eval = sub.add_parser("eval", help="evaluate one network on one point")
    p_eval.add_argument("--spec", required=True)
    p_eval.add_argument("--net", required=True, choices=("dnf", "chain"))
    p_eval.add_argument("--point", required=True, type=_parse_point)
    p_eval.add_argument("--trace", action="store_true", help="also print per-layer bits")

    p_verify = sub.add_parser("verify", help="differential equivalence check")
    p_verify.add_argument("--spec", required=True)
    p_verify.add_argument("--samples", type=int, default=100_000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--epsilon", type=float, default=None,
                          help="boundary-exclusion radius (default: 1e-9 x box diagonal)")
    p_verify.add_argument("--mode", choices=("uniform", "grid"), default="uniform")
    p_verify.add_argument("--box", type=_parse_box, default=None,
                          help="sampling box (default: stored bounds, clipped to the input bound)")
    p_verify.add_argument("--report", default=None, help="write the report JSON here")

    p_render = sub.add_parser("render", help="rasterize decision regions to PPM")
    p_render.add_argument("--spec", required=True)
    p_render.add_argument("--net", required=True, choices=("dnf", "chain", "diff"))
    p_render.add_argument("--box", required=True, type=_parse_box)
    p_render.add_argument("--size", required=True, type=_parse_size)
    p_render.add_argument("--out", required=True, help="output PPM file")

    return parser


def _load_document(path: str) -> NetworkSpecDocument:
    return parse_networks(Path(path).read_text(encoding="utf-8"))


def _document_dnf(doc: NetworkSpecDocument):
    # The DNF network is fully determined by the polytopes, so rebuild it
    # when a document carries only those.
    return doc.dnf if doc.dnf is not None else build_dnf(doc.polytopes)


def _document_chain(doc: NetworkSpecDocument):
    if doc.chain is None:
        raise CutnetsError(
            "the document has no chain network; run `cutnets lower` first"
        )
    return doc.chain


def _cmd_synth(args) -> int:
    dataset = parse_dataset_csv(Path(args.data).read_text(encoding="utf-8"))
    result = synthesize(dataset, margin=args.margin)
    doc = document_from_synthesis(result, bounds=dataset.bbox)
    Path(args.out).write_text(serialize_networks(doc), encoding="utf-8")
    stats = chain_stats(result.chain)
    print(f"polytopes: {len(result.polytopes)}")
    print(f"cuts: {stats.cut_count}")
    print(f"dnf layers: {'/'.join(map(str, result.dnf.layer_sizes))}")
    print(f"chain depth: {stats.depth}")
    print(f"accuracy dnf: {result.train_accuracy_dnf}")
    print(f"accuracy chain: {result.train_accuracy_chain}")
    return 0


def _cmd_lower(args) -> int:
    doc = _load_document(args.spec)
    if args.bound is not None:
        L = args.bound
    elif doc.chain is not None:
        L = doc.chain.L
    else:
        print("error: no --bound given and the document stores no chain", file=sys.stderr)
        return 2
    chain = lower_to_chain(doc.polytopes, L)
    out = NetworkSpecDocument(
        dimension=doc.dimension,
        polytopes=doc.polytopes,
        dnf=doc.dnf,
        chain=chain,
        bounds=doc.bounds,
    )
    Path(args.out).write_text(serialize_networks(out), encoding="utf-8")
    stats = chain_stats(chain)
    print(f"chain depth: {stats.depth}")
    print(f"modules: {stats.module_count}")
    print(f"S: {stats.S}")
    print(f"L: {stats.L}")
    return 0


def _cmd_eval(args) -> int:
    doc = _load_document(args.spec)
    if args.net == "dnf":
        bit, trace = eval_dnf(_document_dnf(doc), args.point)
        if args.trace:
            print("cuts:", " ".join(map(str, trace.cut_bits)))
            print("ands:", " ".join(map(str, trace.and_bits)))
            print("or:", trace.output)
    else:
        bit, trace = eval_chain(_document_chain(doc), args.point)
        if trace.bound_exceeded:
            print(
                f"note: |x| = {trace.input_norm:.6g} exceeds the bound "
                f"L = {doc.chain.L:.6g}; the carry guarantee is void",
                file=sys.stderr,
            )
        if args.trace:
            print("layers:", " ".join(map(str, trace.bits)))
    print(bit)
    return 0


def _default_verify_box(doc: NetworkSpecDocument) -> Box:
    """Stored bounds clipped to the cube inscribed in the L-ball."""
    chain = doc.chain
    n = chain.dimension
    half = chain.L / np.sqrt(n)
    if doc.bounds is not None:
        lo = np.maximum(doc.bounds.lower, -half)
        hi = np.minimum(doc.bounds.upper, half)
        if np.all(hi > lo):
            return Box(lo, hi)
    return Box(np.full(n, -half), np.full(n, half))


def _cmd_verify(args) -> int:
    doc = _load_document(args.spec)
    dnf = _document_dnf(doc)
    chain = _document_chain(doc)
    if not chain.carry_dominates:
        print(
            f"note: S = {chain.S:.6g} does not dominate the input bound "
            f"L = {chain.L:.6g}; expect disagreements",
            file=sys.stderr,
        )
    box = args.box if args.box is not None else _default_verify_box(doc)
    corner_norms = np.linalg.norm(box.corners, axis=1)
    if corner_norms.max() > chain.L:
        raise InputBoundExceeded(
            f"the sampling box reaches norm {corner_norms.max():.6g}, above L = {chain.L:.6g}"
        )
    epsilon = args.epsilon if args.epsilon is not None else default_epsilon(box)
    points = sample_points(box, args.samples, seed=args.seed, mode=args.mode)
    report = check_equivalence(dnf, chain, doc.polytopes, points, epsilon, seed=args.seed)
    if args.report is not None:
        Path(args.report).write_text(serialize_report(report), encoding="utf-8")
    print(f"points: {report.points_tested}")
    print(f"agreements: {report.agreements}")
    print(f"disagreements: {len(report.disagreements)}")
    print(f"beyond epsilon: {len(report.beyond_epsilon)}")
    print(f"passed: {report.passed}")
    return 0 if report.passed else 1


def _cmd_render(args) -> int:
    doc = _load_document(args.spec)
    if args.net == "dnf":
        dnf = _document_dnf(doc)
        evaluators = [lambda pts: eval_dnf_many(dnf, pts)]
    elif args.net == "chain":
        chain = _document_chain(doc)
        evaluators = [lambda pts: eval_chain_many(chain, pts)]
    else:
        dnf = _document_dnf(doc)
        chain = _document_chain(doc)
        evaluators = [
            lambda pts: eval_dnf_many(dnf, pts),
            lambda pts: eval_chain_many(chain, pts),
        ]
    width, height = args.size
    Path(args.out).write_bytes(render_decision_map(evaluators, args.box, width, height))
    print(f"wrote {args.out} ({width}x{height})")
    return 0


_COMMANDS = {
    "synth": _cmd_synth,
    "lower": _cmd_lower,
    "eval": _cmd_eval,
    "verify": _cmd_verify,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (CutnetsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # Flag values that survived parsing but fail domain validation.
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
