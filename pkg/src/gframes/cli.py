"""Command-line interface: JSON reports on stdout, diagnostics on stderr.

Exit codes: 0 on success (including in-band "not a reconstruction system"
findings), 2 for usage or parse problems, 3 when a numerical precondition
fails.  Block indices on ``--mask``/``--drop`` are 0-based.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .approx import nearest_projective
from .constructions import fixtures
from .core import (
    analysis_apply,
    classify,
    frame_operator,
)
from .duals import canonical_dual, verify_dual
from .erasure import (
    ErasureMask,
    blind_reconstruct,
    error_report,
    optimal_dual_two_error,
    wce_condition,
    wce_minimize,
)
from .errors import GFramesError, PreconditionError, StructuralError
from .serialize import (
    dumps_canonical,
    load_system,
    matrix_to_pairs,
    save_system,
    system_to_dict,
    vector_to_pairs,
)
from .stability import ck_sufficient_condition, truncate, truncated_canonical_dual

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def _indices(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise StructuralError(f"expected comma-separated integers, got {text!r}") from exc


def _signal(text: str, d: int) -> np.ndarray:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"--signal is not valid JSON: {exc.msg}") from exc
    if not isinstance(payload, list) or len(payload) != d:
        raise StructuralError(f"--signal must be a JSON list of {d} entries")
    out = np.zeros(d, dtype=np.complex128)
    for i, entry in enumerate(payload):
        if isinstance(entry, (int, float)) and not isinstance(entry, bool):
            out[i] = float(entry)
        elif (isinstance(entry, list) and len(entry) == 2
              and all(isinstance(part, (int, float)) and not isinstance(part, bool)
                      for part in entry)):
            out[i] = complex(float(entry[0]), float(entry[1]))
        else:
            raise StructuralError(f"--signal entry {i} must be a number or [re, im] pair")
    return out


def _classification_dict(shape) -> dict:
    return {
        "is_rs": shape.is_rs,
        "is_injective": shape.is_injective,
        "is_projective": shape.is_projective,
        "weights": list(shape.weights) if shape.weights is not None else None,
        "is_uniform": shape.is_uniform,
        "is_protocol": shape.is_protocol,
        "is_riesz": shape.is_riesz,
        "lower_bound": shape.lower_bound,
        "upper_bound": shape.upper_bound,
        "tolerance": shape.tolerance,
    }


def _error_report_dict(report) -> dict:
    return {
        "per_index": list(report.per_index),
        "two_error": report.two_error,
        "worst_case": report.worst_case,
    }


def _report(args: argparse.Namespace, inputs: dict, outputs: dict) -> dict:
    return {
        "command": args.command,
        "inputs": inputs,
        "outputs": outputs,
        "tolerances": {"tolerance": args.tolerance},
    }


def _cmd_analyze(args: argparse.Namespace) -> dict:
    system = load_system(args.path)
    shape = classify(system, args.tolerance)
    criterion = None
    if shape.is_projective and shape.is_rs:
        criterion = wce_condition(system, args.tolerance)
    outputs = {
        "signature": {"m": system.m, "k": list(system.k), "d": system.d},
        "classification": _classification_dict(shape),
        "frame_operator": matrix_to_pairs(frame_operator(system)),
        "wce_condition": criterion,
    }
    return _report(args, {"path": str(args.path)}, outputs)


def _cmd_dual(args: argparse.Namespace) -> dict:
    system = load_system(args.path)
    outputs: dict = {}
    if args.kind == "canonical":
        dual = canonical_dual(system, args.tolerance)
    elif args.kind == "two_error":
        dual = optimal_dual_two_error(system, args.tolerance)
    else:
        dual, achieved = wce_minimize(system, iterations=args.iterations,
                                      seed=args.seed, tolerance=args.tolerance)
        outputs["achieved_worst_case"] = achieved
    outputs["system"] = system_to_dict(dual)
    outputs["dual_residual"] = verify_dual(dual, system, args.tolerance).dual_residual
    outputs["error_report"] = _error_report_dict(error_report(system, dual))
    inputs = {"path": str(args.path), "kind": args.kind,
              "seed": args.seed, "iterations": args.iterations}
    return _report(args, inputs, outputs)


def _cmd_erase(args: argparse.Namespace) -> dict:
    system = load_system(args.path)
    dual = load_system(args.dual) if args.dual else canonical_dual(system, args.tolerance)
    mask = ErasureMask(_indices(args.mask), system.m)
    signal = _signal(args.signal, system.d)
    packets = analysis_apply(system, signal)
    rebuilt = blind_reconstruct(system, dual, packets, mask)
    outputs = {
        "reconstruction": vector_to_pairs(rebuilt),
        "error_norm": float(np.linalg.norm(signal - rebuilt)),
        "error_report": _error_report_dict(error_report(system, dual)),
    }
    inputs = {"path": str(args.path), "dual": str(args.dual) if args.dual else None,
              "mask": list(mask.dropped), "signal": vector_to_pairs(signal)}
    return _report(args, inputs, outputs)


def _cmd_truncate(args: argparse.Namespace) -> dict:
    system = load_system(args.path)
    drop = _indices(args.drop)
    report = truncate(system, drop, args.tolerance)
    holds, estimate = ck_sufficient_condition(system, drop, args.tolerance)
    outputs = {
        "dropped": list(report.dropped),
        "kept": list(report.kept),
        "is_rs_after": report.is_rs_after,
        "truncation_factor": matrix_to_pairs(report.truncation_factor),
        "truncated_frame_operator": matrix_to_pairs(report.truncated_frame_operator),
        "lower_bound_estimate": report.lower_bound_estimate,
        "bounds_after": list(report.bounds_after) if report.bounds_after else None,
        "energy_condition": {"holds": holds, "estimate": estimate},
        "truncated_dual": None,
    }
    if report.is_rs_after:
        dual = truncated_canonical_dual(system, drop, args.tolerance)
        outputs["truncated_dual"] = system_to_dict(dual)
    return _report(args, {"path": str(args.path), "drop": list(report.dropped)}, outputs)


def _cmd_approx(args: argparse.Namespace) -> dict:
    system = load_system(args.path)
    projective, distance = nearest_projective(system, args.tolerance)
    shape = classify(projective, args.tolerance)
    outputs = {
        "system": system_to_dict(projective),
        "distance": distance,
        "weights": list(shape.weights) if shape.weights is not None else None,
    }
    return _report(args, {"path": str(args.path)}, outputs)


def _cmd_fixtures(args: argparse.Namespace) -> dict:
    catalog = fixtures()
    if args.name is None:
        outputs = {
            "available": [
                {"name": name,
                 "signature": {"m": sys_.m, "k": list(sys_.k), "d": sys_.d}}
                for name, sys_ in sorted(catalog.items())
            ],
        }
        return _report(args, {}, outputs)
    system = catalog[args.name]
    written = None
    if args.out:
        save_system(system, args.out)
        written = str(args.out)
    outputs = {
        "name": args.name,
        "system": system_to_dict(system),
        "classification": _classification_dict(classify(system, args.tolerance)),
        "written": written,
    }
    return _report(args, {"name": args.name, "out": written}, outputs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gframes",
        description="Finite-dimensional reconstruction systems: analysis, duals, "
                    "erasure robustness, truncation stability, projective approximation.")
    parser.add_argument("--tolerance", type=float, default=1e-9,
                        help="numerical tolerance, relative to the largest "
                             "singular value involved (default 1e-9)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized subcommands (default 0)")
    parser.add_argument("--iterations", type=int, default=5000,
                        help="iteration budget for iterative subcommands (default 5000)")
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", help="classify a system file")
    analyze.add_argument("path")
    analyze.set_defaults(handler=_cmd_analyze)

    dual = commands.add_parser("dual", help="compute a dual system")
    dual.add_argument("path")
    dual.add_argument("--kind", choices=("canonical", "two_error", "wce"),
                      default="canonical")
    dual.set_defaults(handler=_cmd_dual)

    erase = commands.add_parser("erase", help="blind reconstruction under erasures")
    erase.add_argument("path")
    erase.add_argument("--dual", default=None,
                       help="dual system file (default: canonical dual)")
    erase.add_argument("--mask", default="",
                       help="comma-separated 0-based indices of lost packets")
    erase.add_argument("--signal", required=True,
                       help="JSON list of d entries, numbers or [re, im] pairs")
    erase.set_defaults(handler=_cmd_erase)

    trunc = commands.add_parser("truncate", help="drop blocks and report stability")
    trunc.add_argument("path")
    trunc.add_argument("--drop", required=True,
                       help="comma-separated 0-based indices of dropped blocks")
    trunc.set_defaults(handler=_cmd_truncate)

    approx = commands.add_parser("approx", help="nearest projective system")
    approx.add_argument("path")
    approx.set_defaults(handler=_cmd_approx)

    fixtures_cmd = commands.add_parser("fixtures", help="built-in worked examples")
    fixtures_cmd.add_argument("--name", choices=sorted(fixtures()), default=None)
    fixtures_cmd.add_argument("--out", default=None, help="write the system to this path")
    fixtures_cmd.set_defaults(handler=_cmd_fixtures)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        report = args.handler(args)
    except json.JSONDecodeError as exc:
        print(f"error: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}",
              file=sys.stderr)
        return EXIT_USAGE
    except (StructuralError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except GFramesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    print(dumps_canonical(report))
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
