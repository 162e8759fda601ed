"""Command-line front end.

    arrpi1 analyze    <file> [--seed N] [--no-timings]
    arrpi1 present    <file> [--seed N] [--rebased]
    arrpi1 wiring     <file> [--seed N] [--svg OUT]
    arrpi1 projective <file> [--seed N]
    arrpi1 batch      <dir>  [--seed N] [--out PATH] [--verify] [--no-timings]

All reports are deterministic for fixed input and flags; wall-clock timings
live in their own field and are suppressed by --no-timings so outputs can be
compared byte for byte.  Exit codes: 0 success, 1 input error, 2 genericity
exhaustion, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from pathlib import Path
from typing import Optional

from arrpi1.analysis import (
    FreenessVerdict,
    Z2Certificate,
    decide_free_affine,
    certificate_from_wiring,
    lemma1_random_trials,
    validate_commutator_presentation,
)
from arrpi1.exactnum import format_gq
from arrpi1.files import AFFINE, PROJECTIVE, ArrangementFile, ParseError, parse_arrangement
from arrpi1.geometry import GenericityError, is_parallel_union, singular_points
from arrpi1.presentation import arvola_presentation, rebase_at_first_actual
from arrpi1.projective import (
    cross_validate_theorem4,
    decide_free_projective,
    decone,
    intersection_dimension,
)
from arrpi1.wiring import WiringResult, wire_arrangement

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_GENERICITY = 2
EXIT_INVARIANT = 3


class InputError(ValueError):
    """Bad input for the requested command (exit code 1)."""


class InvariantViolation(RuntimeError):
    """A cross-check that must hold by construction failed (exit code 3)."""


def _load(path: str, want: Optional[str] = None) -> ArrangementFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    af = parse_arrangement(text)
    if want and af.space != want:
        raise InputError(f"{path}: expected a {want} file, got {af.space}")
    return af


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _certificate_json(cert: Z2Certificate) -> dict:
    return {
        "A": str(cert.a),
        "B": str(cert.b),
        "k": cert.k,
        "block": list(cert.block),
        "sigma_A": list(cert.sigma_a),
        "sigma_B": list(cert.sigma_b),
        "argument": {
            "coordinate_for_A": cert.argument.coordinate_for_a,
            "coordinate_for_B": cert.argument.coordinate_for_b,
            "minor_determinant": cert.argument.minor_determinant,
        },
    }


def _verdict_json(verdict: FreenessVerdict) -> dict:
    if verdict.is_free:
        return {"kind": "FreeOfRank", "rank": verdict.rank, "evidence": "ParallelGeometry"}
    return {
        "kind": "NotFree",
        "evidence": "Z2Certificate",
        "certificate": _certificate_json(verdict.certificate),
    }


def analyze_affine(af: ArrangementFile, seed: int) -> dict:
    """Full pipeline report for one affine arrangement (no I/O)."""
    arr = af.affine
    result = wire_arrangement(arr, seed)
    diagram = result.diagram
    presentation = arvola_presentation(diagram)
    if is_parallel_union(arr):
        verdict = FreenessVerdict(kind="FreeOfRank", rank=arr.n, certificate=None)
    else:
        verdict = FreenessVerdict(
            kind="NotFree", rank=None, certificate=certificate_from_wiring(result)
        )
    points = singular_points(arr)
    report = {
        "space": AFFINE,
        "n": arr.n,
        "seed": seed,
        "normalization": {
            "candidate_index": result.candidate_index,
            "mu": format_gq(result.change.mu),
            "applied": result.change.applied,
        },
        "singular_points": {
            "count": len(points),
            "multiplicities": sorted(p.multiplicity for p in points),
        },
        "wiring": {
            "events": len(diagram.events),
            "actual": len(diagram.actual_events()),
            "virtual": len(diagram.virtual_events()),
        },
        "presentation": {
            "generators": presentation.n_generators,
            "relators": len(presentation.relators),
        },
        "verdict": _verdict_json(verdict),
    }
    free = verdict.is_free
    if not (
        free == (len(points) == 0) == (len(presentation.relators) == 0)
        and free == (len(diagram.actual_events()) == 0)
    ):
        raise InvariantViolation(
            "verdict, singular census and relator census disagree"
        )
    return report


def analyze_projective(af: ArrangementFile, seed: int) -> dict:
    arr = af.projective
    verdict = decide_free_projective(arr)
    report = {
        "space": PROJECTIVE,
        "m": arr.ambient_m,
        "n": arr.n,
        "seed": seed,
        "verdict": {"kind": verdict.kind, "rank": verdict.rank},
        "intersection_dimension": intersection_dimension(arr),
        "cross_validation": None,
    }
    if arr.ambient_m >= 1 and arr.n >= 3:
        agreed = cross_validate_theorem4(arr, seed)
        report["cross_validation"] = agreed
        if not agreed:
            raise InvariantViolation("rank criterion and sectioned criterion disagree")
    return report


# -- per-file invariant suite (batch --verify) --------------------------------


def verify_affine(af: ArrangementFile, seed: int, trials: int = 200) -> list:
    """Names of failed invariants (empty when all hold)."""
    arr = af.affine
    failures = []
    points = singular_points(arr)
    parallel = is_parallel_union(arr)
    if parallel != (len(points) == 0):
        failures.append("parallel-iff-no-singular-point")
    pair_sum = sum(m * (m - 1) // 2 for m in (p.multiplicity for p in points))
    crossing_pairs = sum(
        1
        for i in range(1, arr.n + 1)
        for j in range(i + 1, arr.n + 1)
        if arr.line(i).direction() != arr.line(j).direction()
    )
    if pair_sum != crossing_pairs:
        failures.append("pair-count-census")

    result = wire_arrangement(arr, seed)
    diagram = result.diagram
    if diagram.replay() != diagram.final_order:
        failures.append("replay-consistency")
    if len(diagram.actual_events()) != len(result.points):
        failures.append("actual-event-census")
    blocks = sorted(e.block_hi - e.block_lo + 1 for e in diagram.actual_events())
    if blocks != sorted(p.multiplicity for p in result.points):
        failures.append("block-multiplicity-census")

    presentation = arvola_presentation(diagram)
    expected = sum(p.multiplicity - 1 for p in result.points)
    if len(presentation.relators) != expected:
        failures.append("relator-census")
    if not validate_commutator_presentation(presentation):
        failures.append("commutator-presentation")

    verdict = decide_free_affine(arr, seed)
    if verdict.is_free != parallel:
        failures.append("verdict-geometry-agreement")
    if not verdict.is_free and not verdict.certificate.is_valid():
        failures.append("certificate-minor")

    rng = random.Random(hash((seed, arr.n, len(points))) & 0xFFFFFFFF)
    if lemma1_random_trials(presentation, trials, rng):
        failures.append("exponent-sum-trials")
    return failures


def verify_projective(af: ArrangementFile, seed: int) -> list:
    arr = af.projective
    failures = []
    if arr.ambient_m == 0 and arr.n >= 2:
        projective_verdict = decide_free_projective(arr)
        for at in range(1, arr.n + 1):
            affine_verdict = decide_free_affine(decone(arr, at), seed)
            if affine_verdict.is_free != projective_verdict.is_free:
                failures.append(f"decone-agreement-at-{at}")
            elif affine_verdict.is_free and affine_verdict.rank != arr.n - 1:
                failures.append(f"decone-rank-at-{at}")
    if arr.ambient_m >= 1 and arr.n >= 3:
        if not cross_validate_theorem4(arr, seed):
            failures.append("section-cross-validation")
    return failures


# -- commands ------------------------------------------------------------------


def cmd_analyze(args) -> int:
    started = time.perf_counter()
    af = _load(args.path, AFFINE)
    report = analyze_affine(af, args.seed)
    report = {"input": {"path": args.path, "sha256": _sha256(args.path)}, **report}
    if not args.no_timings:
        report["timings"] = {"seconds": round(time.perf_counter() - started, 6)}
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_present(args) -> int:
    af = _load(args.path, AFFINE)
    result = wire_arrangement(af.affine, args.seed)
    if args.rebased:
        try:
            presentation, _ = rebase_at_first_actual(result.diagram)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    else:
        presentation = arvola_presentation(result.diagram)
    sys.stdout.write(presentation.to_text())
    return EXIT_OK


def cmd_wiring(args) -> int:
    af = _load(args.path, AFFINE)
    result = wire_arrangement(af.affine, args.seed)
    sys.stdout.write(result.diagram.dump())
    if args.svg:
        from arrpi1.figures import render_wiring

        render_wiring(result, args.svg, title=Path(args.path).name)
    return EXIT_OK


def cmd_projective(args) -> int:
    af = _load(args.path, PROJECTIVE)
    report = analyze_projective(af, args.seed)
    report = {"input": {"path": args.path, "sha256": _sha256(args.path)}, **report}
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_batch(args) -> int:
    directory = Path(args.path)
    if not directory.is_dir():
        raise InputError(f"{args.path} is not a directory")
    entries = []
    saw_error = saw_genericity = saw_verify_failure = False
    for file in sorted(directory.glob("*.json")):
        started = time.perf_counter()
        entry = {"file": file.name}
        try:
            af = parse_arrangement(file.read_text(encoding="utf-8"))
            if af.space == AFFINE:
                entry["report"] = analyze_affine(af, args.seed)
            else:
                entry["report"] = analyze_projective(af, args.seed)
            if args.verify:
                failures = (
                    verify_affine(af, args.seed)
                    if af.space == AFFINE
                    else verify_projective(af, args.seed)
                )
                entry["verify"] = {"passed": not failures, "failures": failures}
                saw_verify_failure |= bool(failures)
        except ParseError as exc:
            entry["error"] = {"code": exc.code, "message": str(exc)}
            saw_error = True
        except GenericityError as exc:
            entry["error"] = {"code": "GENERICITY_EXHAUSTION", "message": str(exc)}
            saw_genericity = True
        except (InputError, InvariantViolation, ValueError) as exc:
            entry["error"] = {"code": "ERROR", "message": str(exc)}
            saw_error = True
        if not args.no_timings:
            entry["timings"] = {"seconds": round(time.perf_counter() - started, 6)}
        entries.append(entry)
    aggregate = {
        "directory": str(directory),
        "seed": args.seed,
        "files": entries,
        "summary": {
            "total": len(entries),
            "ok": sum(1 for e in entries if "report" in e),
            "errors": sum(1 for e in entries if "error" in e),
            "verify_failures": sum(
                1 for e in entries if not e.get("verify", {}).get("passed", True)
            ),
        },
    }
    text = json.dumps(aggregate, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    if saw_verify_failure:
        return EXIT_INVARIANT
    if saw_genericity:
        return EXIT_GENERICITY
    if saw_error:
        return EXIT_INPUT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrpi1",
        description="Fundamental groups of complex line arrangement complements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, timings=False):
        p.add_argument("path")
        p.add_argument("--seed", type=int, default=0, help="normalization seed (default 0)")
        if timings:
            p.add_argument("--no-timings", action="store_true", help="omit wall-clock fields")

    p = sub.add_parser("analyze", help="full affine pipeline report (JSON)")
    common(p, timings=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("present", help="group presentation (text)")
    common(p)
    p.add_argument("--rebased", action="store_true", help="rebase generators at the first actual vertex")
    p.set_defaults(func=cmd_present)

    p = sub.add_parser("wiring", help="wiring diagram dump (text), optional figure")
    common(p)
    p.add_argument("--svg", metavar="OUT", help="also render the diagram to this file")
    p.set_defaults(func=cmd_wiring)

    p = sub.add_parser("projective", help="projective freeness verdict (JSON)")
    common(p)
    p.set_defaults(func=cmd_projective)

    p = sub.add_parser("batch", help="process every *.json arrangement in a directory")
    common(p, timings=True)
    p.add_argument("--out", metavar="PATH", help="write the aggregate report here instead of stdout")
    p.add_argument("--verify", action="store_true", help="run the per-file invariant suite")
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GenericityError as exc:
        print(f"genericity exhaustion: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except (InvariantViolation, AssertionError) as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
