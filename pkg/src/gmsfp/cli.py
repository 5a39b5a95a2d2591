"""Command-line front end.

Subcommands: ``validate-gms``, ``detect-pathologies``,
``check-contraction``, ``iterate``, ``solve-dp`` and the ``oracle``
mirrors (``oracle solve-dp``, ``oracle scan-coincidence``).  Problem
descriptions come in as JSON files, reports go out as JSON (stdout or
``--output``), iteration traces as CSV.

Exit-code contract: 0 when the verdict holds / the run converged; 1
when a condition is violated or the run did not converge (the report is
still written so pipelines can diff it); 2 on malformed input or I/O
failure, with a single-line diagnostic on stderr.  Violations are data,
not crashes.

Reports are deterministic for fixed inputs and seeds: keys are sorted,
violations are emitted in point order, rationals serialize as "p/q"
strings and floats use Python's shortest round-trip repr.  The
environment variable ``GMSFP_SEED`` overrides any ``--seed`` flag.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from ._numeric import parse_scalar, scalar_str
from .contractions import (
    ControlFunctions,
    MappingPair,
    map_from_json_dict,
    scalar_fn_from_json_dict,
    weight_from_json_dict,
)
from .dynprog import DPProblem, solve_system
from .errors import (
    CoefficientError,
    GMSFPError,
    HypothesisViolated,
    MalformedTable,
    NoConvergence,
    SelectorFailure,
    StateSetMismatch,
    UnknownPoint,
)
from .gms_core import (
    SampledIntervalSpace,
    SequenceRecord,
    detect_pathologies,
    space_from_json_dict,
    validate_gms,
)
from .iteration import (
    STATUS_COINCIDENCE_EARLY,
    STATUS_CONVERGED,
    bruteforce_coincidences,
    jungck_iterate,
    run_condition_checker,
)
from .oracle import coupled_value_iteration

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_BAD_INPUT = 2

#: CLI condition ids; the plain numbers are historical aliases.
CONDITION_ALIASES = {
    "rational": "rational",
    "linear": "linear",
    "weighted": "weighted",
    "3": "rational",
    "17": "linear",
    "18": "weighted",
}

#: Required keys per report kind; tests re-parse every emitted report
#: against this schema.
REPORT_SCHEMAS = {
    "validate-gms": {"command", "valid_gms", "is_metric", "violations", "triangle_violations", "quadruples_checked", "triples_checked", "sampled"},
    "detect-pathologies": {"command", "probes", "any_convergent_not_cauchy", "any_multiple_limits", "any_discontinuity"},
    "check-contraction": {"command", "condition", "holds", "violations", "pairs_checked", "violation_count", "sampled"},
    "iterate": {"command", "status", "final_point", "iterations", "tol"},
    "solve-dp": {"command", "w", "z", "residual", "iterations"},
    "oracle-solve-dp": {"command", "w", "z", "residual", "iterations"},
    "oracle-scan-coincidence": {"command", "coincidences", "count", "tol"},
    "error": {"command", "error"},
}


def validate_report_schema(obj: dict) -> None:
    """Raise MalformedTable unless ``obj`` matches its declared schema."""
    if not isinstance(obj, dict) or "command" not in obj:
        raise MalformedTable("report must be an object with a 'command'")
    kind = obj["command"]
    if "error" in obj:
        kind = "error"
    required = REPORT_SCHEMAS.get(kind)
    if required is None:
        raise MalformedTable(f"unknown report kind {kind!r}")
    missing = required - set(obj)
    if missing:
        raise MalformedTable(f"report missing keys: {sorted(missing)}")


def _emit(report: dict, output: Optional[str]) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedTable(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise MalformedTable(f"{path} is not valid JSON: {exc}") from exc


def _load_space(obj, base_dir: str):
    if isinstance(obj, str):
        path = obj if os.path.isabs(obj) else os.path.join(base_dir, obj)
        return space_from_json_dict(_load_json(path))
    return space_from_json_dict(obj)


def _load_pair(spec: dict) -> MappingPair:
    try:
        a_map = map_from_json_dict(spec["A"])
        b_map = map_from_json_dict(spec["B"])
    except KeyError as exc:
        raise MalformedTable(f"problem file needs an {exc.args[0]!r} map") from exc
    selector = None
    if "b_selector" in spec:
        selector = map_from_json_dict(spec["b_selector"])
    return MappingPair(a_map, b_map, selector)


def _load_controls(spec: dict) -> ControlFunctions:
    kwargs = {}
    if "phi" in spec:
        kwargs["phi"] = scalar_fn_from_json_dict(spec["phi"])
    if "psi" in spec:
        kwargs["psi"] = scalar_fn_from_json_dict(spec["psi"])
    if "beta" in spec:
        kwargs["beta"] = weight_from_json_dict(spec["beta"])
    for name in ("C", "L", "a1", "a2", "a3"):
        if name in spec:
            kwargs[name] = parse_scalar(spec[name])
    return ControlFunctions(**kwargs)


def _seed(args) -> int:
    env = os.environ.get("GMSFP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise MalformedTable(f"GMSFP_SEED must be an integer, got {env!r}") from exc
    return args.seed


def _parse_x0(space, raw: str):
    if isinstance(space, SampledIntervalSpace):
        try:
            return space.snap(float(Fraction(raw)))
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedTable(f"--x0 {raw!r} is not numeric") from exc
    space.require_point(raw)
    return raw


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _cmd_validate_gms(args) -> int:
    space = space_from_json_dict(_load_json(args.file))
    if isinstance(space, SampledIntervalSpace):
        space = space.as_finite()
    report = validate_gms(space, sample_quadruples=args.sample_quadruples, seed=_seed(args))
    payload = {"command": "validate-gms", **report.to_json_dict()}
    _emit(payload, args.output)
    return EXIT_OK if report.valid_gms else EXIT_VIOLATED


def _cmd_detect_pathologies(args) -> int:
    space = space_from_json_dict(_load_json(args.file))
    probe_spec = _load_json(args.probes)
    probes = []
    for entry in probe_spec.get("probes", []):
        probes.append(
            SequenceRecord(tuple(entry["points"]), entry.get("candidate_limit"))
        )
    if not probes:
        raise MalformedTable("probes file lists no probes")
    report = detect_pathologies(
        space,
        probes,
        tol=parse_scalar(args.tol),
        cauchy_eps=parse_scalar(args.cauchy_eps),
    )
    payload = {"command": "detect-pathologies", **report.to_json_dict()}
    _emit(payload, args.output)
    return EXIT_OK


def _cmd_check_contraction(args) -> int:
    spec = _load_json(args.file)
    space = _load_space(spec.get("space"), os.path.dirname(os.path.abspath(args.file)))
    pair = _load_pair(spec)
    ctrl = _load_controls(spec)
    condition = CONDITION_ALIASES[args.condition]
    report = run_condition_checker(
        condition, space, pair, ctrl, sample_pairs=args.sample_pairs, seed=_seed(args)
    )
    payload = {"command": "check-contraction", **report.to_json_dict()}
    _emit(payload, args.output)
    return EXIT_OK if report.holds else EXIT_VIOLATED


def _write_trace_csv(path: str, trace) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n", "x_n", "z_n", "step_dist", "skip_dist"])
        for n in range(len(trace.z)):
            writer.writerow(
                [
                    n,
                    scalar_str(trace.x[n]) if not isinstance(trace.x[n], str) else trace.x[n],
                    scalar_str(trace.z[n]) if not isinstance(trace.z[n], str) else trace.z[n],
                    scalar_str(trace.step_dist[n]) if n < len(trace.step_dist) else "",
                    scalar_str(trace.skip_dist[n]) if n < len(trace.skip_dist) else "",
                ]
            )


def _cmd_iterate(args) -> int:
    spec = _load_json(args.file)
    space = _load_space(spec.get("space"), os.path.dirname(os.path.abspath(args.file)))
    pair = _load_pair(spec)
    x0 = _parse_x0(space, args.x0)
    try:
        trace = jungck_iterate(space, pair, x0, tol=float(args.tol), max_iter=args.max_iter)
    except SelectorFailure as exc:
        trace = exc.trace
        if trace is None:
            raise
    final = trace.final
    payload = {
        "command": "iterate",
        "status": trace.status,
        "final_point": final if isinstance(final, str) else float(final),
        "iterations": trace.iterations,
        "tol": float(args.tol),
    }
    _emit(payload, args.output)
    if args.trace:
        _write_trace_csv(args.trace, trace)
    ok = trace.status in (STATUS_CONVERGED, STATUS_COINCIDENCE_EARLY)
    return EXIT_OK if ok else EXIT_VIOLATED


def _solve_dp_payload(command: str, solution) -> dict:
    return {"command": command, **solution.to_json_dict()}


def _cmd_solve_dp(args) -> int:
    problem = DPProblem.from_json_dict(_load_json(args.file))
    try:
        solution = solve_system(problem, tol=float(args.tol), max_iter=args.max_iter)
    except (NoConvergence, HypothesisViolated) as exc:
        payload = {"command": "solve-dp", "error": str(exc)}
        solution = getattr(exc, "solution", None)
        if solution is not None:
            payload.update(solution.to_json_dict())
        _emit(payload, args.output)
        return EXIT_VIOLATED
    _emit(_solve_dp_payload("solve-dp", solution), args.output)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["k", "step_sup_norm"])
            for k, step in enumerate(solution.step_history):
                writer.writerow([k, repr(float(step))])
    return EXIT_OK


def _cmd_oracle_solve_dp(args) -> int:
    problem = DPProblem.from_json_dict(_load_json(args.file))
    try:
        solution = coupled_value_iteration(problem, tol=float(args.tol), max_iter=args.max_iter)
    except NoConvergence as exc:
        _emit({"command": "oracle-solve-dp", "error": str(exc)}, args.output)
        return EXIT_VIOLATED
    _emit(_solve_dp_payload("oracle-solve-dp", solution), args.output)
    return EXIT_OK


def _cmd_oracle_scan(args) -> int:
    spec = _load_json(args.file)
    space = _load_space(spec.get("space"), os.path.dirname(os.path.abspath(args.file)))
    pair = _load_pair(spec)
    points = bruteforce_coincidences(space, pair, tol=float(args.tol))
    coincidences = []
    for p in points:
        value = space.normalize(pair.A.apply(space, p))
        coincidences.append(
            {
                "point": p if isinstance(p, str) else float(p),
                "value": value if isinstance(value, str) else float(value),
            }
        )
    payload = {
        "command": "oracle-scan-coincidence",
        "coincidences": coincidences,
        "count": len(coincidences),
        "tol": float(args.tol),
    }
    _emit(payload, args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gmsfp",
        description="Generalized-metric-space contraction checks, coincidence "
        "iteration and coupled functional-equation solving.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate-gms", help="check the g.m.s. axioms of a distance table")
    p.add_argument("file")
    p.add_argument("--sample-quadruples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_validate_gms)

    p = sub.add_parser("detect-pathologies", help="flag non-metric behaviour on probe sequences")
    p.add_argument("file")
    p.add_argument("--probes", required=True)
    p.add_argument("--tol", default="1/20")
    p.add_argument("--cauchy-eps", default="1/2")
    p.add_argument("--output")
    p.set_defaults(run=_cmd_detect_pathologies)

    p = sub.add_parser("check-contraction", help="scan a contraction condition over all pairs")
    p.add_argument("file")
    p.add_argument("--condition", choices=sorted(CONDITION_ALIASES), default="rational")
    p.add_argument("--sample-pairs", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_check_contraction)

    p = sub.add_parser("iterate", help="run the coincidence orbit and emit its trace")
    p.add_argument("file")
    p.add_argument("--x0", required=True)
    p.add_argument("--tol", default="1e-9")
    p.add_argument("--max-iter", type=int, default=100_000)
    p.add_argument("--trace", help="write the orbit as CSV to this path")
    p.add_argument("--output")
    p.set_defaults(run=_cmd_iterate)

    p = sub.add_parser("solve-dp", help="solve the coupled functional-equation system")
    p.add_argument("file")
    p.add_argument("--tol", default="1e-9")
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--trace", help="write per-iteration sup-norm steps as CSV")
    p.add_argument("--output")
    p.set_defaults(run=_cmd_solve_dp)

    oracle = sub.add_parser("oracle", help="independent brute-force reference runs")
    osub = oracle.add_subparsers(dest="oracle_command", required=True)

    p = osub.add_parser("solve-dp", help="synchronous coupled value iteration")
    p.add_argument("file")
    p.add_argument("--tol", default="1e-9")
    p.add_argument("--max-iter", type=int, default=10_000)
    p.add_argument("--output")
    p.set_defaults(run=_cmd_oracle_solve_dp)

    p = osub.add_parser("scan-coincidence", help="exhaustive coincidence-point scan")
    p.add_argument("file")
    p.add_argument("--tol", default="1e-9")
    p.add_argument("--output")
    p.set_defaults(run=_cmd_oracle_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (MalformedTable, UnknownPoint, CoefficientError, StateSetMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except HypothesisViolated as exc:
        print(f"hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATED
    except GMSFPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATED


def entry() -> None:  # console-script target
    sys.exit(main())


if __name__ == "__main__":
    entry()
