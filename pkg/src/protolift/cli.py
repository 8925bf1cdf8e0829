"""Command-line front end: construct, analyze, simulate, compare, export.

Primary outputs (artifact JSON, analysis JSON, curve CSV/JSON) are byte
deterministic for a fixed command line; timestamps and host details go
to a ``<out>.meta.json`` sidecar.  Optional ``--plot`` flags render
figures next to the data files.

Exit codes: 0 success, 2 usage, 3 input parse/validation failure,
4 protograph rejected by criteria, 5 work budget exceeded.
"""

from __future__ import annotations

import argparse
import datetime
import hashlib
import json
import math
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .alist import (
    GRAPH_FORMAT,
    graph_from_json_dict,
    graph_to_json_dict,
    read_alist,
    write_alist,
)
from .channel import (
    curve_csv_text,
    curve_to_json_dict,
    floor_estimate,
    simulate_bec,
)
from .design import (
    ARTIFACT_FORMAT,
    artifact_from_json_dict,
    artifact_json_text,
    construct_code,
)
from .errors import (
    BudgetExceeded,
    FormatError,
    ProtoliftError,
    ProtographRejected,
)
from .expansion import (
    CriteriaConfig,
    config_hash,
    expansion_profile,
    load_criteria,
    profile_to_json_dict,
    verdict_to_json_dict,
)
from .gf2 import gf2_rank
from .graph import TannerGraph, girth, to_parity_matrix
from .lift import LIFT_SPEC_FORMAT, apply_lift_spec, lift_spec_from_json_dict
from .stopping import StoppingReport, enumerate_stopping_sets, report_to_json_dict

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_REJECTED = 4
EXIT_BUDGET = 5

WORKERS_ENV = "PROTOLIFT_WORKERS"
ANALYSIS_FORMAT = "analysis"
ANALYSIS_VERSION = 1
COMPARISON_FORMAT = "comparison"
COMPARISON_VERSION = 1
DEFAULT_ENUM_BUDGET = 10_000_000
PROFILE_SUBSET_BUDGET = 2_000_000


@dataclass(frozen=True)
class LoadedInput:
    """A graph read from disk plus its provenance."""

    graph: TannerGraph
    kind: str  # "alist" | "graph-json" | "artifact" | "lift-spec"
    sha256: str
    artifact_doc: dict | None


def _sha256_bytes(blob: bytes) -> str:
    return hashlib.sha256(blob).hexdigest()


def _load_input(path) -> LoadedInput:
    """Sniff alist vs graph JSON vs artifact JSON vs lift-spec JSON."""
    p = Path(path)
    blob = p.read_bytes()
    digest = _sha256_bytes(blob)
    try:
        doc = json.loads(blob.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError):
        return LoadedInput(read_alist(p), "alist", digest, None)
    if not isinstance(doc, dict):
        raise FormatError(f"{p}: top-level JSON value must be an object")
    fmt = doc.get("format")
    if fmt == GRAPH_FORMAT:
        return LoadedInput(graph_from_json_dict(doc), "graph-json", digest, None)
    if fmt == ARTIFACT_FORMAT:
        artifact = artifact_from_json_dict(doc)
        return LoadedInput(artifact.final_graph, "artifact", digest, doc)
    if fmt == LIFT_SPEC_FORMAT:
        spec = lift_spec_from_json_dict(doc)
        return LoadedInput(apply_lift_spec(spec), "lift-spec", digest, None)
    raise FormatError(f"{p}: unknown document format {fmt!r}")


def _write_sidecar(path, args, extra: dict | None = None) -> None:
    """Timestamp and provenance live here, never in the primary output."""
    meta = {
        "tool": f"protolift {__version__}",
        "command": getattr(args, "command", None),
        "written": Path(path).name,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
    }
    if extra:
        meta.update(extra)
    Path(str(path) + ".meta.json").write_text(
        json.dumps(meta, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )


def _write_primary(path, text: str, args, extra: dict | None = None) -> None:
    """Write a deterministic output file plus its timestamped sidecar."""
    Path(path).write_text(text, encoding="utf-8")
    _write_sidecar(path, args, extra)


def _emit(doc: dict, args, extra: dict | None = None) -> None:
    """Send a JSON document to --out (with sidecar) or stdout."""
    text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        _write_primary(args.out, text, args, extra)
    else:
        sys.stdout.write(text)


def _eps_list(raw: str) -> list[float]:
    try:
        values = [float(x) for x in raw.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad epsilon list {raw!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("epsilon list is empty")
    for e in values:
        if not (0.0 <= e <= 1.0):
            raise argparse.ArgumentTypeError(f"epsilon {e} outside [0, 1]")
    return values


def _default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def _resolve_criteria(args) -> CriteriaConfig:
    """Flags override the criteria file, which overrides defaults."""
    if getattr(args, "criteria", None):
        cfg = load_criteria(args.criteria)
    else:
        cfg = CriteriaConfig()
    overrides = {}
    for flag, field_name in (
        ("girth_floor", "girth_floor"),
        ("stopping_floor", "stopping_floor"),
        ("stopping_cap", "stopping_cap"),
        ("k_max", "k_max"),
        ("neighbor_ratio", "neighbor_ratio"),
        ("require_proto", "require_proto"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[field_name] = value
    return replace(cfg, **overrides) if overrides else cfg


def _profile_k(num_vars: int, k_max: int | None) -> int:
    """Clamp the profile depth so the subset scan stays tractable."""
    if k_max is not None:
        return max(1, min(k_max, num_vars))
    k = min(8, num_vars)
    while k > 1 and sum(math.comb(num_vars, j) for j in range(1, k + 1)) > PROFILE_SUBSET_BUDGET:
        k -= 1
    return k


def _stopping_summary(report: StoppingReport) -> dict:
    observed = min(report.nonempty_weights(), default=None)
    if report.exhaustive:
        distance = observed
        exceeds = observed is None
    else:
        distance = None
        exceeds = False
    return {
        "stopping_distance": distance,
        "stopping_exceeds_max_weight": exceeds,
        "observed_min_weight": observed,
    }


def _analyze_graph(
    g: TannerGraph, max_weight: int, enum_budget: int | None, k_max: int | None
) -> tuple[dict, StoppingReport]:
    try:
        report = enumerate_stopping_sets(g, max_weight, budget=enum_budget)
    except BudgetExceeded as exc:
        if exc.partial is None:
            raise
        report = exc.partial
    k = _profile_k(g.num_vars, k_max)
    profile = expansion_profile(g, k)
    gth = girth(g)
    rank = gf2_rank(to_parity_matrix(g))
    doc = {
        "num_vars": g.num_vars,
        "num_checks": g.num_checks,
        "num_edges": g.num_edges,
        "girth": None if math.isinf(gth) else int(gth),
        "girth_acyclic": math.isinf(gth),
        "gf2_rank": rank,
        "code_dimension": g.num_vars - rank,
        "stopping": report_to_json_dict(report),
        "expansion": profile_to_json_dict(profile),
        "min_expansion_ratio": profile.min_ratio(),
    }
    doc.update(_stopping_summary(report))
    return doc, report


# ── subcommands ──────────────────────────────────────────────────────

def cmd_construct(args) -> int:
    loaded = _load_input(args.proto)
    cfg = _resolve_criteria(args)
    artifact = construct_code(
        loaded.graph, args.stages, args.trials, cfg, seed=args.seed
    )
    text = artifact_json_text(artifact)
    extra = {
        "seed": artifact.seed,
        "criteria_sha256": config_hash(cfg),
        "proto_sha256": loaded.sha256,
    }
    _write_primary(args.out, text, args, extra)
    if args.export_alist:
        write_alist(artifact.final_graph, args.export_alist)
    final = artifact.stage_metrics[-1]
    sd = final.stopping_distance
    sd_text = (
        f">{final.stopping_cap}"
        if math.isinf(sd)
        else ("unknown" if math.isnan(sd) else str(int(sd)))
    )
    print(
        f"wrote {args.out}: {final.num_vars} vars, {final.num_checks} checks, "
        f"girth {final.girth if not math.isinf(final.girth) else 'inf'}, "
        f"stopping distance {sd_text}, seed {artifact.seed}"
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    loaded = _load_input(args.code)
    doc, report = _analyze_graph(
        loaded.graph, args.max_weight, args.enum_budget, args.k_max
    )
    doc = {
        "format": ANALYSIS_FORMAT,
        "version": ANALYSIS_VERSION,
        "input_sha256": loaded.sha256,
        "input_kind": loaded.kind,
        **doc,
    }
    _emit(doc, args, extra={"input_sha256": loaded.sha256})
    if args.plot:
        from .plotting import save_weight_distribution

        save_weight_distribution(report, args.plot)
    return EXIT_OK


def _simulate_curve(g, eps_values, frames, seed, workers, stop_at_errors):
    return [
        simulate_bec(
            g,
            eps,
            frames,
            seed,
            workers=workers,
            stop_at_errors=stop_at_errors,
        )
        for eps in eps_values
    ]


def cmd_simulate(args) -> int:
    loaded = _load_input(args.code)
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)
    results = _simulate_curve(
        loaded.graph, args.eps, args.frames, seed, args.workers, args.stop_at_errors
    )
    text = curve_csv_text(results)
    extra = {"seed": seed, "input_sha256": loaded.sha256}
    if args.out:
        _write_primary(args.out, text, args, extra)
    else:
        sys.stdout.write(text)
    if args.json:
        doc = curve_to_json_dict(results, seed=seed, artifact_sha256=loaded.sha256)
        _write_primary(
            args.json, json.dumps(doc, sort_keys=True, indent=2) + "\n", args, extra
        )
    if args.plot:
        from .plotting import save_fer_curves

        save_fer_curves([(Path(args.code).stem, results)], args.plot)
    return EXIT_OK


def _compare_side(path, args, seed) -> tuple[dict, list]:
    loaded = _load_input(path)
    g = loaded.graph
    try:
        report = enumerate_stopping_sets(g, args.stopping_cap, budget=args.enum_budget)
    except BudgetExceeded as exc:
        if exc.partial is None:
            raise
        report = exc.partial
    gth = girth(g)
    results = _simulate_curve(
        g, args.eps, args.frames, seed, args.workers, args.stop_at_errors
    )
    side = {
        "input_sha256": loaded.sha256,
        "num_vars": g.num_vars,
        "num_checks": g.num_checks,
        "girth": None if math.isinf(gth) else int(gth),
        "floor_estimates": [
            {"epsilon": e, "value": floor_estimate(report, e).value}
            for e in args.eps
        ],
        "stopping": report_to_json_dict(report),
        "curve": [
            {
                "epsilon": r.epsilon,
                "frames": r.frames,
                "frame_errors": r.frame_errors,
                "fer": r.fer,
                "stderr_fer": r.stderr_fer,
                "ber": r.ber,
            }
            for r in results
        ],
    }
    side.update(_stopping_summary(report))
    return side, results


def cmd_compare(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)
    side_a, results_a = _compare_side(args.a, args, seed)
    side_b, results_b = _compare_side(args.b, args, seed)
    doc = {
        "format": COMPARISON_FORMAT,
        "version": COMPARISON_VERSION,
        "seed": seed,
        "frames": args.frames,
        "a": side_a,
        "b": side_b,
    }
    _emit(doc, args, extra={"seed": seed})

    def fmt(side, key):
        v = side.get(key)
        return "-" if v is None else str(v)

    rows = [("metric", "a", "b")]
    for key in ("num_vars", "num_checks", "girth", "stopping_distance"):
        rows.append((key, fmt(side_a, key), fmt(side_b, key)))
    for i, e in enumerate(args.eps):
        rows.append(
            (
                f"fer@{e:g}",
                f"{side_a['curve'][i]['fer']:.3e}",
                f"{side_b['curve'][i]['fer']:.3e}",
            )
        )
    width = max(len(r[0]) for r in rows) + 2
    for name, va, vb in rows:
        print(f"{name:<{width}}{va:>14}{vb:>14}", file=sys.stderr)

    if args.plot:
        from .plotting import save_fer_curves

        save_fer_curves(
            [(Path(args.a).stem, results_a), (Path(args.b).stem, results_b)],
            args.plot,
        )
    return EXIT_OK


def cmd_export(args) -> int:
    loaded = _load_input(args.input)
    if args.format == "alist":
        if not args.out:
            raise FormatError("export --format alist requires --out")
        write_alist(loaded.graph, args.out)
        _write_sidecar(args.out, args, {"input_sha256": loaded.sha256})
    else:
        text = (
            json.dumps(graph_to_json_dict(loaded.graph), sort_keys=True, indent=2)
            + "\n"
        )
        if args.out:
            _write_primary(args.out, text, args, {"input_sha256": loaded.sha256})
        else:
            sys.stdout.write(text)
    return EXIT_OK


# ── parser ───────────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="protolift",
        description=(
            "Construct LDPC codes by iterated 2-lifts of protographs, "
            "analyze stopping sets and expansion, and simulate BEC peeling."
        ),
    )
    parser.add_argument("--version", action="version", version=f"protolift {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--workers",
        type=int,
        default=_default_workers(),
        help=f"worker threads (default: ${WORKERS_ENV} or cpu count); never affects results",
    )
    common.add_argument(
        "--json-errors",
        action="store_true",
        help="report failures as machine-readable JSON on stderr",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "construct", parents=[common], help="build a code artifact by guided 2-lifts"
    )
    p.add_argument("--proto", required=True, help="protograph file (alist or JSON)")
    p.add_argument("--stages", type=int, required=True, help="number of 2-lift stages")
    p.add_argument("--trials", type=int, default=1, help="candidate lifts per stage")
    p.add_argument("--criteria", help="criteria config file (JSON or TOML)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True, help="output artifact JSON path")
    p.add_argument("--export-alist", help="also write the final graph as alist")
    p.add_argument("--girth-floor", type=int, default=None)
    p.add_argument("--stopping-floor", type=int, default=None)
    p.add_argument("--stopping-cap", type=int, default=None)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--neighbor-ratio", type=float, default=None)
    p.add_argument(
        "--require-proto",
        action="store_const",
        const=True,
        default=None,
        help="reject protographs that fail the criteria",
    )
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser(
        "analyze",
        parents=[common],
        help="stopping-set spectrum, expansion profile, girth, GF(2) rank",
    )
    p.add_argument("--code", required=True, help="graph, artifact, or alist file")
    p.add_argument("--max-weight", type=int, default=8)
    p.add_argument("--k-max", type=int, default=None)
    p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--out", help="output JSON path (default: stdout)")
    p.add_argument("--plot", help="write the stopping-weight figure to this path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser(
        "simulate", parents=[common], help="Monte Carlo BEC peeling curve"
    )
    p.add_argument("--code", required=True)
    p.add_argument("--eps", type=_eps_list, required=True, help="comma-separated erasure rates")
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--stop-at-errors", type=int, default=None)
    p.add_argument("--out", help="output CSV path (default: stdout)")
    p.add_argument("--json", help="also write a JSON curve with provenance")
    p.add_argument("--plot", help="write the FER curve figure to this path")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser(
        "compare", parents=[common], help="side-by-side metrics and curves"
    )
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--eps", type=_eps_list, required=True)
    p.add_argument("--frames", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--stop-at-errors", type=int, default=None)
    p.add_argument("--stopping-cap", type=int, default=8)
    p.add_argument("--enum-budget", type=int, default=DEFAULT_ENUM_BUDGET)
    p.add_argument("--out", help="output JSON path (default: stdout)")
    p.add_argument("--plot", help="write the overlay FER figure to this path")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser(
        "export", parents=[common], help="convert between alist and graph JSON"
    )
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("alist", "json"), required=True)
    p.add_argument("--out", help="output path (default: stdout; alist requires --out)")
    p.set_defaults(func=cmd_export)
    return parser


def _fail(args, exc, code: int) -> int:
    if getattr(args, "json_errors", False):
        doc = {"error": type(exc).__name__, "message": str(exc), "exit_code": code}
        if isinstance(exc, ProtographRejected):
            doc["verdict"] = verdict_to_json_dict(exc.verdict)
        print(json.dumps(doc, sort_keys=True), file=sys.stderr)
    else:
        print(f"error: {exc}", file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProtographRejected as exc:
        return _fail(args, exc, EXIT_REJECTED)
    except BudgetExceeded as exc:
        return _fail(args, exc, EXIT_BUDGET)
    except (ProtoliftError, OSError) as exc:
        return _fail(args, exc, EXIT_FORMAT)
    except ValueError as exc:
        return _fail(args, exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
