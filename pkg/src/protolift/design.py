"""Guided code construction by best-of-m selection over random 2-lifts.

Each stage draws ``trials`` candidate sign vectors, scores the lifted
graphs lexicographically (stopping distance, girth, expansion ratio by
default, all higher-is-better), and keeps the winner.  trials=1 is the
pure random-lift ensemble.  Candidate i at stage s draws its bits from
the stream (seed, s, i), so results do not depend on scheduling.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

from .alist import graph_from_json_dict, graph_to_json_dict
from .errors import BudgetExceeded, FormatError, ProtographRejected
from .expansion import (
    CriteriaConfig,
    Verdict,
    _subset_count,
    config_from_dict,
    config_hash,
    config_to_json_dict,
    expansion_profile,
    satisfies,
    verdict_from_json_dict,
    verdict_to_json_dict,
)
from .graph import TannerGraph, girth
from .lift import (
    LiftSpec,
    SignVector,
    apply_2lift,
    apply_lift_spec,
    lift_spec_from_json_dict,
    lift_spec_to_json_dict,
    random_sign_vector,
)
from .stopping import stopping_distance

ARTIFACT_FORMAT = "code-artifact"
ARTIFACT_VERSION = 1


@dataclass(frozen=True)
class StageMetrics:
    """Structural metrics of the graph after a given stage (0 = base).

    ``stopping_distance`` is math.inf when no nonempty stopping set
    exists up to ``stopping_cap`` and math.nan when the enumeration hit
    its budget; budget-limited metric names are listed in ``partial``.
    """

    stage: int
    num_vars: int
    num_checks: int
    girth: float
    stopping_distance: float
    stopping_cap: int
    expansion: Verdict | None
    partial: tuple[str, ...] = ()


@dataclass(frozen=True)
class CodeArtifact:
    """Reproducible output of construct_code.

    Invariant: apply_lift_spec(lift_spec) equals final_graph, and every
    recorded metric is recomputable from the per-stage graphs.
    """

    lift_spec: LiftSpec
    final_graph: TannerGraph
    stage_metrics: tuple[StageMetrics, ...]
    trials_per_stage: int
    seed: int | None
    criteria: CriteriaConfig


def _child_rng(seq: np.random.SeedSequence, i: int) -> np.random.Generator:
    child = np.random.SeedSequence(entropy=seq.entropy, spawn_key=(*seq.spawn_key, i))
    return np.random.default_rng(child)


def _score_k_max(cfg: CriteriaConfig, num_vars: int) -> int:
    """Largest subset size whose exhaustive scan fits the score budget."""
    k = cfg.effective_k_max(num_vars)
    while k > 1 and _subset_count(num_vars, k) > cfg.score_subset_budget:
        k -= 1
    return k


def _component_value(name: str, g: TannerGraph, cfg: CriteriaConfig) -> float:
    if name == "stopping":
        return stopping_distance(g, cfg.stopping_cap, budget=cfg.enum_budget)
    if name == "girth":
        return girth(g)
    if name == "expansion":
        k = _score_k_max(cfg, g.num_vars)
        profile = expansion_profile(g, k, max_subsets=cfg.score_subset_budget)
        return profile.min_ratio()
    raise ValueError(f"unknown score component {name!r}")


def guided_2lift(
    g: TannerGraph,
    trials: int,
    cfg: CriteriaConfig | None = None,
    rng=None,
) -> tuple[TannerGraph, SignVector, tuple[float, ...]]:
    """Best 2-lift out of ``trials`` uniformly drawn sign vectors.

    Scoring is lexicographic in cfg.weights order; later components are
    only evaluated for candidates still tied on the earlier ones.
    Remaining ties go to the smallest sign vector in binary order.

    Args:
        rng: int seed, np.random.SeedSequence, or None for fresh
            entropy.  Candidate i draws from the child stream
            (rng, ..., i).

    Returns:
        (lifted graph, winning sign vector, score tuple in weight order)
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    cfg = cfg if cfg is not None else CriteriaConfig()
    seq = rng if isinstance(rng, np.random.SeedSequence) else np.random.SeedSequence(rng)

    signs = [random_sign_vector(g.num_edges, _child_rng(seq, i)) for i in range(trials)]
    lifts = [apply_2lift(g, s) for s in signs]

    cache: list[dict[str, float]] = [{} for _ in range(trials)]

    def value(i: int, comp: str) -> float:
        if comp not in cache[i]:
            cache[i][comp] = _component_value(comp, lifts[i], cfg)
        return cache[i][comp]

    survivors = list(range(trials))
    for comp in cfg.weights:
        if len(survivors) == 1:
            break
        vals = [value(i, comp) for i in survivors]
        best = max(vals)
        survivors = [i for i, v in zip(survivors, vals) if v == best]
    winner = min(survivors, key=lambda i: signs[i])
    score = tuple(value(winner, comp) for comp in cfg.weights)
    return lifts[winner], signs[winner], score


def _stage_metrics(stage: int, g: TannerGraph, cfg: CriteriaConfig) -> StageMetrics:
    partial: list[str] = []
    gth = girth(g)
    try:
        sd = stopping_distance(g, cfg.stopping_cap, budget=cfg.enum_budget)
    except BudgetExceeded:
        sd = math.nan
        partial.append("stopping")
    verdict = None
    if cfg.recheck_stages or stage == 0:
        try:
            verdict = satisfies(g, cfg)
        except BudgetExceeded:
            partial.append("expansion")
    return StageMetrics(
        stage=stage,
        num_vars=g.num_vars,
        num_checks=g.num_checks,
        girth=gth,
        stopping_distance=sd,
        stopping_cap=cfg.stopping_cap,
        expansion=verdict,
        partial=tuple(partial),
    )


def construct_code(
    proto: TannerGraph,
    n_stages: int,
    trials_per_stage: int,
    cfg: CriteriaConfig | None = None,
    seed=None,
) -> CodeArtifact:
    """Iterate guided_2lift from a protograph into a full artifact.

    The artifact is a pure function of (proto, n_stages,
    trials_per_stage, cfg, seed); a None seed is replaced by fresh
    entropy and recorded so the run stays reproducible after the fact.

    Raises:
        ProtographRejected: cfg.require_proto is set and the protograph
            fails the criteria.
    """
    if n_stages < 0:
        raise ValueError(f"n_stages must be non-negative, got {n_stages}")
    if trials_per_stage < 1:
        raise ValueError(f"trials_per_stage must be at least 1, got {trials_per_stage}")
    cfg = cfg if cfg is not None else CriteriaConfig()
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)

    if cfg.require_proto:
        verdict = satisfies(proto, cfg)
        if not verdict.passed:
            raise ProtographRejected(verdict)

    g = proto
    signs: list[SignVector] = []
    metrics = [_stage_metrics(0, proto, cfg)]
    for s in range(n_stages):
        stage_seq = np.random.SeedSequence(seed, spawn_key=(s,))
        g, sv, _ = guided_2lift(g, trials_per_stage, cfg, rng=stage_seq)
        signs.append(sv)
        metrics.append(_stage_metrics(s + 1, g, cfg))

    spec = LiftSpec(base=proto, stages=tuple(signs), seed=seed)
    return CodeArtifact(
        lift_spec=spec,
        final_graph=g,
        stage_metrics=tuple(metrics),
        trials_per_stage=trials_per_stage,
        seed=seed,
        criteria=cfg,
    )


# ── serialization ────────────────────────────────────────────────────

def _finite_or_none(x: float):
    return None if (math.isinf(x) or math.isnan(x)) else int(x)


def stage_metrics_to_json_dict(m: StageMetrics) -> dict:
    return {
        "stage": m.stage,
        "num_vars": m.num_vars,
        "num_checks": m.num_checks,
        "girth": _finite_or_none(m.girth),
        "girth_acyclic": math.isinf(m.girth),
        "stopping_distance": _finite_or_none(m.stopping_distance),
        "stopping_exceeds_cap": math.isinf(m.stopping_distance),
        "stopping_cap": m.stopping_cap,
        "expansion": None if m.expansion is None else verdict_to_json_dict(m.expansion),
        "partial": list(m.partial),
    }


def stage_metrics_from_json_dict(d: dict) -> StageMetrics:
    if d.get("girth") is not None:
        gth = float(d["girth"])
    else:
        gth = math.inf
    if d.get("stopping_distance") is not None:
        sd = float(d["stopping_distance"])
    elif d.get("stopping_exceeds_cap"):
        sd = math.inf
    else:
        sd = math.nan
    expansion = d.get("expansion")
    return StageMetrics(
        stage=int(d["stage"]),
        num_vars=int(d["num_vars"]),
        num_checks=int(d["num_checks"]),
        girth=gth,
        stopping_distance=sd,
        stopping_cap=int(d["stopping_cap"]),
        expansion=None if expansion is None else verdict_from_json_dict(expansion),
        partial=tuple(d.get("partial", ())),
    )


def artifact_to_json_dict(a: CodeArtifact) -> dict:
    return {
        "format": ARTIFACT_FORMAT,
        "version": ARTIFACT_VERSION,
        "seed": a.seed,
        "trials_per_stage": a.trials_per_stage,
        "criteria": config_to_json_dict(a.criteria),
        "criteria_sha256": config_hash(a.criteria),
        "lift_spec": lift_spec_to_json_dict(a.lift_spec),
        "final_graph": graph_to_json_dict(a.final_graph),
        "stage_metrics": [stage_metrics_to_json_dict(m) for m in a.stage_metrics],
    }


def artifact_from_json_dict(d: dict, *, validate: bool = True) -> CodeArtifact:
    if d.get("format") != ARTIFACT_FORMAT:
        raise FormatError(f"not a {ARTIFACT_FORMAT} document: format={d.get('format')!r}")
    if d.get("version") != ARTIFACT_VERSION:
        raise FormatError(f"unsupported {ARTIFACT_FORMAT} version {d.get('version')!r}")
    try:
        spec = lift_spec_from_json_dict(d["lift_spec"])
        final_graph = graph_from_json_dict(d["final_graph"])
        metrics = tuple(stage_metrics_from_json_dict(m) for m in d["stage_metrics"])
        seed = d.get("seed")
        artifact = CodeArtifact(
            lift_spec=spec,
            final_graph=final_graph,
            stage_metrics=metrics,
            trials_per_stage=int(d["trials_per_stage"]),
            seed=None if seed is None else int(seed),
            criteria=config_from_dict(d["criteria"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad {ARTIFACT_FORMAT} document: {exc}") from exc
    if validate and apply_lift_spec(artifact.lift_spec) != artifact.final_graph:
        raise FormatError("artifact final_graph does not match its lift spec")
    return artifact


def artifact_json_text(a: CodeArtifact) -> str:
    return json.dumps(artifact_to_json_dict(a), sort_keys=True, indent=2) + "\n"


def artifact_hash(a: CodeArtifact) -> str:
    """sha256 of the canonical JSON text (whitespace-independent id)."""
    blob = json.dumps(artifact_to_json_dict(a), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def write_artifact_json(a: CodeArtifact, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(artifact_json_text(a))


def read_artifact_json(path, *, validate: bool = True) -> CodeArtifact:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: invalid JSON: {exc}") from exc
    return artifact_from_json_dict(doc, validate=validate)
