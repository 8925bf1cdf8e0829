"""Vertex-expansion metrics and the configurable design criteria.

Small variable-node subsets of a good protograph should see many
distinct check neighbours; the criteria below gate candidate graphs on
neighbour expansion, girth, and stopping distance.  All thresholds live
in configuration, not code.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, fields
from itertools import combinations
from pathlib import Path

from .errors import BudgetExceeded, FormatError
from .graph import TannerGraph, girth, node_degrees
from .stopping import stopping_distance

SCORE_COMPONENTS = ("stopping", "girth", "expansion")


@dataclass(frozen=True)
class ExpansionProfile:
    """Exact subset-expansion minima for each subset size k <= k_max.

    ``min_neighbors[k]`` is the minimum number of distinct check
    neighbours over all variable subsets of size k, ``min_edges[k]`` the
    minimum number of incident edges (with multiplicity); the witness
    dicts hold one argmin subset each.
    """

    k_max: int
    min_neighbors: dict[int, int]
    min_edges: dict[int, int]
    neighbor_witnesses: dict[int, tuple[int, ...]]
    edge_witnesses: dict[int, tuple[int, ...]]

    def min_ratio(self) -> float:
        """Worst neighbour-expansion ratio min_k |N(S)| / |S|."""
        return min(self.min_neighbors[k] / k for k in self.min_neighbors)


def _subset_count(n: int, k_max: int) -> int:
    return sum(math.comb(n, k) for k in range(1, k_max + 1))


def expansion_profile(
    g: TannerGraph, k_max: int, *, max_subsets: int = 5_000_000
) -> ExpansionProfile:
    """Exhaustive expansion minima over all subsets of size <= k_max.

    Raises:
        ValueError: k_max out of range.
        BudgetExceeded: the subset count exceeds max_subsets.
    """
    if not (1 <= k_max <= g.num_vars):
        raise ValueError(f"k_max must be in [1, {g.num_vars}], got {k_max}")
    total = _subset_count(g.num_vars, k_max)
    if total > max_subsets:
        raise BudgetExceeded(
            f"expansion profile needs {total} subsets, budget is {max_subsets}"
        )

    masks = []
    for v in range(g.num_vars):
        m = 0
        for c in g.var_adjacency[v]:
            m |= 1 << c
        masks.append(m)
    degrees = node_degrees(g)[0]

    min_nbrs: dict[int, int] = {}
    min_edges: dict[int, int] = {}
    nbr_wit: dict[int, tuple[int, ...]] = {}
    edge_wit: dict[int, tuple[int, ...]] = {}
    for k in range(1, k_max + 1):
        best_n = None
        best_e = None
        for subset in combinations(range(g.num_vars), k):
            union = 0
            e = 0
            for v in subset:
                union |= masks[v]
                e += degrees[v]
            n = bin(union).count("1")
            if best_n is None or n < best_n:
                best_n = n
                nbr_wit[k] = subset
            if best_e is None or e < best_e:
                best_e = e
                edge_wit[k] = subset
        min_nbrs[k] = best_n
        min_edges[k] = best_e
    return ExpansionProfile(
        k_max=k_max,
        min_neighbors=min_nbrs,
        min_edges=min_edges,
        neighbor_witnesses=nbr_wit,
        edge_witnesses=edge_wit,
    )


@dataclass(frozen=True)
class CriteriaConfig:
    """Declarative design criteria; a None threshold disables a check.

    neighbor_ratio is the alpha in |N(S)| >= alpha * |S|, required for
    every subset size up to k_max (k_max None means min(8, num_vars)).
    ``weights`` orders the lexicographic score used by guided search.
    """

    k_max: int | None = None
    neighbor_ratio: float | None = 1.0
    girth_floor: int | None = 6
    stopping_floor: int | None = None
    stopping_cap: int = 8
    weights: tuple[str, ...] = ("stopping", "girth", "expansion")
    require_proto: bool = False
    recheck_stages: bool = True
    enum_budget: int | None = None
    max_subsets: int = 5_000_000
    score_subset_budget: int = 200_000

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        if self.neighbor_ratio is not None and self.neighbor_ratio <= 0:
            raise ValueError("neighbor_ratio must be positive")
        if self.k_max is not None and self.k_max < 1:
            raise ValueError("k_max must be at least 1")
        if self.girth_floor is not None and self.girth_floor < 0:
            raise ValueError("girth_floor must be non-negative")
        if self.stopping_floor is not None and self.stopping_floor < 0:
            raise ValueError("stopping_floor must be non-negative")
        if self.stopping_cap < 1:
            raise ValueError("stopping_cap must be at least 1")
        for w in self.weights:
            if w not in SCORE_COMPONENTS:
                raise ValueError(
                    f"unknown score component {w!r}; expected {SCORE_COMPONENTS}"
                )

    def effective_k_max(self, num_vars: int) -> int:
        k = self.k_max if self.k_max is not None else min(8, num_vars)
        return max(1, min(k, num_vars))


@dataclass(frozen=True)
class CriterionResult:
    name: str
    passed: bool
    detail: str
    witness: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Verdict:
    passed: bool
    criteria: tuple[CriterionResult, ...]


def satisfies(g: TannerGraph, cfg: CriteriaConfig) -> Verdict:
    """Evaluate every enabled criterion; failures carry witnesses."""
    results: list[CriterionResult] = []

    if cfg.neighbor_ratio is not None and g.num_vars > 0:
        k_eff = cfg.effective_k_max(g.num_vars)
        profile = expansion_profile(g, k_eff, max_subsets=cfg.max_subsets)
        failing = None
        for k in range(1, k_eff + 1):
            if profile.min_neighbors[k] < cfg.neighbor_ratio * k:
                failing = k
                break
        if failing is None:
            results.append(
                CriterionResult(
                    name="expansion",
                    passed=True,
                    detail=f"|N(S)| >= {cfg.neighbor_ratio}*|S| for all |S| <= {k_eff}",
                )
            )
        else:
            results.append(
                CriterionResult(
                    name="expansion",
                    passed=False,
                    detail=(
                        f"k={failing}: min |N(S)| = {profile.min_neighbors[failing]}"
                        f" < {cfg.neighbor_ratio * failing}"
                    ),
                    witness=profile.neighbor_witnesses[failing],
                )
            )

    if cfg.girth_floor is not None:
        gth = girth(g)
        results.append(
            CriterionResult(
                name="girth",
                passed=gth >= cfg.girth_floor,
                detail=f"girth {gth} vs floor {cfg.girth_floor}",
            )
        )

    if cfg.stopping_floor is not None:
        dist = stopping_distance(g, cfg.stopping_cap, budget=cfg.enum_budget)
        results.append(
            CriterionResult(
                name="stopping",
                passed=dist >= cfg.stopping_floor,
                detail=(
                    f"stopping distance "
                    f"{'>' + str(cfg.stopping_cap) if math.isinf(dist) else int(dist)}"
                    f" vs floor {cfg.stopping_floor}"
                ),
            )
        )

    return Verdict(passed=all(r.passed for r in results), criteria=tuple(results))


# ── config files and serialization ───────────────────────────────────

def config_to_json_dict(cfg: CriteriaConfig) -> dict:
    return {
        "k_max": cfg.k_max,
        "neighbor_ratio": cfg.neighbor_ratio,
        "girth_floor": cfg.girth_floor,
        "stopping_floor": cfg.stopping_floor,
        "stopping_cap": cfg.stopping_cap,
        "weights": list(cfg.weights),
        "require_proto": cfg.require_proto,
        "recheck_stages": cfg.recheck_stages,
        "enum_budget": cfg.enum_budget,
        "max_subsets": cfg.max_subsets,
        "score_subset_budget": cfg.score_subset_budget,
    }


def config_from_dict(d: dict) -> CriteriaConfig:
    known = {f.name for f in fields(CriteriaConfig)}
    unknown = set(d) - known
    if unknown:
        raise FormatError(f"unknown criteria keys: {sorted(unknown)}")
    return CriteriaConfig(**d)


def load_criteria(path) -> CriteriaConfig:
    """Read a criteria config from a JSON or TOML file."""
    p = Path(path)
    text = p.read_text(encoding="utf-8")
    if p.suffix.lower() == ".toml":
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        try:
            doc = tomllib.loads(text)
        except tomllib.TOMLDecodeError as exc:
            raise FormatError(f"{p}: invalid TOML: {exc}") from exc
    else:
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{p}: invalid JSON: {exc}") from exc
    try:
        return config_from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{p}: bad criteria config: {exc}") from exc


def config_hash(cfg: CriteriaConfig) -> str:
    blob = json.dumps(config_to_json_dict(cfg), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()


def verdict_to_json_dict(v: Verdict) -> dict:
    return {
        "pass": v.passed,
        "criteria": [
            {
                "name": c.name,
                "pass": c.passed,
                "detail": c.detail,
                "witness": list(c.witness) if c.witness is not None else None,
            }
            for c in v.criteria
        ],
    }


def verdict_from_json_dict(d: dict) -> Verdict:
    try:
        criteria = tuple(
            CriterionResult(
                name=str(c["name"]),
                passed=bool(c["pass"]),
                detail=str(c["detail"]),
                witness=None if c.get("witness") is None else tuple(c["witness"]),
            )
            for c in d["criteria"]
        )
        return Verdict(passed=bool(d["pass"]), criteria=criteria)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad criteria verdict: {exc}") from exc


def profile_to_json_dict(p: ExpansionProfile) -> dict:
    return {
        "k_max": p.k_max,
        "min_neighbors": {str(k): v for k, v in sorted(p.min_neighbors.items())},
        "min_edges": {str(k): v for k, v in sorted(p.min_edges.items())},
        "neighbor_witnesses": {
            str(k): list(v) for k, v in sorted(p.neighbor_witnesses.items())
        },
        "edge_witnesses": {
            str(k): list(v) for k, v in sorted(p.edge_witnesses.items())
        },
    }
