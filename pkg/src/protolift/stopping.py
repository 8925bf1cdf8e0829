"""Stopping sets: membership test, exhaustive low-weight enumeration,
stopping distance, and the codeword-support containment check.

A stopping set is a set S of variable nodes such that no check node is
joined to S by exactly one edge.  Edges are counted with multiplicity,
so a check tied to a single variable of S by two parallel edges counts
as doubly connected.  These sets are exactly the failure structures of
peeling decoding on the erasure channel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, InvalidNode
from .gf2 import gf2_nullspace
from .graph import TannerGraph, to_parity_matrix
from .lift import derive_rng

DEFAULT_WITNESS_WEIGHT_CAP = 8
DEFAULT_WITNESS_LIMIT = 10_000


@dataclass(frozen=True)
class StoppingReport:
    """Low-weight stopping-set distribution of one graph.

    ``counts[w]`` is the exact number A_w of stopping sets of weight w
    for every w <= max_weight when ``exhaustive`` is set; otherwise the
    search ran out of budget and the counts are partial.  A_0 = 1 (the
    empty set is vacuously a stopping set).
    """

    max_weight: int
    counts: dict[int, int]
    witnesses: dict[int, tuple[tuple[int, ...], ...]]
    exhaustive: bool
    budget_used: int

    def nonempty_weights(self) -> list[int]:
        return sorted(w for w, a in self.counts.items() if w >= 1 and a > 0)


def is_stopping_set(g: TannerGraph, s) -> bool:
    """True iff every check with an edge into s has at least two."""
    counts = [0] * g.num_checks
    for v in set(s):
        if not (0 <= int(v) < g.num_vars):
            raise InvalidNode(f"variable id {v} out of range [0, {g.num_vars})")
        for c in g.var_adjacency[int(v)]:
            counts[c] += 1
    return all(k != 1 for k in counts)


def enumerate_stopping_sets(
    g: TannerGraph,
    max_weight: int,
    *,
    witness_weight_cap: int = DEFAULT_WITNESS_WEIGHT_CAP,
    witness_limit: int = DEFAULT_WITNESS_LIMIT,
    budget: int | None = None,
) -> StoppingReport:
    """Exact count of stopping sets per weight up to max_weight.

    Depth-first search over variable subsets in id order.  A branch is
    pruned as soon as some check is singly connected and no variable
    still eligible for the branch is its neighbour, since every
    extension would leave that check singly connected.

    ``budget`` caps the number of subsets visited; exceeding it raises
    BudgetExceeded whose ``partial`` attribute carries the counts so
    far, flagged non-exhaustive.  Weights above num_vars are reported
    as exact zeros.

    Raises:
        ValueError: max_weight < 0.
        BudgetExceeded: see above.
    """
    if max_weight < 0:
        raise ValueError("max_weight must be non-negative")
    requested = max_weight
    max_weight = min(max_weight, g.num_vars)

    var_adj = g.var_adjacency
    # Highest variable id adjacent to each check; -1 for isolated checks.
    max_nbr = [-1] * g.num_checks
    for v, c in g.edges:
        max_nbr[c] = max(max_nbr[c], v)

    counts = {w: 0 for w in range(requested + 1)}
    witnesses: dict[int, list[tuple[int, ...]]] = {}
    stored = 0
    check_count = [0] * g.num_checks
    singles: set[int] = set()  # checks currently joined by exactly one edge
    chosen: list[int] = []
    visited = 0

    def record() -> None:
        nonlocal stored
        w = len(chosen)
        counts[w] += 1
        if w <= witness_weight_cap and stored < witness_limit:
            witnesses.setdefault(w, []).append(tuple(chosen))
            stored += 1

    def partial_report() -> StoppingReport:
        return StoppingReport(
            max_weight=requested,
            counts=dict(counts),
            witnesses={w: tuple(ws) for w, ws in witnesses.items()},
            exhaustive=False,
            budget_used=visited,
        )

    def dfs(start: int) -> None:
        nonlocal visited
        visited += 1
        if budget is not None and visited > budget:
            raise BudgetExceeded(
                f"stopping-set search exceeded budget {budget}",
                partial=partial_report(),
            )
        if not singles:
            record()
        if len(chosen) == max_weight:
            return
        # A singly connected check no remaining candidate touches dooms
        # the whole level.
        if any(max_nbr[c] < start for c in singles):
            return
        for v in range(start, g.num_vars):
            for c in var_adj[v]:
                k = check_count[c] + 1
                check_count[c] = k
                if k == 1:
                    singles.add(c)
                elif k == 2:
                    singles.discard(c)
            if not any(max_nbr[c] <= v for c in singles):
                chosen.append(v)
                dfs(v + 1)
                chosen.pop()
            for c in var_adj[v]:
                k = check_count[c] - 1
                check_count[c] = k
                if k == 1:
                    singles.add(c)
                elif k == 0:
                    singles.discard(c)

    dfs(0)
    return StoppingReport(
        max_weight=requested,
        counts=counts,
        witnesses={w: tuple(ws) for w, ws in witnesses.items()},
        exhaustive=True,
        budget_used=visited,
    )


def stopping_distance(g: TannerGraph, cap: int, *, budget: int | None = None) -> float:
    """Smallest nonempty stopping-set weight, or ``math.inf`` if every
    nonempty stopping set (if any) is heavier than cap.

    Uses iterative deepening so that small distances are found without
    exploring the full weight-cap search space.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    remaining = budget
    for w in range(1, min(cap, g.num_vars) + 1):
        report = enumerate_stopping_sets(
            g, w, witness_weight_cap=0, witness_limit=0, budget=remaining
        )
        if remaining is not None:
            remaining -= report.budget_used
        hits = report.nonempty_weights()
        if hits:
            return hits[0]
    return math.inf


def codeword_support_check(g: TannerGraph, *, samples: int = 32, seed: int = 0) -> bool:
    """Verify that codeword supports are stopping sets.

    Checks every nullspace basis vector of the parity-check matrix and
    a deterministic sample of random GF(2) combinations.  Every codeword
    support is a stopping set by construction, so a False return
    indicates a bug.
    """
    basis = gf2_nullspace(to_parity_matrix(g))
    for x in basis:
        if not is_stopping_set(g, [int(i) for i in x.nonzero()[0]]):
            return False
    if len(basis) == 0:
        return True
    rng = derive_rng(seed)
    for _ in range(samples):
        coeffs = rng.integers(0, 2, size=len(basis))
        x = (coeffs @ basis) % 2
        if not is_stopping_set(g, [int(i) for i in x.nonzero()[0]]):
            return False
    return True


def report_to_json_dict(report: StoppingReport) -> dict:
    return {
        "max_weight": report.max_weight,
        "exhaustive": report.exhaustive,
        "counts": [[w, report.counts[w]] for w in sorted(report.counts)],
        "witnesses": {
            str(w): [list(s) for s in sorted(ws)]
            for w, ws in sorted(report.witnesses.items())
        },
        "budget_used": report.budget_used,
    }
