"""Binary erasure channel: peeling decoder, Monte Carlo, exact FER.

The peeling decoder repeatedly resolves any erased variable attached to
a check with exactly one erased edge (counting parallel edges), so a
frame fails iff the erasure pattern contains a nonempty stopping set
and the residual is the maximal contained stopping set.  That makes
frame error rates on this channel mechanically checkable: small graphs
get an exact answer by enumerating all patterns, larger ones a seeded
Monte Carlo estimate that is bit-identical across worker counts.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded, InvalidNode
from .graph import TannerGraph
from .stopping import StoppingReport

EXACT_FER_MAX_VARS = 20
SIM_BLOCK_FRAMES = 4096
CURVE_CSV_COLUMNS = (
    "epsilon",
    "frames",
    "frame_errors",
    "fer",
    "stderr_fer",
    "bit_errors",
    "ber",
)
CURVE_FORMAT = "bec-curve"
CURVE_VERSION = 1


@dataclass(frozen=True)
class PeelResult:
    """Outcome of peeling one erasure pattern.

    ``residual`` is empty iff the frame was recovered; otherwise it is
    the unique maximal stopping set contained in the pattern.
    """

    recovered: bool
    residual: frozenset[int]


@dataclass(frozen=True)
class SimResult:
    """One Monte Carlo curve point.

    ``stopped_by`` records whether the frame budget or the early-stop
    error threshold ended the run.
    """

    epsilon: float
    frames: int
    frame_errors: int
    bit_errors: int
    fer: float
    ber: float
    stderr_fer: float
    seed: int | None
    stopped_by: str


@dataclass(frozen=True)
class FloorEstimate:
    """Truncated union bound sum_{w=1}^{cap} A_w eps^w.

    ``exhaustive`` is inherited from the stopping report; a truncated
    or budget-limited report yields a flagged, not failed, estimate.
    """

    epsilon: float
    value: float
    max_weight: int
    exhaustive: bool


def peel_decode(g: TannerGraph, erased) -> PeelResult:
    """Peel an erasure pattern to its fixpoint.

    Args:
        erased: iterable of erased variable ids.

    Raises:
        InvalidNode: an id outside range(num_vars).
    """
    pattern = set()
    for v in erased:
        v = int(v)
        if not (0 <= v < g.num_vars):
            raise InvalidNode(f"variable id {v} out of range [0, {g.num_vars})")
        pattern.add(v)

    counts = [0] * g.num_checks
    for v in pattern:
        for c in g.var_adjacency[v]:
            counts[c] += 1
    ready = deque(c for c in range(g.num_checks) if counts[c] == 1)
    while ready:
        c = ready.popleft()
        if counts[c] != 1:
            continue
        v = next(u for u in g.check_adjacency[c] if u in pattern)
        pattern.remove(v)
        for c2 in g.var_adjacency[v]:
            counts[c2] -= 1
            if counts[c2] == 1:
                ready.append(c2)
    return PeelResult(recovered=not pattern, residual=frozenset(pattern))


def batch_peel(erased: np.ndarray, mult: np.ndarray) -> np.ndarray:
    """Peel many patterns at once; returns the residual mask.

    Args:
        erased: (frames, num_vars) boolean matrix of erasure patterns.
        mult: (num_checks, num_vars) edge multiplicity matrix.

    Each round resolves every variable adjacent to a check with exactly
    one erased edge.  Peeling is confluent, so the parallel schedule
    reaches the same fixpoint as the one-at-a-time decoder.
    """
    residual = np.array(erased, dtype=bool)
    if residual.size == 0:
        return residual
    mult_t = np.ascontiguousarray(mult.T, dtype=np.int64)
    adj = np.ascontiguousarray((mult > 0), dtype=np.int64)
    while True:
        edge_counts = residual.astype(np.int64) @ mult_t
        singles = (edge_counts == 1).astype(np.int64)
        resolvable = residual & ((singles @ adj) > 0)
        if not resolvable.any():
            return residual
        residual &= ~resolvable


def exact_stuck_counts(g: TannerGraph, *, max_vars: int = EXACT_FER_MAX_VARS) -> np.ndarray:
    """N[w] = number of weight-w erasure patterns that fail to peel.

    Enumerates all 2^num_vars patterns in fixed-size chunks through the
    vectorized peeler.

    Raises:
        BudgetExceeded: num_vars exceeds max_vars.
    """
    if g.num_vars > max_vars:
        raise BudgetExceeded(
            f"exact enumeration over 2^{g.num_vars} patterns exceeds the "
            f"{max_vars}-variable budget"
        )
    nv = g.num_vars
    mult = g.multiplicity_matrix()
    counts = np.zeros(nv + 1, dtype=np.int64)
    total = 1 << nv
    chunk = 1 << 16
    shifts = np.arange(nv, dtype=np.uint32)
    for lo in range(0, total, chunk):
        ids = np.arange(lo, min(lo + chunk, total), dtype=np.uint32)
        erased = ((ids[:, None] >> shifts) & 1).astype(bool)
        stuck = batch_peel(erased, mult).any(axis=1)
        weights = erased.sum(axis=1, dtype=np.int64)
        counts += np.bincount(weights[stuck], minlength=nv + 1).astype(np.int64)
    return counts


def exact_fer(
    g: TannerGraph, epsilon: float, *, max_vars: int = EXACT_FER_MAX_VARS
) -> float:
    """Exact frame error probability of peeling at erasure rate epsilon.

    Sums eps^w (1-eps)^(V-w) over every pattern whose peeling gets
    stuck.

    Raises:
        BudgetExceeded: num_vars exceeds max_vars.
    """
    counts = exact_stuck_counts(g, max_vars=max_vars)
    return fer_from_stuck_counts(counts, epsilon)


def fer_from_stuck_counts(counts: np.ndarray, epsilon: float) -> float:
    """Combine per-weight stuck-pattern counts into one FER value."""
    nv = len(counts) - 1
    total = 0.0
    for w in range(nv + 1):
        n = int(counts[w])
        if n:
            total += n * epsilon**w * (1.0 - epsilon) ** (nv - w)
    return float(total)


def floor_estimate(report: StoppingReport, epsilon: float) -> FloorEstimate:
    """Error-floor prediction from a stopping-weight distribution."""
    value = 0.0
    for w, a in report.counts.items():
        if w >= 1 and a:
            value += a * epsilon**w
    return FloorEstimate(
        epsilon=float(epsilon),
        value=float(value),
        max_weight=report.max_weight,
        exhaustive=report.exhaustive,
    )


def _block_seed_sequence(seed, block: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(seed, spawn_key=(block,))


def _simulate_block(
    mult: np.ndarray, epsilon: float, n_frames: int, seed, block: int
) -> tuple[np.ndarray, np.ndarray]:
    """Per-frame (error flag, residual size) for one deterministic block."""
    rng = np.random.default_rng(_block_seed_sequence(seed, block))
    nv = mult.shape[1]
    erased = rng.random((n_frames, nv)) < epsilon
    residual = batch_peel(erased, mult)
    return residual.any(axis=1), residual.sum(axis=1, dtype=np.int64)


def simulate_bec(
    g: TannerGraph,
    epsilon: float,
    frames: int,
    seed=None,
    *,
    workers: int = 1,
    stop_at_errors: int | None = None,
) -> SimResult:
    """Monte Carlo BEC run with a deterministic, worker-invariant layout.

    Frames are generated in fixed blocks of 4096 whose RNG streams
    depend only on (seed, block index), and results are aggregated in
    block order, so the outcome is a pure function of (seed, frames,
    epsilon, stop_at_errors) regardless of ``workers``.

    Args:
        stop_at_errors: end the run early once this many frame errors
            have accumulated (None disables early stopping).
    """
    if not (0.0 <= epsilon <= 1.0):
        raise ValueError(f"epsilon must be in [0, 1], got {epsilon}")
    if frames < 1:
        raise ValueError(f"frames must be at least 1, got {frames}")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    if seed is None:
        seed = int(np.random.SeedSequence().entropy)

    mult = g.multiplicity_matrix()
    n_blocks = (frames + SIM_BLOCK_FRAMES - 1) // SIM_BLOCK_FRAMES
    sizes = [
        min(SIM_BLOCK_FRAMES, frames - b * SIM_BLOCK_FRAMES) for b in range(n_blocks)
    ]

    def run(b: int):
        return _simulate_block(mult, epsilon, sizes[b], seed, b)

    frames_used = 0
    frame_errors = 0
    bit_errors = 0
    stopped_by = "frames"

    def consume(errs: np.ndarray, bits: np.ndarray) -> bool:
        """Fold one block in order; True once the run should stop."""
        nonlocal frames_used, frame_errors, bit_errors, stopped_by
        if stop_at_errors is not None:
            cum = int(frame_errors) + np.cumsum(errs.astype(np.int64))
            hit = np.nonzero(cum >= stop_at_errors)[0]
            if hit.size:
                cut = int(hit[0]) + 1
                frames_used += cut
                frame_errors += int(errs[:cut].sum())
                bit_errors += int(bits[:cut].sum())
                stopped_by = "errors"
                return True
        frames_used += len(errs)
        frame_errors += int(errs.sum())
        bit_errors += int(bits.sum())
        return False

    if workers == 1:
        for b in range(n_blocks):
            if consume(*run(b)):
                break
    else:
        window = max(workers * 2, 4)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pending = {}
            done = False
            next_submit = 0
            for b in range(n_blocks):
                while next_submit < min(b + window, n_blocks):
                    pending[next_submit] = pool.submit(run, next_submit)
                    next_submit += 1
                errs, bits = pending.pop(b).result()
                if consume(errs, bits):
                    done = True
                    break
            if done:
                for fut in pending.values():
                    fut.cancel()

    fer = frame_errors / frames_used
    ber = bit_errors / (frames_used * g.num_vars) if g.num_vars else 0.0
    stderr = math.sqrt(fer * (1.0 - fer) / frames_used)
    return SimResult(
        epsilon=float(epsilon),
        frames=frames_used,
        frame_errors=frame_errors,
        bit_errors=bit_errors,
        fer=fer,
        ber=ber,
        stderr_fer=stderr,
        seed=seed,
        stopped_by=stopped_by,
    )


# ── curve output ─────────────────────────────────────────────────────

def curve_csv_text(results) -> str:
    """One CSV row per curve point, gnuplot-ready column order."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CURVE_CSV_COLUMNS)
    for r in results:
        writer.writerow(
            [
                repr(r.epsilon),
                r.frames,
                r.frame_errors,
                repr(r.fer),
                repr(r.stderr_fer),
                r.bit_errors,
                repr(r.ber),
            ]
        )
    return buf.getvalue()


def write_curve_csv(results, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(curve_csv_text(results))


def sim_result_to_json_dict(r: SimResult) -> dict:
    return {
        "epsilon": r.epsilon,
        "frames": r.frames,
        "frame_errors": r.frame_errors,
        "bit_errors": r.bit_errors,
        "fer": r.fer,
        "ber": r.ber,
        "stderr_fer": r.stderr_fer,
        "seed": r.seed,
        "stopped_by": r.stopped_by,
    }


def curve_to_json_dict(results, *, seed, artifact_sha256: str | None) -> dict:
    """JSON curve variant embedding seed and source-artifact hash."""
    return {
        "format": CURVE_FORMAT,
        "version": CURVE_VERSION,
        "seed": seed,
        "artifact_sha256": artifact_sha256,
        "points": [sim_result_to_json_dict(r) for r in results],
    }
