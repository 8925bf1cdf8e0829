"""2-lifts, iterated 2^n-lift construction, and description-size accounting.

A 2-lift doubles a graph: every node gets copies 0 and 1, and every
edge gets a sign bit.  Sign 0 keeps the two edge copies parallel
(copy-0 endpoints joined, copy-1 endpoints joined); sign 1 crosses them.
Iterating n independent 2-lifts produces a degree-2^n cover of the base
graph whose description is just the concatenated sign vectors, far
shorter than the per-edge permutations of a conventional 2^n-lift.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .alist import graph_from_json_dict, graph_to_json_dict
from .errors import FormatError, InvalidNode, SignLengthMismatch
from .graph import TannerGraph

SignVector = tuple[int, ...]

LIFT_SPEC_FORMAT = "lift-spec"
LIFT_SPEC_VERSION = 1


@dataclass(frozen=True)
class LiftSpec:
    """A protograph plus the ordered sign vectors of an iterated 2-lift.

    Stage i applies to the output of stage i-1, so stage i must have
    ``base.num_edges * 2**i`` bits.
    """

    base: TannerGraph
    stages: tuple[SignVector, ...]
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(
            self, "stages", tuple(tuple(int(b) for b in s) for s in self.stages)
        )
        e = self.base.num_edges
        for i, s in enumerate(self.stages):
            if len(s) != e * (2**i):
                raise SignLengthMismatch(e * (2**i), len(s), stage=i)
            if any(b not in (0, 1) for b in s):
                raise SignLengthMismatch(e * (2**i), len(s), stage=i)

    @property
    def n_stages(self) -> int:
        return len(self.stages)


@dataclass(frozen=True)
class NodeLabel:
    """Covering-map coordinates of a lifted node: which base node it
    covers and which copy was taken at each stage (stage order)."""

    base_id: int
    path: tuple[int, ...] = field(default_factory=tuple)


def apply_2lift(g: TannerGraph, signs) -> TannerGraph:
    """Apply one 2-lift with the given per-edge sign bits.

    Node ids: copy-0 block then copy-1 block (lifted var v copy b has id
    ``b * num_vars + v``, checks likewise).  Edge ids: base edge order,
    copy 0 then copy 1, so lifted edge ``2*e + b`` covers base edge e.
    """
    signs = tuple(int(b) for b in signs)
    if len(signs) != g.num_edges:
        raise SignLengthMismatch(g.num_edges, len(signs))
    nv, nc = g.num_vars, g.num_checks
    edges = []
    for (v, c), s in zip(g.edges, signs):
        if s:
            edges.append((v, nc + c))
            edges.append((nv + v, c))
        else:
            edges.append((v, c))
            edges.append((nv + v, nc + c))
    return TannerGraph(num_vars=2 * nv, num_checks=2 * nc, edges=tuple(edges))


def apply_lift_spec(spec: LiftSpec) -> TannerGraph:
    """Fold apply_2lift over the stages; identity for zero stages."""
    g = spec.base
    for i, s in enumerate(spec.stages):
        try:
            g = apply_2lift(g, s)
        except SignLengthMismatch as exc:
            raise SignLengthMismatch(exc.expected, exc.got, stage=i) from exc
    return g


def random_sign_vector(edge_count: int, rng: np.random.Generator) -> SignVector:
    """Independent uniform bits, one per edge; deterministic per rng state."""
    return tuple(int(b) for b in rng.integers(0, 2, size=edge_count))


def derive_rng(seed, *path: int) -> np.random.Generator:
    """Deterministic stream derived from (seed, *path).

    Distinct paths give statistically independent streams, so work can
    be parallelised without sharing RNG state.
    """
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=tuple(path)))


def project(lifted_id: int, n: int, base_size: int) -> int:
    """Base node covered by a lifted node after n stages.

    With the block id layout of apply_2lift this is just the residue
    modulo the base size.
    """
    if base_size <= 0:
        raise InvalidNode("base_size must be positive")
    if not (0 <= lifted_id < base_size * (2**n)):
        raise InvalidNode(
            f"lifted id {lifted_id} out of range [0, {base_size * 2**n})"
        )
    return lifted_id % base_size


def node_label(lifted_id: int, n: int, base_size: int) -> NodeLabel:
    """Invert the id layout into (base node, per-stage copy bits)."""
    base = project(lifted_id, n, base_size)
    p = lifted_id // base_size
    return NodeLabel(base_id=base, path=tuple((p >> i) & 1 for i in range(n)))


def lifted_node_id(label: NodeLabel, base_size: int) -> int:
    """Inverse of node_label."""
    p = sum(b << i for i, b in enumerate(label.path))
    return p * base_size + label.base_id


def project_edge(lifted_edge_id: int, n: int) -> int:
    """Base edge covered by a lifted edge after n stages."""
    return lifted_edge_id >> n


@dataclass(frozen=True)
class DescriptionCost:
    """Bits needed to describe a code on top of its protograph."""

    twolift_bits: int
    conventional_bits: int


def _ceil_log2(x: int) -> int:
    # Exact for arbitrarily large ints (no float log).
    if x <= 1:
        return 0
    b = x.bit_length()
    return b - 1 if x == (1 << (b - 1)) else b


def description_cost(edge_count: int, n_stages: int) -> DescriptionCost:
    """Description sizes of an iterated 2-lift vs a conventional lift.

    The 2-lift description is one bit per edge per stage:
    sum over stages of E * 2^i = E * (2^n - 1).  A conventional lift to
    the same degree N = 2^n stores one of N! permutations per base edge:
    E * ceil(log2(N!)) bits.
    """
    if edge_count < 0 or n_stages < 0:
        raise ValueError("edge_count and n_stages must be non-negative")
    lift_size = 2**n_stages
    return DescriptionCost(
        twolift_bits=edge_count * (lift_size - 1),
        conventional_bits=edge_count * _ceil_log2(math.factorial(lift_size)),
    )


def description_bits(spec: LiftSpec) -> DescriptionCost:
    """Description sizes for a concrete chain of lift stages."""
    return description_cost(spec.base.num_edges, spec.n_stages)


# ── serialization ────────────────────────────────────────────────────

def pack_bits(bits) -> str:
    """Hex string of the bit sequence, MSB-first per byte, zero-padded."""
    bits = tuple(int(b) for b in bits)
    out = bytearray()
    for i in range(0, len(bits), 8):
        byte = 0
        for j, b in enumerate(bits[i : i + 8]):
            byte |= b << (7 - j)
        out.append(byte)
    return out.hex()


def unpack_bits(hex_str: str, length: int) -> SignVector:
    raw = bytes.fromhex(hex_str)
    if len(raw) * 8 < length:
        raise FormatError(f"hex payload too short for {length} bits")
    bits = []
    for i in range(length):
        bits.append((raw[i // 8] >> (7 - i % 8)) & 1)
    if any((raw[i // 8] >> (7 - i % 8)) & 1 for i in range(length, len(raw) * 8)):
        raise FormatError("nonzero padding bits in sign vector payload")
    return tuple(bits)


def lift_spec_to_json_dict(spec: LiftSpec) -> dict:
    return {
        "format": LIFT_SPEC_FORMAT,
        "version": LIFT_SPEC_VERSION,
        "base": graph_to_json_dict(spec.base),
        "stages": [
            {"length": len(s), "bits_hex": pack_bits(s)} for s in spec.stages
        ],
        "seed": spec.seed,
    }


def lift_spec_from_json_dict(d: dict) -> LiftSpec:
    if d.get("format") != LIFT_SPEC_FORMAT:
        raise FormatError(f"not a {LIFT_SPEC_FORMAT} document: format={d.get('format')!r}")
    if d.get("version") != LIFT_SPEC_VERSION:
        raise FormatError(f"unsupported {LIFT_SPEC_FORMAT} version {d.get('version')!r}")
    try:
        stages = tuple(
            unpack_bits(s["bits_hex"], int(s["length"])) for s in d["stages"]
        )
        seed = d.get("seed")
        return LiftSpec(
            base=graph_from_json_dict(d["base"]),
            stages=stages,
            seed=None if seed is None else int(seed),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed {LIFT_SPEC_FORMAT} document: {exc}") from exc
