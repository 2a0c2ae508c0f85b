"""Two-tier decoding.

Tier 1 scrubs individual packets against the union code: membership pass,
nearest-vector correction within a radius, or erasure on ambiguity. Tier 2
is brute-force nearest-codeword search over the full codebook, in the
injection or subspace metric for subspace codes and in the rank metric for
Gabidulin codes. Erased packets are excluded from the tier-2 input (span
rows for subspace codes, punctured positions for rank codes). When tier 2
runs in list mode, the list can feed back: tier 1 re-decodes against the
union restricted to the listed components, whose minimum distance is never
smaller.
"""

from dataclasses import asdict, dataclass

import numpy as np

from .codes import GABIDULIN, SUBSPACE
from .metrics import Subspace, injection_distance, rank_distance, subspace_distance
from .union import UnionCode

VALID = "valid"
CORRECTED = "corrected"
ERASED = "erased"
REJECTED = "rejected"

DETECT_ONLY = "detect-only"
CORRECT = "correct"
CORRECT_OR_ERASE = "correct-or-erase"
TIER1_MODES = (DETECT_ONLY, CORRECT, CORRECT_OR_ERASE)

METRICS = {"injection": injection_distance, "subspace": subspace_distance}


@dataclass(frozen=True)
class PacketVerdict:
    outcome: str
    vector: tuple | None = None
    flips: int = 0
    candidates: int = 0


@dataclass(frozen=True)
class DecodeResult:
    chosen: int | None
    metric_value: int | None
    tie: bool
    list: tuple | None = None


@dataclass(frozen=True)
class DecodeOptions:
    tier1_enabled: bool = True
    mode: str = CORRECT_OR_ERASE
    radius: int | None = None          # None: floor((d_H(union)-1)/2)
    metric: str = "injection"
    list_radius: int | None = None     # set: tier 2 runs in list mode
    feedback: bool = False
    allow_radius_override: bool = False

    def __post_init__(self):
        if self.mode not in TIER1_MODES:
            raise ValueError(f"unknown tier-1 mode {self.mode!r}")
        if self.metric not in METRICS:
            raise ValueError(f"unknown tier-2 metric {self.metric!r}")
        if self.feedback and self.list_radius is None:
            raise ValueError("feedback requires a tier-2 list radius")


def default_radius(min_distance: int) -> int:
    return (min_distance - 1) // 2


def tier1_decode(packet, union: UnionCode, radius: int, mode: str = CORRECT_OR_ERASE,
                 *, allow_radius_override: bool = False) -> PacketVerdict:
    """Packet-level decode against the active union code."""
    packet = tuple(packet)
    if len(packet) != union.ambient_len:
        raise ValueError(f"packet length {len(packet)} != ambient {union.ambient_len}")
    if mode not in TIER1_MODES:
        raise ValueError(f"unknown tier-1 mode {mode!r}")
    if packet in union:
        return PacketVerdict(VALID, vector=packet, flips=0, candidates=1)
    if mode == DETECT_ONLY:
        return PacketVerdict(REJECTED)
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if mode == CORRECT and not allow_radius_override:
        limit = default_radius(union.min_distance())
        if radius > limit:
            raise ValueError(
                f"radius {radius} exceeds the unique-decoding limit {limit}; "
                "pass allow_radius_override to experiment")
    if radius == 0:
        return PacketVerdict(REJECTED) if mode == CORRECT else PacketVerdict(ERASED)
    ordered, matrix = union.as_matrix()
    dists = np.count_nonzero(matrix != np.array(packet, dtype=np.int16), axis=1)
    best = int(dists.min())
    if best <= radius:
        hits = np.nonzero(dists == best)[0]
        if len(hits) == 1:
            return PacketVerdict(CORRECTED, vector=ordered[int(hits[0])],
                                 flips=best, candidates=1)
        if mode == CORRECT_OR_ERASE:
            return PacketVerdict(ERASED, candidates=len(hits))
        # a wrong correction is worse than a dropped packet
        return PacketVerdict(REJECTED, candidates=len(hits))
    return PacketVerdict(REJECTED) if mode == CORRECT else PacketVerdict(ERASED)


# ---------------------------------------------------------------- tier 2

def _subspace_distances(packets, codebook, metric: str):
    if not packets:
        raise ValueError("tier-2 decoding needs at least one packet")
    if any(cw.kind != SUBSPACE for cw in codebook):
        raise ValueError("codebook is not a subspace codebook")
    fn = METRICS.get(metric)
    if fn is None:
        raise ValueError(f"unknown tier-2 metric {metric!r}")
    p = codebook[0].subspace.p
    ambient = codebook[0].subspace.ambient_len
    received = Subspace.from_rows(packets, p, ambient)
    return [fn(received, cw.subspace) for cw in codebook]


def _pick(dists) -> DecodeResult:
    best = min(dists)
    hits = [i for i, d in enumerate(dists) if d == best]
    return DecodeResult(chosen=hits[0], metric_value=best, tie=len(hits) > 1)


def tier2_subspace_decode(packets, codebook, metric: str = "injection") -> DecodeResult:
    """Nearest codeword to the row space of the packets; ties pick the lowest index."""
    return _pick(_subspace_distances(packets, codebook, metric))


def tier2_list_decode(packets, codebook, radius: int, metric: str = "injection") -> DecodeResult:
    """All codewords within the metric radius, ascending distance then index."""
    if radius < 0:
        raise ValueError("list radius must be nonnegative")
    dists = _subspace_distances(packets, codebook, metric)
    hits = sorted((d, i) for i, d in enumerate(dists) if d <= radius)
    lst = tuple(i for _, i in hits)
    if not lst:
        return DecodeResult(chosen=None, metric_value=None, tie=False, list=lst)
    tie = len(hits) > 1 and hits[0][0] == hits[1][0]
    return DecodeResult(chosen=lst[0], metric_value=hits[0][0], tie=tie, list=lst)


def _rank_distances(word, codebook, positions):
    if any(cw.kind != GABIDULIN for cw in codebook):
        raise ValueError("codebook is not a rank-metric codebook")
    n = len(codebook[0].symbols)
    word = list(word)
    if len(word) != n:
        raise ValueError(f"word length {len(word)} != code length {n}")
    if positions is None:
        positions = range(n)
    positions = sorted(positions)
    if not positions:
        raise ValueError("tier-2 rank decoding needs at least one surviving position")
    return [rank_distance([word[i] for i in positions],
                          [cw.symbols[i] for i in positions]) for cw in codebook]


def tier2_rank_decode(word, codebook, positions=None, list_radius: int | None = None) -> DecodeResult:
    """Minimum rank-distance decoding; erased positions are excluded via `positions`."""
    dists = _rank_distances(word, codebook, positions)
    if list_radius is None:
        return _pick(dists)
    hits = sorted((d, i) for i, d in enumerate(dists) if d <= list_radius)
    lst = tuple(i for _, i in hits)
    if not lst:
        return DecodeResult(chosen=None, metric_value=None, tie=False, list=lst)
    tie = len(hits) > 1 and hits[0][0] == hits[1][0]
    return DecodeResult(chosen=lst[0], metric_value=hits[0][0], tie=tie, list=lst)


# ---------------------------------------------------------------- pipeline

@dataclass
class TwoTierResult:
    result: DecodeResult
    verdicts: list
    audit: dict


FAILURE = DecodeResult(chosen=None, metric_value=None, tie=False)


def _run_tier1(packets, union, options: DecodeOptions):
    radius = options.radius
    if radius is None:
        radius = default_radius(union.min_distance())
    verdicts = [tier1_decode(p, union, radius, options.mode,
                             allow_radius_override=options.allow_radius_override)
                for p in packets]
    return verdicts, radius


def two_tier_decode(packets, union: UnionCode, codebook, options: DecodeOptions = DecodeOptions()) -> TwoTierResult:
    """Tier 1 per packet, tier 2 on the survivors, optional list feedback.

    With tier 1 disabled the DecodeResult is exactly what tier 2 alone
    produces on the raw packets.
    """
    packets = [tuple(p) for p in packets]
    if not packets:
        raise ValueError("no packets to decode")
    kind = codebook[0].kind
    audit = {"tier1_enabled": options.tier1_enabled, "packets": len(packets)}

    if options.tier1_enabled:
        verdicts, radius = _run_tier1(packets, union, options)
        audit["tier1_radius"] = radius
        audit["tier1_mode"] = options.mode
    else:
        verdicts = []

    first = _tier2_pass(packets, verdicts, codebook, options,
                        list_radius=options.list_radius)
    audit["first_pass"] = asdict(first) if first is not None else None
    if first is None:
        first = FAILURE

    final = first
    if options.feedback and first.list:
        restricted = union.restrict(set(first.list))
        fb_options = DecodeOptions(
            tier1_enabled=True, mode=options.mode, radius=options.radius,
            metric=options.metric, allow_radius_override=options.allow_radius_override)
        verdicts, radius = _run_tier1(packets, restricted, fb_options)
        second = _tier2_pass(packets, verdicts, codebook, fb_options, list_radius=None)
        audit["feedback"] = {
            "list": list(first.list),
            "restricted_cardinality": restricted.cardinality,
            "restricted_min_distance": restricted.min_distance(),
            "tier1_radius": radius,
            "second_pass": asdict(second) if second is not None else None,
        }
        final = second if second is not None else FAILURE
    else:
        audit["feedback"] = None

    audit["final"] = asdict(final)
    return TwoTierResult(result=final, verdicts=verdicts, audit=audit)


def _tier2_pass(packets, verdicts, codebook, options: DecodeOptions, list_radius):
    """One tier-2 run on the packets tier 1 kept; None when nothing survives."""
    kind = codebook[0].kind
    if kind == SUBSPACE:
        if verdicts:
            kept = [v.vector for v in verdicts if v.outcome in (VALID, CORRECTED)]
        else:
            kept = packets
        if not kept:
            return None
        if list_radius is not None:
            return tier2_list_decode(kept, codebook, list_radius, options.metric)
        return tier2_subspace_decode(kept, codebook, options.metric)

    # rank-metric lane: packets are the codeword rows in position order
    ctx = codebook[0].symbols[0].ctx
    if verdicts:
        positions, word = [], []
        for i, v in enumerate(verdicts):
            if v.outcome in (VALID, CORRECTED):
                positions.append(i)
                word.append(ctx.from_vector(v.vector))
            else:
                word.append(ctx.zero)
        if not positions:
            return None
    else:
        positions = None
        word = [ctx.from_vector(p) for p in packets]
    return tier2_rank_decode(word, codebook, positions, list_radius=list_radius)
