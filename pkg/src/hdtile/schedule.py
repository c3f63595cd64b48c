"""Budget presets, mixed-resolution budget sampling, and deterministic weighted batch planning."""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .planner import SUBIMAGE_PX, HdSetting, _ceil_div
from .rng import SplitMix64, fold64

PRESETS = {"HD9": 9, "HD16": 16, "HD25": 25, "HD30": 30, "HD55": 55}

MIXED_RESOLUTION_CAP = 25

# One HD55 sample carries roughly twice the image tokens of an HD25 sample,
# so it costs two batch slots when weighting buckets.
HD55_SLOT_COST = 2


def preset(name: str) -> HdSetting:
    """Look up a named budget preset (HD9, HD16, HD25, HD30, HD55)."""
    key = name.upper().replace("-", "").replace("_", "")
    if key not in PRESETS:
        raise ValueError(f"unknown preset {name!r}, expected one of {sorted(PRESETS)}")
    return HdSetting(max_patches=PRESETS[key])


class Bucket(Enum):
    HD25 = "HD25"
    HD55 = "HD55"


@dataclass(frozen=True)
class SourceSpec:
    """One data source: its name, size, and which resolution bucket it trains in."""

    name: str
    sample_count: int
    bucket: Bucket

    def __post_init__(self) -> None:
        if self.sample_count < 1:
            raise ValueError(f"sample_count must be >= 1, got {self.sample_count}")


@dataclass(frozen=True)
class BatchStep:
    bucket: Bucket
    sources: tuple[str, ...]


@dataclass(frozen=True)
class BatchPlan:
    """A deterministic schedule of resolution-bucketed, weighted batches."""

    steps: tuple[BatchStep, ...]
    batch_size_hd25: int
    batch_size_hd55: int
    seed: int

    def to_json(self) -> str:
        doc = {
            "seed": self.seed,
            "batch_sizes": {"HD25": self.batch_size_hd25, "HD55": self.batch_size_hd55},
            "steps": [
                {"bucket": s.bucket.value, "sources": list(s.sources)} for s in self.steps
            ],
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def native_patch_count(width: int, height: int) -> int:
    """Tiles needed to cover the image at native scale (the unbounded-budget plan)."""
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")
    cols = _ceil_div(width, SUBIMAGE_PX)
    rows = _ceil_div(cols * height, width)
    return cols * rows


def sample_mixed_resolution(width: int, height: int, seed: int) -> int:
    """Draw an effective tile budget between the image's native cover and the HD25 cap.

    Uniform over integer budgets in [min(native, 25), 25]; deterministic for
    a fixed (width, height, seed).  An image already at or beyond the cap
    always gets the cap.
    """
    lo = min(native_patch_count(width, height), MIXED_RESOLUTION_CAP)
    rng = SplitMix64(fold64(seed, width, height))
    return rng.randint(lo, MIXED_RESOLUTION_CAP)


def _bucket_batch_sizes(batch_hd25: int) -> dict[Bucket, int]:
    return {Bucket.HD25: batch_hd25, Bucket.HD55: batch_hd25 // 2}


def plan_batches(
    sources: Sequence[SourceSpec], steps: int, batch_hd25: int, seed: int
) -> BatchPlan:
    """Plan ``steps`` batches over weighted sources split across two buckets.

    Each step belongs to one bucket, drawn proportionally to the bucket's
    total sample count (HD55 counted at double slot cost, so per-sample
    frequencies match the raw data proportions despite the halved batch).
    Within a bucket, each batch slot draws a source proportionally to its
    sample count.  Fully deterministic under ``seed``.
    """
    if not sources:
        raise ValueError("at least one source is required")
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    if batch_hd25 < 1:
        raise ValueError(f"batch size must be positive, got {batch_hd25}")
    names = [s.name for s in sources]
    if len(set(names)) != len(names):
        raise ValueError("source names must be unique")

    by_bucket: dict[Bucket, list[SourceSpec]] = {b: [] for b in Bucket}
    for s in sources:
        by_bucket[s.bucket].append(s)
    batch_sizes = _bucket_batch_sizes(batch_hd25)
    if by_bucket[Bucket.HD55] and batch_sizes[Bucket.HD55] == 0:
        raise ValueError(
            f"batch_hd25={batch_hd25} leaves a zero HD55 batch; use at least 2"
        )

    buckets = [b for b in Bucket if by_bucket[b]]
    bucket_weights = [
        sum(s.sample_count for s in by_bucket[b])
        * (HD55_SLOT_COST if b is Bucket.HD55 else 1)
        for b in buckets
    ]
    source_weights = {b: [s.sample_count for s in by_bucket[b]] for b in buckets}

    rng = SplitMix64(fold64(seed))
    plan_steps = []
    for _ in range(steps):
        bucket = buckets[rng.weighted_index(bucket_weights)]
        members = by_bucket[bucket]
        weights = source_weights[bucket]
        draws = tuple(
            members[rng.weighted_index(weights)].name
            for _ in range(batch_sizes[bucket])
        )
        plan_steps.append(BatchStep(bucket=bucket, sources=draws))

    return BatchPlan(
        steps=tuple(plan_steps),
        batch_size_hd25=batch_sizes[Bucket.HD25],
        batch_size_hd55=batch_sizes[Bucket.HD55],
        seed=seed,
    )
