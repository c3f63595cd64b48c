"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py -v`` to see the report lines.
Every tolerance is pinned here; nothing is deferred to calibration.
"""

import time
from collections import Counter

import numpy as np

from hdtile import (
    HdSetting,
    ImageBuffer,
    SUBIMAGE_PX,
    Bucket,
    SourceSpec,
    assemble_layout,
    encode_stub,
    layout_to_grid,
    make_canvas,
    max_token_count,
    merge_2x2,
    plan_batches,
    plan_partition,
    preset,
    reassemble_feature_map,
    slice_patches,
    token_count,
)

from oracles import oracle_plan_shape


def report(name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[{status}] {name}{suffix}")


def test_token_budget_reproduction():
    published = {9: 1561, 16: 2653, 25: 4057, 55: 8737}
    got = {H: max_token_count(H) for H in published}
    ok = got == published
    report("token-budget reproduction (exact)", ok, f"{got}")
    assert ok


def test_4k_claim():
    plan = plan_partition(3840, 1600, preset("HD55"))
    oracle = oracle_plan_shape(3840, 1600, 55)
    ok = (
        (plan.p_w, plan.p_h) == (11, 5)
        and plan.num_patches <= 55
        and (plan.p_w, plan.p_h, plan.clamped) == oracle
    )
    report("4K claim check (exact)", ok, f"plan {plan.p_w}x{plan.p_h}, oracle {oracle}")
    assert ok


def test_hd9_example_resolutions():
    published = [(1008, 1008), (672, 1344), (336, 3024)]
    setting = preset("HD9")
    ok = True
    for w, h in published:
        for scale in (1, 2, 3):  # same aspect, at and above the canvas size
            plan = plan_partition(w * scale, h * scale, setting)
            ok &= (plan.canvas_w, plan.canvas_h) == (w, h)
    report("HD-9 example resolutions (exact)", ok, f"{published} reproduced as canvases")
    assert ok


def test_planner_oracle_equivalence():
    start = time.monotonic()
    values = list(range(64, 4097, 82))  # ~50 values per axis
    presets = [9, 16, 25, 30, 55]
    mismatches = 0
    pairs = 0
    for budget in presets:
        setting = HdSetting(max_patches=budget)
        for w in values:
            for h in values:
                pairs += 1
                p = plan_partition(w, h, setting)
                if (p.p_w, p.p_h, p.clamped) != oracle_plan_shape(w, h, budget):
                    mismatches += 1
    elapsed = time.monotonic() - start
    ok = mismatches == 0 and pairs >= 2500 * len(presets) and elapsed < 10.0
    report(
        "planner oracle equivalence",
        ok,
        f"{pairs} plans, {mismatches} mismatches, {elapsed:.1f}s",
    )
    assert ok


def _round_trip_one(img: ImageBuffer, budget: int) -> bool:
    plan = plan_partition(img.width, img.height, HdSetting(max_patches=budget))
    canvas = make_canvas(img, plan)
    patch_set = slice_patches(canvas, plan, img)

    tile = SUBIMAGE_PX
    rebuilt = np.empty((plan.canvas_h, plan.canvas_w, img.channels), dtype=np.uint8)
    for k, patch in enumerate(patch_set.local_patches):
        r, c = divmod(k, plan.p_w)
        rebuilt[r * tile : (r + 1) * tile, c * tile : (c + 1) * tile] = patch.to_array()
    if rebuilt.tobytes() != canvas.data:
        return False

    merged = [
        merge_2x2(encode_stub(patch, idx))
        for idx, patch in enumerate(patch_set.local_patches)
    ]
    mosaic = reassemble_feature_map(merged, plan)
    _, local_coords = layout_to_grid(assemble_layout(plan))
    if len(local_coords) != 144 * plan.num_patches:
        return False
    for r, c in local_coords:
        vec = mosaic[r, c]
        if divmod(int(vec[0]), plan.p_w) != (r // 12, c // 12):
            return False
        if int(vec[1]) != 2 * (r % 12) or int(vec[2]) != 2 * (c % 12):
            return False
    return True


def test_full_pipeline_round_trip():
    start = time.monotonic()
    rng = np.random.default_rng(2024)
    failures = 0
    n_images = 100
    for i in range(n_images):
        w = int(rng.integers(48, 900))
        h = int(rng.integers(48, 900))
        channels = 3 if i % 3 else 1
        img = ImageBuffer.from_array(
            rng.integers(0, 256, (h, w, channels), dtype=np.uint8)
        )
        for budget in (9, 25, 55):
            if not _round_trip_one(img, budget):
                failures += 1
    elapsed = time.monotonic() - start
    ok = failures == 0 and elapsed < 60.0
    report(
        "full-pipeline round trip",
        ok,
        f"{n_images} images x 3 budgets, {failures} failures, {elapsed:.1f}s",
    )
    assert ok


def test_schedule_determinism_and_convergence():
    start = time.monotonic()
    sources = [
        SourceSpec("alpha", 100, Bucket.HD25),
        SourceSpec("beta", 300, Bucket.HD25),
        SourceSpec("gamma", 200, Bucket.HD55),
    ]
    one = plan_batches(sources, steps=10_000, batch_hd25=16, seed=31337)
    two = plan_batches(sources, steps=10_000, batch_hd25=16, seed=31337)
    deterministic = one.to_json() == two.to_json()

    counts = Counter()
    for step in one.steps:
        counts.update(step.sources)
    total = sum(counts.values())
    # HD55's doubled slot cost makes per-sample frequencies track the raw
    # data proportions: 100:300:200 out of 600
    expected = {"alpha": 100 / 600, "beta": 300 / 600, "gamma": 200 / 600}
    max_err = max(abs(counts[n] / total - f) for n, f in expected.items())
    elapsed = time.monotonic() - start
    ok = deterministic and max_err < 0.02 and elapsed < 10.0
    report(
        "schedule determinism and weight convergence",
        ok,
        f"deterministic={deterministic}, max |freq-weight|={max_err:.4f}, {elapsed:.1f}s",
    )
    assert ok


def test_resolution_scaling_mechanism():
    # Benchmark accuracies need full model training and are out of reach at
    # desk scale; what is checked structurally is the inference-above-training
    # mechanism: plans under a larger budget stay valid and never shrink.
    sizes = [(640, 480), (1280, 960), (2048, 1536), (3840, 1600), (900, 2700)]
    ok = max_token_count(30) > max_token_count(25)
    for w, h in sizes:
        small = plan_partition(w, h, preset("HD25"))
        large = plan_partition(w, h, preset("HD30"))
        ok &= large.num_patches >= small.num_patches
        ok &= token_count(large.p_w, large.p_h) >= token_count(small.p_w, small.p_h)
        ok &= large.num_patches <= 30
    report(
        "resolution-scaling mechanism (desk-scale substitute)",
        ok,
        "HD-30 inference plans valid on HD-25-trained geometry; benchmark "
        "accuracies not reproducible without training",
    )
    assert ok
