"""Command-line front end: planning, tiling, token accounting, batch planning, layout viz.

Exit codes: 0 ok, 2 usage/validation error, 3 decode error, 4 I/O error.
All outputs are pure functions of the inputs (no timestamps, no absolute
paths inside manifests), so re-runs are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .image import make_canvas, slice_patches
from .planner import HdSetting, PartitionPlan, plan_partition
from .pnm import PnmError, decode_ppm, encode_ppm
from .schedule import Bucket, SourceSpec, plan_batches, preset
from .tokens import max_token_count, token_count

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DECODE = 3
EXIT_IO = 4


@dataclass(frozen=True)
class TileManifest:
    """Machine-readable record of one tiling run."""

    source: str
    width: int
    height: int
    setting: dict
    plan: PartitionPlan
    token_count: int
    patch_files: tuple[str, ...]
    global_file: str

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "width": self.width,
            "height": self.height,
            "setting": self.setting,
            "plan": self.plan.to_dict(),
            "token_count": self.token_count,
            "patch_files": list(self.patch_files),
            "global_file": self.global_file,
        }


def _usage_error(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _resolve_setting(args) -> tuple[HdSetting, str]:
    if args.preset is not None:
        return preset(args.preset), args.preset.upper().replace("-", "")
    return HdSetting(max_patches=args.max_patches), "custom"


def _check_dims(width: int, height: int) -> None:
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")


def cmd_plan(args) -> int:
    try:
        _check_dims(args.width, args.height)
        setting, _ = _resolve_setting(args)
        plan = plan_partition(args.width, args.height, setting)
    except ValueError as e:
        return _usage_error(str(e))
    doc = plan.to_dict()
    doc["token_count"] = token_count(plan.p_w, plan.p_h)
    print(json.dumps(doc, sort_keys=True))
    return EXIT_OK


def cmd_tokens(args) -> int:
    try:
        if args.preset is not None:
            if args.pw is not None or args.ph is not None:
                raise ValueError("--preset conflicts with --pw/--ph")
            setting = preset(args.preset)
            # A preset alone names only its budget, so the worst case is
            # what gets printed with or without the explicit flag.
            count = max_token_count(setting.max_patches)
        else:
            if args.worst_case:
                raise ValueError("--worst-case requires --preset")
            if args.pw is None or args.ph is None:
                raise ValueError("either --preset or both --pw and --ph are required")
            count = token_count(args.pw, args.ph)
    except ValueError as e:
        return _usage_error(str(e))
    print(count)
    return EXIT_OK


def cmd_tile(args) -> int:
    try:
        setting, setting_name = _resolve_setting(args)
    except ValueError as e:
        return _usage_error(str(e))

    try:
        raw = open(args.input, "rb").read()
    except OSError as e:
        print(f"error: cannot read {args.input}: {e}", file=sys.stderr)
        return EXIT_IO
    try:
        img = decode_ppm(raw)
    except PnmError as e:
        print(f"error: cannot decode {args.input}: {e}", file=sys.stderr)
        return EXIT_DECODE

    plan = plan_partition(img.width, img.height, setting)
    patch_set = slice_patches(make_canvas(img, plan), plan, img)

    patch_files = tuple(
        f"patch_{idx // plan.p_w}_{idx % plan.p_w}.ppm" for idx in range(plan.num_patches)
    )
    manifest = TileManifest(
        source=os.path.basename(args.input),
        width=img.width,
        height=img.height,
        setting={"name": setting_name, "max_patches": setting.max_patches},
        plan=plan,
        token_count=token_count(plan.p_w, plan.p_h),
        patch_files=patch_files,
        global_file="global.ppm",
    )
    try:
        os.makedirs(args.out_dir, exist_ok=True)
        for name, patch in zip(patch_files, patch_set.local_patches):
            with open(os.path.join(args.out_dir, name), "wb") as f:
                f.write(encode_ppm(patch))
        with open(os.path.join(args.out_dir, "global.ppm"), "wb") as f:
            f.write(encode_ppm(patch_set.global_view))
        with open(os.path.join(args.out_dir, "manifest.json"), "w") as f:
            f.write(json.dumps(manifest.to_dict(), sort_keys=True, indent=2) + "\n")
    except OSError as e:
        print(f"error: cannot write outputs: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


_CELL_W = 3


def _render_grid(plan: PartitionPlan) -> str:
    border = "+" + "+".join(["-" * _CELL_W] * plan.p_w) + "+"
    body = "|" + "|".join([" " * _CELL_W] * plan.p_w) + "|"
    pad_band = "|" + "|".join([":" * _CELL_W] * plan.p_w) + "|"

    lines = [
        f"grid {plan.p_w}x{plan.p_h} ({plan.num_patches} patches)",
        f"canvas {plan.canvas_w}x{plan.canvas_h}"
        f"  resized {plan.resized_w}x{plan.resized_h}  pad_bottom {plan.pad_bottom}",
    ]
    if plan.clamped:
        lines.append("note: aspect ratio clamped (input taller than the budget allows)")
    for r in range(plan.p_h):
        lines.append(border)
        lines.append(body)
        if r == plan.p_h - 1 and plan.pad_bottom > 0:
            lines.append(pad_band + f"  <- pad band, bottom {plan.pad_bottom}px")
    lines.append(border)
    return "\n".join(lines)


def cmd_viz(args) -> int:
    try:
        _check_dims(args.width, args.height)
        setting, _ = _resolve_setting(args)
        plan = plan_partition(args.width, args.height, setting)
    except ValueError as e:
        return _usage_error(str(e))
    print(_render_grid(plan))
    return EXIT_OK


def _parse_source(text: str) -> SourceSpec:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"source must be NAME:COUNT:BUCKET, got {text!r}")
    name, count_text, bucket_text = parts
    try:
        count = int(count_text)
    except ValueError:
        raise ValueError(f"source count must be an integer, got {count_text!r}") from None
    try:
        bucket = Bucket(bucket_text.upper())
    except ValueError:
        raise ValueError(f"bucket must be HD25 or HD55, got {bucket_text!r}") from None
    return SourceSpec(name=name, sample_count=count, bucket=bucket)


def cmd_batches(args) -> int:
    try:
        sources = [_parse_source(s) for s in args.source]
        plan = plan_batches(sources, args.steps, args.batch_hd25, args.seed)
    except ValueError as e:
        return _usage_error(str(e))
    print(plan.to_json())
    return EXIT_OK


def _add_setting_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--max-patches", type=int, help="tile budget")
    group.add_argument("--preset", help="named budget: HD9, HD16, HD25, HD30, HD55")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdtile", description="Dynamic-resolution tiling and visual-token budgeting."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="solve the tile layout for given dimensions")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    _add_setting_flags(p)
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("tile", help="slice a PPM/PGM image into tiles plus a global view")
    p.add_argument("--input", required=True, help="input .ppm/.pgm file")
    p.add_argument("--out-dir", required=True, help="output directory")
    _add_setting_flags(p)
    p.set_defaults(func=cmd_tile)

    p = sub.add_parser("tokens", help="print a token count")
    p.add_argument("--preset", help="named budget; prints its worst-case count")
    p.add_argument(
        "--worst-case", action="store_true", help="print the budget's maximum token count"
    )
    p.add_argument("--pw", type=int, help="tile columns")
    p.add_argument("--ph", type=int, help="tile rows")
    p.set_defaults(func=cmd_tokens)

    p = sub.add_parser("viz", help="render the tile grid as text")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    _add_setting_flags(p)
    p.set_defaults(func=cmd_viz)

    p = sub.add_parser("batches", help="plan weighted, resolution-bucketed batches")
    p.add_argument(
        "--source",
        action="append",
        required=True,
        metavar="NAME:COUNT:BUCKET",
        help="data source; repeatable",
    )
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--batch-hd25", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_batches)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
