"""Grid planning: fit an arbitrary-resolution image onto a budgeted 336px tile grid."""

from __future__ import annotations

from dataclasses import dataclass, field

SUBIMAGE_PX = 336
VIT_GRID = 24
MERGED_GRID = 12


@dataclass(frozen=True)
class HdSetting:
    """A tile budget together with the fixed vision-encoder geometry.

    ``max_patches`` caps how many 336x336 sub-images one input may be split
    into.  The remaining fields describe the encoder and are fixed: each
    sub-image yields a 24x24 token grid (ViT-L/14 at 336px), halved per side
    to 12x12 by the 2x2 channel merge.
    """

    max_patches: int
    subimage_px: int = SUBIMAGE_PX
    vit_grid: int = VIT_GRID
    merged_grid: int = MERGED_GRID

    def __post_init__(self) -> None:
        if self.max_patches < 1:
            raise ValueError(f"max_patches must be >= 1, got {self.max_patches}")
        if self.subimage_px != 14 * self.vit_grid:
            raise ValueError(
                f"subimage_px must be 14 x vit_grid, got {self.subimage_px} != 14 x {self.vit_grid}"
            )
        if self.merged_grid * 2 != self.vit_grid:
            raise ValueError(
                f"vit_grid must be twice merged_grid, got {self.vit_grid} != 2 x {self.merged_grid}"
            )


@dataclass(frozen=True)
class PartitionPlan:
    """The solved layout for one image under one tile budget.

    ``p_w`` x ``p_h`` tiles of 336px make up the canvas; the source image is
    resized (aspect preserved, width fills the canvas) to ``resized_w`` x
    ``resized_h`` and the remaining ``pad_bottom`` rows are padding.

    ``clamped`` marks degenerate, extremely tall inputs whose aspect cannot
    be preserved within the budget; such plans squash the image vertically.
    """

    p_w: int
    p_h: int
    canvas_w: int
    canvas_h: int
    resized_w: int
    resized_h: int
    pad_bottom: int
    clamped: bool = field(default=False)

    def __post_init__(self) -> None:
        if self.p_w < 1 or self.p_h < 1:
            raise ValueError(f"grid must be at least 1x1, got {self.p_w}x{self.p_h}")
        if self.canvas_w != self.p_w * SUBIMAGE_PX or self.canvas_h != self.p_h * SUBIMAGE_PX:
            raise ValueError("canvas size must equal grid size times the sub-image side")
        if self.resized_w != self.canvas_w:
            raise ValueError("resized width must fill the canvas width")
        if not 1 <= self.resized_h <= self.canvas_h:
            raise ValueError(f"resized height {self.resized_h} outside canvas height {self.canvas_h}")
        if self.pad_bottom != self.canvas_h - self.resized_h:
            raise ValueError("pad_bottom must equal canvas_h - resized_h")
        if not 0 <= self.pad_bottom < SUBIMAGE_PX:
            raise ValueError(f"pad_bottom must lie in [0, {SUBIMAGE_PX - 1}], got {self.pad_bottom}")

    @property
    def num_patches(self) -> int:
        return self.p_w * self.p_h

    def to_dict(self) -> dict:
        return {
            "p_w": self.p_w,
            "p_h": self.p_h,
            "canvas_w": self.canvas_w,
            "canvas_h": self.canvas_h,
            "resized_w": self.resized_w,
            "resized_h": self.resized_h,
            "pad_bottom": self.pad_bottom,
            "clamped": self.clamped,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "PartitionPlan":
        return cls(
            p_w=d["p_w"],
            p_h=d["p_h"],
            canvas_w=d["canvas_w"],
            canvas_h=d["canvas_h"],
            resized_w=d["resized_w"],
            resized_h=d["resized_h"],
            pad_bottom=d["pad_bottom"],
            clamped=d.get("clamped", False),
        )


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _resized_height(canvas_w: int, canvas_h: int, width: int, height: int) -> int:
    # Exact integer round-half-up of canvas_w * height / width, then clamped
    # so the pad band never reaches a full tile row and never swallows the
    # whole canvas.
    raw = (2 * canvas_w * height + width) // (2 * width)
    lo = max(canvas_h - (SUBIMAGE_PX - 1), 1)
    return min(canvas_h, max(raw, lo))


def plan_partition(width: int, height: int, setting: HdSetting) -> PartitionPlan:
    """Solve the tile layout for an image of ``width`` x ``height`` pixels.

    The column count is the largest one whose implied grid fits the budget
    (rows follow the aspect ratio: rows = ceil(cols * height / width)), and
    is never larger than the native pixel cover ceil(width / 336), so small
    images are not split finer than their own resolution.  Inputs taller
    than the budget allows even at a single column get a vertically
    squashed, ``clamped`` plan.
    """
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")
    budget = setting.max_patches
    side = setting.subimage_px

    best = 0
    for cols in range(1, budget + 1):
        rows = _ceil_div(cols * height, width)
        if cols * rows > budget:
            break  # the product only grows with cols
        best = cols

    if best == 0:
        p_w, p_h, clamped = 1, budget, True
    else:
        p_w = min(best, _ceil_div(width, side))
        p_h = _ceil_div(p_w * height, width)
        clamped = False

    canvas_w = p_w * side
    canvas_h = p_h * side
    resized_h = _resized_height(canvas_w, canvas_h, width, height)
    return PartitionPlan(
        p_w=p_w,
        p_h=p_h,
        canvas_w=canvas_w,
        canvas_h=canvas_h,
        resized_w=canvas_w,
        resized_h=resized_h,
        pad_bottom=canvas_h - resized_h,
        clamped=clamped,
    )


def max_layout(setting: HdSetting) -> tuple[int, int]:
    """Grid shape maximizing total token count under the budget.

    Newline tokens grow with the row count, so the single-column layout
    (1, max_patches) always wins.
    """
    return (1, setting.max_patches)
