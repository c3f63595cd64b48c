"""Pixel-level operations: owned 8-bit buffers, bilinear resize, canvas assembly, tile slicing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .planner import SUBIMAGE_PX, PartitionPlan, _ceil_div, _resized_height

PAD_VALUE = 0


@dataclass(frozen=True)
class ImageBuffer:
    """A raw pixel grid: row-major unsigned 8-bit samples, 1 or 3 channels."""

    width: int
    height: int
    channels: int
    data: bytes

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError(f"image dimensions must be positive, got {self.width}x{self.height}")
        if self.channels not in (1, 3):
            raise ValueError(f"channels must be 1 or 3, got {self.channels}")
        expected = self.width * self.height * self.channels
        if len(self.data) != expected:
            raise ValueError(
                f"data length {len(self.data)} does not match "
                f"{self.width}x{self.height}x{self.channels} = {expected}"
            )

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "ImageBuffer":
        """Build from a (height, width) or (height, width, channels) uint8 array."""
        a = np.asarray(arr)
        if a.dtype != np.uint8:
            raise ValueError(f"expected uint8 samples, got {a.dtype}")
        if a.ndim == 2:
            a = a[:, :, np.newaxis]
        if a.ndim != 3:
            raise ValueError(f"expected 2 or 3 array dimensions, got {a.ndim}")
        h, w, c = a.shape
        return cls(width=w, height=h, channels=c, data=np.ascontiguousarray(a).tobytes())

    def to_array(self) -> np.ndarray:
        """Read-only (height, width, channels) uint8 view of the pixel data."""
        return np.frombuffer(self.data, dtype=np.uint8).reshape(self.height, self.width, self.channels)


@dataclass(frozen=True)
class PatchSet:
    """One image split for the encoder: a 336x336 overview plus the row-major tiles."""

    global_view: ImageBuffer
    local_patches: tuple[ImageBuffer, ...]
    plan: PartitionPlan

    def __post_init__(self) -> None:
        if len(self.local_patches) != self.plan.num_patches:
            raise ValueError(
                f"expected {self.plan.num_patches} patches for a "
                f"{self.plan.p_w}x{self.plan.p_h} plan, got {len(self.local_patches)}"
            )


def _axis_weights(n_in: int, n_out: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Half-pixel-center sampling: source coord for output i is
    # (i + 0.5) * n_in / n_out - 0.5, clamped to [0, n_in - 1].
    x = (np.arange(n_out, dtype=np.float64) + 0.5) * (n_in / n_out) - 0.5
    np.clip(x, 0.0, n_in - 1.0, out=x)
    i0 = np.floor(x).astype(np.int64)
    i1 = np.minimum(i0 + 1, n_in - 1)
    return i0, i1, x - i0


def resize_bilinear(img: ImageBuffer, out_w: int, out_h: int) -> ImageBuffer:
    """Bilinear resize with half-pixel centers; samples rounded half-up to 8 bits."""
    if out_w < 1 or out_h < 1:
        raise ValueError(f"output dimensions must be positive, got {out_w}x{out_h}")
    if (out_w, out_h) == (img.width, img.height):
        return img

    acc = img.to_array().astype(np.float64)
    if out_w != img.width:
        j0, j1, fx = _axis_weights(img.width, out_w)
        acc = acc[:, j0, :] * (1.0 - fx)[None, :, None] + acc[:, j1, :] * fx[None, :, None]
    if out_h != img.height:
        i0, i1, fy = _axis_weights(img.height, out_h)
        acc = acc[i0, :, :] * (1.0 - fy)[:, None, None] + acc[i1, :, :] * fy[:, None, None]

    out = np.floor(acc + 0.5)
    np.clip(out, 0, 255, out=out)
    return ImageBuffer(
        width=out_w, height=out_h, channels=img.channels, data=out.astype(np.uint8).tobytes()
    )


def _check_plan_matches(img: ImageBuffer, plan: PartitionPlan) -> None:
    expected_rows = _ceil_div(plan.p_w * img.height, img.width)
    rows_ok = plan.p_h == expected_rows or (plan.clamped and plan.p_h < expected_rows)
    resized_ok = plan.resized_h == _resized_height(
        plan.canvas_w, plan.canvas_h, img.width, img.height
    )
    if not (rows_ok and resized_ok):
        raise ValueError(
            f"plan {plan.p_w}x{plan.p_h} was not produced from a "
            f"{img.width}x{img.height} image"
        )


def make_canvas(img: ImageBuffer, plan: PartitionPlan) -> ImageBuffer:
    """Resize ``img`` onto the plan's canvas, padding the bottom rows with zeros."""
    _check_plan_matches(img, plan)
    resized = resize_bilinear(img, plan.canvas_w, plan.resized_h)
    if plan.pad_bottom == 0:
        return resized
    out = np.full(
        (plan.canvas_h, plan.canvas_w, img.channels), PAD_VALUE, dtype=np.uint8
    )
    out[: plan.resized_h] = resized.to_array()
    return ImageBuffer(
        width=plan.canvas_w, height=plan.canvas_h, channels=img.channels, data=out.tobytes()
    )


def slice_patches(canvas: ImageBuffer, plan: PartitionPlan, original: ImageBuffer) -> PatchSet:
    """Cut the canvas into 336x336 tiles (row-major) and build the global view.

    The global view is the resize of the *original* image, never of the
    padded canvas, so it carries no pad bars.
    """
    if (canvas.width, canvas.height) != (plan.canvas_w, plan.canvas_h):
        raise ValueError(
            f"canvas is {canvas.width}x{canvas.height}, "
            f"plan expects {plan.canvas_w}x{plan.canvas_h}"
        )
    if canvas.channels != original.channels:
        raise ValueError(
            f"canvas has {canvas.channels} channels, original has {original.channels}"
        )

    side = SUBIMAGE_PX
    arr = canvas.to_array()
    patches = []
    for r in range(plan.p_h):
        for c in range(plan.p_w):
            tile = arr[r * side : (r + 1) * side, c * side : (c + 1) * side]
            patches.append(
                ImageBuffer(
                    width=side,
                    height=side,
                    channels=canvas.channels,
                    data=np.ascontiguousarray(tile).tobytes(),
                )
            )
    global_view = resize_bilinear(original, side, side)
    return PatchSet(global_view=global_view, local_patches=tuple(patches), plan=plan)
