"""Input validation helpers shared by the estimator layer and the bindings surface."""

from __future__ import annotations

import numpy as np

from .image import ImageBuffer


def check_positive_int(name: str, value) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return int(value)


def check_image_array(arr) -> np.ndarray:
    """Validate and normalize an image array to (height, width, channels) uint8."""
    a = np.asarray(arr)
    if a.dtype != np.uint8:
        raise ValueError(f"image arrays must be uint8, got {a.dtype}")
    if a.ndim == 2:
        a = a[:, :, np.newaxis]
    if a.ndim != 3:
        raise ValueError(f"image arrays must have 2 or 3 dimensions, got {a.ndim}")
    if a.shape[2] not in (1, 3):
        raise ValueError(f"images must have 1 or 3 channels, got {a.shape[2]}")
    if a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"image dimensions must be positive, got shape {a.shape}")
    return a


def as_image_buffer(x) -> ImageBuffer:
    """Accept an ImageBuffer or a uint8 array and return an ImageBuffer."""
    if isinstance(x, ImageBuffer):
        return x
    return ImageBuffer.from_array(check_image_array(x))


def check_size_pairs(X) -> np.ndarray:
    """Validate an (n, 2) array of (width, height) pixel sizes."""
    a = np.asarray(X)
    if a.ndim != 2 or a.shape[1] != 2:
        raise ValueError(f"expected an (n, 2) array of (width, height) pairs, got shape {a.shape}")
    if not np.issubdtype(a.dtype, np.integer):
        raise ValueError(f"sizes must be integers, got {a.dtype}")
    if (a < 1).any():
        raise ValueError("all widths and heights must be >= 1")
    return a
