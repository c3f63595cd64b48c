"""Deterministic, network-free stand-in for the vision encoder.

Maps each 336x336 tile to a 24x24 grid of position- and content-coded
feature vectors so merge, reassembly, and layout can be round-trip tested
end to end without any model weights.
"""

from __future__ import annotations

import numpy as np

from .image import ImageBuffer
from .planner import SUBIMAGE_PX, VIT_GRID
from .rng import hash_blocks, to_unit_interval

FEATURE_CHANNELS = 4
_BLOCK_PX = SUBIMAGE_PX // VIT_GRID  # 14px of image under each raw token


def encode_stub(patch: ImageBuffer, patch_index: int) -> np.ndarray:
    """Encode one 336x336 tile as a (24, 24, 4) float64 grid.

    Channels per token: patch index, intra-patch row, intra-patch col, and a
    SplitMix64 content hash of the 14x14 pixel block under the token reduced
    to [0, 1).  Flipping any single pixel changes exactly the hash of the
    covering token.
    """
    if (patch.width, patch.height) != (SUBIMAGE_PX, SUBIMAGE_PX):
        raise ValueError(
            f"expected a {SUBIMAGE_PX}x{SUBIMAGE_PX} patch, got {patch.width}x{patch.height}"
        )
    if patch_index < 0:
        raise ValueError(f"patch_index must be non-negative, got {patch_index}")

    g, b = VIT_GRID, _BLOCK_PX
    arr = patch.to_array()
    blocks = (
        arr.reshape(g, b, g, b, patch.channels)
        .transpose(0, 2, 1, 3, 4)
        .reshape(g * g, b * b * patch.channels)
    )
    hashes = to_unit_interval(hash_blocks(blocks)).reshape(g, g)

    grid = np.empty((g, g, FEATURE_CHANNELS), dtype=np.float64)
    grid[:, :, 0] = float(patch_index)
    grid[:, :, 1] = np.arange(g, dtype=np.float64)[:, None]
    grid[:, :, 2] = np.arange(g, dtype=np.float64)[None, :]
    grid[:, :, 3] = hashes
    return grid
