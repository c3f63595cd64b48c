"""Dynamic-resolution image tiling and visual-token budgeting for high-res VLM preprocessing."""

from .encoder import FEATURE_CHANNELS, encode_stub
from .image import (
    PAD_VALUE,
    ImageBuffer,
    PatchSet,
    make_canvas,
    resize_bilinear,
    slice_patches,
)
from .planner import (
    MERGED_GRID,
    SUBIMAGE_PX,
    VIT_GRID,
    HdSetting,
    PartitionPlan,
    max_layout,
    plan_partition,
)
from .pnm import PnmError, decode_ppm, encode_ppm
from .schedule import (
    MIXED_RESOLUTION_CAP,
    PRESETS,
    BatchPlan,
    BatchStep,
    Bucket,
    SourceSpec,
    native_patch_count,
    plan_batches,
    preset,
    sample_mixed_resolution,
)
from .tokens import (
    LayoutError,
    TokenDescriptor,
    TokenKind,
    TokenLayout,
    assemble_layout,
    layout_to_grid,
    layout_to_text,
    max_token_count,
    merge_2x2,
    reassemble_feature_map,
    token_count,
)

__version__ = "0.1.0"

_ESTIMATORS = ("DynamicTiler", "FeatureMerger", "MixedResolutionSampler")


def __getattr__(name):
    # The sklearn-backed wrappers are loaded on first use so the CLI does
    # not pay the scikit-learn import on every invocation.
    if name in _ESTIMATORS:
        from . import estimators

        return getattr(estimators, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "FEATURE_CHANNELS",
    "MERGED_GRID",
    "MIXED_RESOLUTION_CAP",
    "PAD_VALUE",
    "PRESETS",
    "SUBIMAGE_PX",
    "VIT_GRID",
    "BatchPlan",
    "BatchStep",
    "Bucket",
    "DynamicTiler",
    "FeatureMerger",
    "HdSetting",
    "ImageBuffer",
    "LayoutError",
    "MixedResolutionSampler",
    "PartitionPlan",
    "PatchSet",
    "PnmError",
    "SourceSpec",
    "TokenDescriptor",
    "TokenKind",
    "TokenLayout",
    "assemble_layout",
    "decode_ppm",
    "encode_ppm",
    "encode_stub",
    "layout_to_grid",
    "layout_to_text",
    "make_canvas",
    "max_layout",
    "max_token_count",
    "merge_2x2",
    "native_patch_count",
    "plan_batches",
    "plan_partition",
    "preset",
    "reassemble_feature_map",
    "resize_bilinear",
    "sample_mixed_resolution",
    "slice_patches",
    "token_count",
]
