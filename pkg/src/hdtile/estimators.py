"""scikit-learn style transformers so the tiling pipeline composes with sklearn Pipelines."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .image import PatchSet, make_canvas, slice_patches
from .planner import HdSetting, PartitionPlan, plan_partition
from .schedule import MIXED_RESOLUTION_CAP, preset, sample_mixed_resolution
from .tokens import merge_2x2, token_count
from .validation import as_image_buffer, check_positive_int, check_size_pairs


class DynamicTiler(BaseEstimator, TransformerMixin):
    """Split images onto budgeted 336px tile grids plus a 336x336 global view.

    Parameters
    ----------
    max_patches : int, default=9
        Tile budget per image.  Ignored when ``preset`` is given.
    preset : str or None, default=None
        Named budget (``"HD9"`` .. ``"HD55"``) overriding ``max_patches``.
    """

    def __init__(self, max_patches: int = 9, preset: str | None = None):
        self.max_patches = max_patches
        self.preset = preset

    def fit(self, X=None, y=None):
        if self.preset is not None:
            self.setting_ = preset(self.preset)
        else:
            self.setting_ = HdSetting(max_patches=check_positive_int("max_patches", self.max_patches))
        return self

    def _check_fitted(self) -> HdSetting:
        if not hasattr(self, "setting_"):
            raise NotFittedError("this DynamicTiler instance is not fitted yet; call fit first")
        return self.setting_

    def plan(self, width: int, height: int) -> PartitionPlan:
        return plan_partition(width, height, self._check_fitted())

    def token_count(self, width: int, height: int) -> int:
        p = self.plan(width, height)
        return token_count(p.p_w, p.p_h)

    def transform(self, X) -> list[PatchSet]:
        """Tile each image; X is a list of uint8 arrays (or ImageBuffers)."""
        setting = self._check_fitted()
        out = []
        for x in X:
            img = as_image_buffer(x)
            plan = plan_partition(img.width, img.height, setting)
            out.append(slice_patches(make_canvas(img, plan), plan, img))
        return out


class FeatureMerger(BaseEstimator, TransformerMixin):
    """Merge each 2x2 block of feature tokens channel-wise, quartering token count."""

    def fit(self, X=None, y=None):
        return self

    def transform(self, X):
        """Merge one (R, K, C) grid or a list of them."""
        if isinstance(X, np.ndarray) and X.ndim == 3:
            return merge_2x2(X)
        return [merge_2x2(x) for x in X]


class MixedResolutionSampler(BaseEstimator, TransformerMixin):
    """Draw per-image tile budgets between native size and the HD25 cap.

    Deterministic per (width, height, seed); see ``sample_mixed_resolution``.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed

    def fit(self, X=None, y=None):
        self.cap_ = MIXED_RESOLUTION_CAP
        return self

    def transform(self, X) -> np.ndarray:
        """Map an (n, 2) array of (width, height) sizes to n integer budgets."""
        if not hasattr(self, "cap_"):
            raise NotFittedError("this MixedResolutionSampler instance is not fitted yet")
        sizes = check_size_pairs(X)
        return np.array(
            [sample_mixed_resolution(int(w), int(h), self.seed) for w, h in sizes],
            dtype=np.int64,
        )
