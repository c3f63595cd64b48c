"""Visual-token stream assembly: 2x2 channel merge, newline/separator layout, token accounting."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Sequence

import numpy as np

from .planner import MERGED_GRID, PartitionPlan


class TokenKind(Enum):
    GLOBAL_FEATURE = "G"
    LOCAL_FEATURE = "L"
    NEWLINE = "NL"
    SEPARATOR = "SEP"


@dataclass(frozen=True)
class TokenDescriptor:
    """One slot in the visual-token stream, with its 2D provenance.

    Feature tokens carry (row, col) on the merged grid; newline tokens carry
    the row they terminate; the separator carries neither.
    """

    kind: TokenKind
    row: Optional[int] = None
    col: Optional[int] = None


class LayoutError(ValueError):
    """A token stream violating the layout grammar; ``index`` is the first offender."""

    def __init__(self, index: int, message: str) -> None:
        super().__init__(f"malformed token stream at index {index}: {message}")
        self.index = index


@dataclass(frozen=True)
class TokenLayout:
    """The ordered visual-token stream for one partition plan."""

    tokens: tuple[TokenDescriptor, ...]
    plan: PartitionPlan

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[TokenDescriptor]:
        return iter(self.tokens)


def merge_2x2(features: np.ndarray) -> np.ndarray:
    """Concatenate each 2x2 block of tokens along the channel axis.

    Input (R, K, C) with R, K even; output (R/2, K/2, 4C).  Within a merged
    token the four sources appear row-major: top-left, top-right,
    bottom-left, bottom-right.
    """
    f = np.asarray(features)
    if f.ndim != 3:
        raise ValueError(f"expected a (rows, cols, channels) grid, got {f.ndim} dimensions")
    rows, cols, _ = f.shape
    if rows % 2 or cols % 2:
        raise ValueError(f"grid dimensions must be even, got {rows}x{cols}")
    return np.concatenate(
        [f[0::2, 0::2], f[0::2, 1::2], f[1::2, 0::2], f[1::2, 1::2]], axis=2
    )


def reassemble_feature_map(patch_maps: Sequence[np.ndarray], plan: PartitionPlan) -> np.ndarray:
    """Lay per-patch merged maps back out as one (12*p_h, 12*p_w, C) mosaic.

    ``patch_maps`` follows the row-major patch order used by slicing.
    """
    if len(patch_maps) != plan.num_patches:
        raise ValueError(f"expected {plan.num_patches} patch maps, got {len(patch_maps)}")
    g = MERGED_GRID
    first = np.asarray(patch_maps[0])
    if first.shape[:2] != (g, g):
        raise ValueError(f"patch maps must be {g}x{g}, got {first.shape[:2]}")
    mosaic = np.empty((g * plan.p_h, g * plan.p_w, first.shape[2]), dtype=first.dtype)
    for idx, pm in enumerate(patch_maps):
        r, c = divmod(idx, plan.p_w)
        mosaic[r * g : (r + 1) * g, c * g : (c + 1) * g] = np.asarray(pm)
    return mosaic


def token_count(p_w: int, p_h: int) -> int:
    """Total stream length for a p_w x p_h plan: 157 + 144*p_w*p_h + 12*p_h."""
    if p_w < 1 or p_h < 1:
        raise ValueError(f"grid must be at least 1x1, got {p_w}x{p_h}")
    g = MERGED_GRID
    global_tokens = g * (g + 1)  # 12 rows of 12 features + newline
    local_tokens = (g * p_h) * (g * p_w + 1)
    return global_tokens + 1 + local_tokens


def max_token_count(max_patches: int) -> int:
    """Largest stream length under a budget; attained by the (1, budget) layout."""
    if max_patches < 1:
        raise ValueError(f"max_patches must be >= 1, got {max_patches}")
    return token_count(1, max_patches)


def assemble_layout(plan: PartitionPlan) -> TokenLayout:
    """Build the token stream: global rows, separator, then the local mosaic rows.

    Every merged-feature row, in both views, ends with a newline token; a
    single separator sits between the views.
    """
    g = MERGED_GRID
    tokens: list[TokenDescriptor] = []
    for r in range(g):
        tokens.extend(TokenDescriptor(TokenKind.GLOBAL_FEATURE, r, c) for c in range(g))
        tokens.append(TokenDescriptor(TokenKind.NEWLINE, row=r))
    tokens.append(TokenDescriptor(TokenKind.SEPARATOR))
    for r in range(g * plan.p_h):
        tokens.extend(
            TokenDescriptor(TokenKind.LOCAL_FEATURE, r, c) for c in range(g * plan.p_w)
        )
        tokens.append(TokenDescriptor(TokenKind.NEWLINE, row=r))
    return TokenLayout(tokens=tuple(tokens), plan=plan)


def _expected_stream(plan: PartitionPlan) -> Iterator[TokenDescriptor]:
    g = MERGED_GRID
    for r in range(g):
        for c in range(g):
            yield TokenDescriptor(TokenKind.GLOBAL_FEATURE, r, c)
        yield TokenDescriptor(TokenKind.NEWLINE, row=r)
    yield TokenDescriptor(TokenKind.SEPARATOR)
    for r in range(g * plan.p_h):
        for c in range(g * plan.p_w):
            yield TokenDescriptor(TokenKind.LOCAL_FEATURE, r, c)
        yield TokenDescriptor(TokenKind.NEWLINE, row=r)


def layout_to_grid(
    layout: TokenLayout,
) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    """Recover (row, col) per feature token, validating the stream grammar.

    Returns the global and local coordinate lists in stream order.  Any
    structural violation (misplaced newline or separator, wrong coordinates,
    wrong length) raises LayoutError naming the first offending index.
    """
    expected_len = token_count(layout.plan.p_w, layout.plan.p_h)
    global_coords: list[tuple[int, int]] = []
    local_coords: list[tuple[int, int]] = []
    idx = -1
    for idx, (got, want) in enumerate(zip(layout.tokens, _expected_stream(layout.plan))):
        if got != want:
            raise LayoutError(idx, f"expected {want}, found {got}")
        if got.kind is TokenKind.GLOBAL_FEATURE:
            global_coords.append((got.row, got.col))
        elif got.kind is TokenKind.LOCAL_FEATURE:
            local_coords.append((got.row, got.col))
    if len(layout.tokens) != expected_len:
        raise LayoutError(
            min(idx + 1, expected_len), f"stream has {len(layout.tokens)} tokens, expected {expected_len}"
        )
    return global_coords, local_coords


def layout_to_text(layout: TokenLayout) -> str:
    """Line-oriented serialization: one token per line (``G r c`` / ``L r c`` / ``NL`` / ``SEP``)."""
    lines = []
    for t in layout.tokens:
        if t.kind in (TokenKind.GLOBAL_FEATURE, TokenKind.LOCAL_FEATURE):
            lines.append(f"{t.kind.value} {t.row} {t.col}")
        else:
            lines.append(t.kind.value)
    return "\n".join(lines) + "\n"
