"""3x3 window entropy edge detector on binary images.

For each interior pixel the detector counts how many of the nine window
pixels (center included) share the center's value.  With ``p = count/9``
the center is an edge when ``-p ln p`` reaches the entropy threshold;
at the default threshold this is exactly ``count <= 6``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .entropy import window_entropy
from .imgio import BinaryImage

WINDOW_SIZE = 9
DEFAULT_ENTROPY_THRESHOLD = 0.2441
MAX_EDGE_COUNT = 6


class Mode(str, enum.Enum):
    COUNT = "count"
    ENTROPY = "entropy"


class BorderPolicy(str, enum.Enum):
    ZERO = "zero"
    COPY = "copy"  # keep the binary input on the border ring


@dataclass(frozen=True)
class EdgeConfig:
    mode: Mode = Mode.COUNT
    entropy_threshold: float = DEFAULT_ENTROPY_THRESHOLD
    border: BorderPolicy = BorderPolicy.ZERO

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "border", BorderPolicy(self.border))
        if not self.entropy_threshold > 0:
            raise ValueError("entropy threshold must be positive")


def match_count(bin_img: BinaryImage, x: int, y: int) -> int:
    """Window pixels equal to the center at ``(x, y)``, center included."""
    if not (1 <= x < bin_img.width - 1 and 1 <= y < bin_img.height - 1):
        raise ValueError(f"({x}, {y}) is not an interior pixel")
    window = bin_img.bits[y - 1 : y + 2, x - 1 : x + 2]
    return int(np.count_nonzero(window == bin_img.bits[y, x]))


def central_pixel_entropy(count: int) -> float:
    if not 1 <= count <= WINDOW_SIZE:
        raise ValueError(f"match count {count} outside [1, 9]")
    return window_entropy(count / WINDOW_SIZE)


def is_edge(count: int, cfg: EdgeConfig = EdgeConfig()) -> bool:
    if not 1 <= count <= WINDOW_SIZE:
        raise ValueError(f"match count {count} outside [1, 9]")
    if cfg.mode is Mode.COUNT:
        return count <= MAX_EDGE_COUNT
    return central_pixel_entropy(count) >= cfg.entropy_threshold


def _decision_table(cfg: EdgeConfig) -> np.ndarray:
    # index 0 is unreachable: the center always matches itself
    table = np.zeros(WINDOW_SIZE + 1, dtype=np.uint8)
    for c in range(1, WINDOW_SIZE + 1):
        table[c] = is_edge(c, cfg)
    return table


def detect_edges(bin_img: BinaryImage, cfg: EdgeConfig = EdgeConfig()) -> BinaryImage:
    if bin_img.width < 3 or bin_img.height < 3:
        raise ValueError(
            f"edge detection needs at least a 3x3 image, got {bin_img.width}x{bin_img.height}"
        )
    counts = kernels.match_counts(bin_img.bits)
    if cfg.border is BorderPolicy.COPY:
        out = bin_img.bits.copy()
    else:
        out = np.zeros_like(bin_img.bits)
    out[1:-1, 1:-1] = _decision_table(cfg)[counts]
    return BinaryImage(out)
