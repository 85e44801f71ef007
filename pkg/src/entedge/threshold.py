"""Iterative mean-split global thresholding.

The update map is ``T <- floor((floor(mean(A > T)) + floor(mean(A <= T))) / 2)``,
evaluated in integer arithmetic and repeated until it stops moving.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Set, Tuple

import numpy as np

from . import kernels
from .imgio import MAX_GRAY, BinaryImage, GrayImage

DEFAULT_INIT_LOW = 80
DEFAULT_INIT_HIGH = 140
DEFAULT_MAX_ITERATIONS = 256


@dataclass(frozen=True)
class ThresholdConfig:
    init_low: int = DEFAULT_INIT_LOW
    init_high: int = DEFAULT_INIT_HIGH
    explicit_init: Optional[int] = None
    max_iterations: int = DEFAULT_MAX_ITERATIONS

    def __post_init__(self):
        if not 0 <= self.init_low <= self.init_high <= MAX_GRAY:
            raise ValueError(
                f"init range [{self.init_low}, {self.init_high}] must satisfy 0 <= lo <= hi <= 255"
            )
        if self.explicit_init is not None and not 0 <= self.explicit_init <= MAX_GRAY:
            raise ValueError(f"explicit init {self.explicit_init} outside [0, 255]")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")


@dataclass(frozen=True)
class ThresholdReport:
    init_t: int
    final_t: int
    iterations: int
    pixel_visits: int
    converged: bool
    degenerate: bool


def draw_init(cfg: ThresholdConfig, rng: np.random.Generator) -> int:
    """Starting threshold: ``explicit_init`` if set, else uniform on the init range.

    The generator is left untouched when ``explicit_init`` is given.
    """
    if cfg.explicit_init is not None:
        return cfg.explicit_init
    return int(rng.integers(cfg.init_low, cfg.init_high, endpoint=True))


def threshold_step(img: GrayImage, t: int) -> Tuple[int, bool]:
    """One application of the update map.

    Returns ``(next, degenerate)``.  When either class is empty the step is
    degenerate and ``next == t``.
    """
    nxt, degenerate = kernels.threshold_step(img.pixels, t)
    return int(nxt), bool(degenerate)


def iterative_threshold(
    img: GrayImage, cfg: ThresholdConfig, rng: Optional[np.random.Generator] = None
) -> ThresholdReport:
    """Iterate the update map from a drawn start until it reaches a fixpoint.

    Stops when a step returns its input (converged), when a step is
    degenerate (converged, flagged degenerate, ``final_t`` unchanged), or
    after ``cfg.max_iterations`` steps (not converged).  At least one step
    always runs.
    """
    if rng is None:
        rng = np.random.default_rng()
    init = draw_init(cfg, rng)
    current = init
    iterations = 0
    converged = degenerate = False
    while iterations < cfg.max_iterations:
        nxt, degenerate = threshold_step(img, current)
        iterations += 1
        if degenerate or nxt == current:
            converged = True
            break
        current = nxt
    return ThresholdReport(
        init_t=init,
        final_t=current,
        iterations=iterations,
        pixel_visits=iterations * img.size,
        converged=converged,
        degenerate=degenerate,
    )


def binarize(img: GrayImage, t: int) -> BinaryImage:
    """1 where ``pixel >= t``, else 0."""
    if not 0 <= t <= MAX_GRAY:
        raise ValueError(f"threshold {t} outside [0, 255]")
    return BinaryImage((img.pixels >= t).view(np.uint8))


def fixpoint_set(img: GrayImage) -> Set[int]:
    """Every non-degenerate fixpoint of the update map, by exhaustive search."""
    found = set()
    for t in range(MAX_GRAY + 1):
        nxt, degenerate = threshold_step(img, t)
        if not degenerate and nxt == t:
            found.add(t)
    return found
