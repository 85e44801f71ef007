"""End-to-end detectors: one global threshold, or one threshold per region.

Regions are thresholded independently, binarized, pasted back together,
and the edge detector then runs once over the whole assembled binary
image so windows straddle region seams.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .edgedetect import EdgeConfig, detect_edges
from .imgio import BinaryImage, GrayImage, Rect, assemble_regions, split_regions
from .threshold import ThresholdConfig, ThresholdReport, binarize, iterative_threshold


@dataclass(frozen=True)
class PipelineConfig:
    rows: int = 2
    cols: int = 2
    threshold: ThresholdConfig = field(default_factory=ThresholdConfig)
    edge: EdgeConfig = field(default_factory=EdgeConfig)
    seed: int = 0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")


@dataclass(frozen=True)
class PipelineResult:
    edges: BinaryImage
    binary: BinaryImage
    region_reports: Tuple[ThresholdReport, ...]
    regions: Tuple[Rect, ...]
    wall_time: float  # seconds

    @property
    def total_pixel_visits(self) -> int:
        return sum(r.pixel_visits for r in self.region_reports)

    @property
    def total_iterations(self) -> int:
        return sum(r.iterations for r in self.region_reports)

    @property
    def thresholds(self) -> List[int]:
        return [r.final_t for r in self.region_reports]


def baseline_config(seed: int = 0, edge: EdgeConfig = EdgeConfig()) -> PipelineConfig:
    """Single global threshold, start drawn from the full gray range."""
    return PipelineConfig(1, 1, ThresholdConfig(0, 255), edge, seed)


def proposed_config(seed: int = 0, edge: EdgeConfig = EdgeConfig()) -> PipelineConfig:
    """2x2 regions, starts drawn from [80, 140]."""
    return PipelineConfig(2, 2, ThresholdConfig(80, 140), edge, seed)


def region_rng(seed: int, region_index: int) -> np.random.Generator:
    """Random stream for one region.

    Seeded from the entropy pair ``(seed, region_index)`` through
    ``numpy.random.SeedSequence``, so streams do not depend on the order in
    which regions are processed.
    """
    return np.random.default_rng(np.random.SeedSequence([seed, region_index]))


def region_configs(cfg: PipelineConfig, inits) -> List[ThresholdConfig]:
    """Per-region threshold configs, pinning each region's start to ``inits``."""
    n = cfg.rows * cfg.cols
    if len(inits) != n:
        raise ValueError(f"{len(inits)} initial thresholds given for {n} regions")
    return [
        ThresholdConfig(cfg.threshold.init_low, cfg.threshold.init_high, t, cfg.threshold.max_iterations)
        for t in inits
    ]


def threshold_regions(
    img: GrayImage,
    cfg: PipelineConfig,
    region_thresholds: List[ThresholdConfig] = None,
    parallel: bool = False,
):
    """Threshold and binarize every region of ``img`` independently.

    ``region_thresholds`` optionally overrides ``cfg.threshold`` per region
    (row-major), which is how explicit per-region starts are supplied.
    Returns ``(reports, binaries, rects)`` in row-major region order.
    """
    parts = split_regions(img, cfg.rows, cfg.cols)
    if region_thresholds is None:
        region_thresholds = [cfg.threshold] * len(parts)
    elif len(region_thresholds) != len(parts):
        raise ValueError(f"{len(region_thresholds)} threshold configs for {len(parts)} regions")

    def work(index):
        sub, _ = parts[index]
        report = iterative_threshold(sub, region_thresholds[index], region_rng(cfg.seed, index))
        return report, binarize(sub, report.final_t)

    if parallel and len(parts) > 1:
        with ThreadPoolExecutor(max_workers=len(parts)) as pool:
            done = list(pool.map(work, range(len(parts))))
    else:
        done = [work(i) for i in range(len(parts))]
    return [r for r, _ in done], [b for _, b in done], [rect for _, rect in parts]


def run_pipeline(
    img: GrayImage,
    cfg: PipelineConfig,
    region_thresholds: List[ThresholdConfig] = None,
    parallel: bool = False,
) -> PipelineResult:
    """Threshold each region, assemble the binary image, detect edges."""
    if img.width < 3 or img.height < 3:
        raise ValueError(f"pipeline needs at least a 3x3 image, got {img.width}x{img.height}")
    start = time.perf_counter()
    reports, binaries, rects = threshold_regions(img, cfg, region_thresholds, parallel)
    binary = assemble_regions(zip(binaries, rects), img.width, img.height)
    edges = detect_edges(binary, cfg.edge)
    return PipelineResult(
        edges=edges,
        binary=binary,
        region_reports=tuple(reports),
        regions=tuple(rects),
        wall_time=time.perf_counter() - start,
    )
