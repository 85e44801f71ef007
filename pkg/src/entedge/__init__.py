"""Entropy-based edge detection for 8-bit grayscale images."""

from .edgedetect import BorderPolicy, EdgeConfig, Mode, detect_edges
from .imgio import BinaryImage, GrayImage, read_pgm, write_pgm
from .kernels import backend_name
from .pipeline import PipelineConfig, baseline_config, proposed_config, run_pipeline
from .threshold import ThresholdConfig, binarize, iterative_threshold

__all__ = [
    "BinaryImage",
    "BorderPolicy",
    "EdgeConfig",
    "GrayImage",
    "Mode",
    "PipelineConfig",
    "ThresholdConfig",
    "backend_name",
    "baseline_config",
    "binarize",
    "detect_edges",
    "iterative_threshold",
    "proposed_config",
    "read_pgm",
    "run_pipeline",
    "write_pgm",
]
