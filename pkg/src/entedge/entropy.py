"""Histograms, probabilities and Shannon entropies of gray-level data.

Class and window entropies use natural logarithms; self-information takes
an explicit base and defaults to bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .imgio import MAX_GRAY, GrayImage

LEVELS = MAX_GRAY + 1


class EntropyUndefinedError(ValueError):
    """A class has zero probability, so its normalized entropy is undefined."""


def _check_probability(p: float) -> None:
    if not 0.0 < p <= 1.0:
        raise ValueError(f"probability must lie in (0, 1], got {p}")


def self_information(p: float, base: float = 2) -> float:
    """Information content ``-log_base(p)`` of an event with probability ``p``."""
    _check_probability(p)
    if base <= 0 or base == 1:
        raise ValueError(f"invalid logarithm base {base}")
    if base == 2:
        log_p = math.log2(p)
    elif base == math.e:
        log_p = math.log(p)
    else:
        log_p = math.log(p) / math.log(base)
    return 0.0 - log_p


@dataclass(frozen=True, eq=False)
class Histogram:
    counts: np.ndarray
    total: int

    def __post_init__(self):
        counts = np.array(self.counts, dtype=np.int64)
        if counts.shape != (LEVELS,):
            raise ValueError(f"histogram needs {LEVELS} bins, got {counts.shape}")
        if (counts < 0).any():
            raise ValueError("negative histogram count")
        if int(counts.sum()) != self.total:
            raise ValueError("histogram counts do not sum to total")
        counts.setflags(write=False)
        object.__setattr__(self, "counts", counts)

    def pmf(self) -> np.ndarray:
        return pmf(self)

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return self.total == other.total and np.array_equal(self.counts, other.counts)

    __hash__ = None


def build_histogram(img: GrayImage) -> Histogram:
    counts = np.bincount(img.pixels.ravel(), minlength=LEVELS)
    return Histogram(counts, img.size)


def pmf(hist: Histogram) -> np.ndarray:
    """Normalized histogram ``p(g) = counts[g] / total``."""
    if hist.total <= 0:
        raise ValueError("empty histogram has no pmf")
    return hist.counts / hist.total


def cumulative(p: np.ndarray, g: int) -> float:
    """``P(g) = sum(p[0..g])``."""
    if not 0 <= g <= MAX_GRAY:
        raise ValueError(f"gray level {g} outside [0, 255]")
    return float(math.fsum(p[: g + 1]))


def _class_entropy(p_class: np.ndarray, mass: float) -> float:
    q = p_class[p_class > 0] / mass
    return float(-np.sum(q * np.log(q))) + 0.0


@dataclass(frozen=True)
class ClassStats:
    p_foreground: float
    p_background: float
    h_foreground: float
    h_background: float
    h_total: float


def class_stats(p: np.ndarray, t: int) -> ClassStats:
    """Class probabilities and entropies for the split ``g <= t`` / ``g > t``.

    Each class entropy is taken over the class-normalized distribution
    ``p(g) / P_class`` with ``0 log 0 = 0``.

    Raises
    ------
    EntropyUndefinedError
        If either class carries zero probability at ``t``.
    """
    if not 0 <= t < MAX_GRAY:
        raise ValueError(f"threshold {t} outside [0, 254]")
    p = np.asarray(p, dtype=np.float64)
    fg, bg = p[: t + 1], p[t + 1 :]
    pf = float(math.fsum(fg))
    pb = float(math.fsum(bg))
    if pf <= 0.0 or pb <= 0.0:
        side = "foreground" if pf <= 0.0 else "background"
        raise EntropyUndefinedError(f"{side} class is empty at T={t}")
    hf = _class_entropy(fg, pf)
    hb = _class_entropy(bg, pb)
    return ClassStats(pf, pb, hf, hb, hf + hb)


def window_entropy(p: float) -> float:
    """``-p ln p``, the entropy contribution of a window pixel class."""
    _check_probability(p)
    return -p * math.log(p) + 0.0
