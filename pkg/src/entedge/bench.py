"""Experiment harness: init-threshold sweeps, pipeline comparisons, CSV output.

Pixel visits are the deterministic cost metric.  Wall times are recorded
for information only.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

from . import kernels
from .imgio import GrayImage
from .pipeline import baseline_config, proposed_config, run_pipeline
from .threshold import ThresholdConfig, iterative_threshold, threshold_step

SWEEP_HEADER = ("init_t", "final_t", "iterations", "converged", "degenerate")
COMPARE_HEADER = (
    "seed",
    "variant",
    "total_iterations",
    "total_pixel_visits",
    "wall_time_micros",
    "thresholds",
)
VARIANTS = ("baseline", "proposed")


@dataclass(frozen=True)
class SweepRow:
    init_t: int
    final_t: int
    iterations: int
    converged: bool
    degenerate: bool


@dataclass(frozen=True)
class CompareRow:
    seed: int
    variant: str
    total_iterations: int
    total_pixel_visits: int
    wall_time_micros: int
    final_thresholds: Tuple[int, ...]


def sweep_init(img: GrayImage, lo: int = 0, hi: int = 255) -> List[SweepRow]:
    """Run the threshold iteration from every start in ``[lo, hi]``."""
    if lo > hi:
        raise ValueError(f"empty sweep range {lo}:{hi}")
    rows = []
    for t in range(lo, hi + 1):
        rep = iterative_threshold(img, ThresholdConfig(explicit_init=t))
        rows.append(SweepRow(t, rep.final_t, rep.iterations, rep.converged, rep.degenerate))
    return rows


def sweep_fixpoint_violations(img: GrayImage, rows: Sequence[SweepRow]) -> List[SweepRow]:
    """Rows claiming a non-degenerate convergence whose final T is not a fixpoint."""
    bad = []
    for r in rows:
        if r.converged and not r.degenerate and threshold_step(img, r.final_t) != (r.final_t, False):
            bad.append(r)
    return bad


def mean_iterations(rows: Sequence[SweepRow], lo: int, hi: int) -> float:
    picked = [r.iterations for r in rows if lo <= r.init_t <= hi]
    if not picked:
        raise ValueError(f"no sweep rows in [{lo}, {hi}]")
    return statistics.fmean(picked)


def compare_pipelines(
    img: GrayImage,
    seeds: Sequence[int],
    repetitions: int = 5,
    parallel: bool = False,
) -> List[CompareRow]:
    """Run the baseline and proposed pipelines once per seed.

    Counters come from the first repetition (they are identical across
    repetitions); wall time is the median over ``repetitions`` runs.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be positive")
    rows = []
    for seed in seeds:
        for variant, make in (("baseline", baseline_config), ("proposed", proposed_config)):
            cfg = make(seed)
            results = [run_pipeline(img, cfg, parallel=parallel) for _ in range(repetitions)]
            first = results[0]
            rows.append(
                CompareRow(
                    seed=seed,
                    variant=variant,
                    total_iterations=first.total_iterations,
                    total_pixel_visits=first.total_pixel_visits,
                    wall_time_micros=round(statistics.median(r.wall_time for r in results) * 1e6),
                    final_thresholds=tuple(first.thresholds),
                )
            )
    return rows


def summarize(rows: Sequence[CompareRow]) -> Dict[str, float]:
    """Mean total pixel visits per variant."""
    out = {}
    for variant in VARIANTS:
        visits = [r.total_pixel_visits for r in rows if r.variant == variant]
        if visits:
            out[variant] = statistics.fmean(visits)
    return out


def _flag(b: bool) -> str:
    return "true" if b else "false"


def _parse_flag(s: str) -> bool:
    if s not in ("true", "false"):
        raise ValueError(f"bad boolean field {s!r}")
    return s == "true"


def write_csv(rows: Sequence[Union[SweepRow, CompareRow]], kind: str = None) -> bytes:
    """Serialize sweep or compare rows.

    ``kind`` ("sweep" or "compare") is only needed to pick the header for
    an empty list; otherwise it is inferred from the rows.
    """
    if kind is None:
        if not rows:
            raise ValueError("cannot infer CSV kind from an empty row list")
        kind = "sweep" if isinstance(rows[0], SweepRow) else "compare"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if kind == "sweep":
        writer.writerow(SWEEP_HEADER)
        for r in rows:
            writer.writerow(
                [r.init_t, r.final_t, r.iterations, _flag(r.converged), _flag(r.degenerate)]
            )
    elif kind == "compare":
        writer.writerow(COMPARE_HEADER)
        for r in rows:
            writer.writerow(
                [
                    r.seed,
                    r.variant,
                    r.total_iterations,
                    r.total_pixel_visits,
                    r.wall_time_micros,
                    ";".join(map(str, r.final_thresholds)),
                ]
            )
    else:
        raise ValueError(f"unknown CSV kind {kind!r}")
    return buf.getvalue().encode("utf-8")


def read_csv(data: bytes) -> List[Union[SweepRow, CompareRow]]:
    reader = csv.reader(io.StringIO(data.decode("utf-8")))
    header = tuple(next(reader))
    if header == SWEEP_HEADER:
        return [
            SweepRow(int(a), int(b), int(c), _parse_flag(d), _parse_flag(e))
            for a, b, c, d, e in reader
        ]
    if header == COMPARE_HEADER:
        return [
            CompareRow(
                int(seed),
                variant,
                int(iters),
                int(visits),
                int(micros),
                tuple(int(t) for t in thresholds.split(";") if t),
            )
            for seed, variant, iters, visits, micros, thresholds in reader
        ]
    raise ValueError(f"unrecognized CSV header {header!r}")


def time_backends(img: GrayImage, repeats: int = 5) -> Dict[str, Dict[str, float]]:
    """Best-of-``repeats`` seconds per kernel for every available backend.

    Times one full ``sweep_init`` (256 threshold iterations) and one
    ``detect_edges`` pass of the proposed pipeline.
    """
    from .edgedetect import detect_edges
    from .threshold import binarize

    binary = binarize(img, 128)
    timings = {}
    for name in kernels.available_backends():
        with kernels.backend(name):
            entry = {}
            for label, fn in (
                ("sweep", lambda: sweep_init(img)),
                ("edges", lambda: detect_edges(binary)),
                ("pipeline", lambda: run_pipeline(img, proposed_config(0))),
            ):
                best = float("inf")
                for _ in range(repeats):
                    t0 = time.perf_counter()
                    fn()
                    best = min(best, time.perf_counter() - t0)
                entry[label] = best
            timings[name] = entry
    return timings
