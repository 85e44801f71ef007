"""Command-line interface.

Exit status is 0 on success, 1 on I/O or file-format failures and 2 on
bad arguments or violated preconditions.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys

from . import bench
from .edgedetect import BorderPolicy, EdgeConfig, Mode
from .imgio import (
    PgmError,
    binary_to_gray,
    gen_bimodal,
    gen_checkerboard,
    gen_constant,
    load_pgm,
    save_pgm,
)
from .pipeline import PipelineConfig, region_configs, run_pipeline, threshold_regions
from .threshold import ThresholdConfig

REPORT_HEADER = (
    "region",
    "top",
    "left",
    "height",
    "width",
    "init_t",
    "final_t",
    "iterations",
    "pixel_visits",
    "converged",
    "degenerate",
)


class UsageError(ValueError):
    pass


def _pair(text: str, sep: str, what: str):
    try:
        a, b = text.lower().split(sep)
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must look like A{sep}B, got {text!r}") from None


def _grid(text):
    return _pair(text, "x", "grid")


def _range(text):
    return _pair(text, ":", "range")


def _size(text):
    return _pair(text, "x", "size")


def _init_list(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--init-t must be comma-separated integers, got {text!r}") from None


def _add_region_args(p):
    p.add_argument("--input", required=True, help="input PGM (P2 or P5)")
    p.add_argument("--grid", type=_grid, default=(2, 2), metavar="RxC", help="region grid (default 2x2)")
    p.add_argument("--init-range", type=_range, default=(80, 140), metavar="LO:HI",
                   help="range for random initial thresholds (default 80:140)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--init-t", type=_init_list, metavar="T1[,T2,...]",
                   help="explicit initial threshold per region, row-major; disables randomness")
    p.add_argument("--parallel", action="store_true", help="threshold regions concurrently")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="entedge", description="Entropy-based edge detection for grayscale PGM images.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="threshold per region, then detect edges")
    _add_region_args(p)
    p.add_argument("--output", required=True, help="edge map PGM to write")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="count")
    p.add_argument("--entropy-threshold", type=float, default=0.2441)
    p.add_argument("--border", choices=[b.value for b in BorderPolicy], default="zero")
    p.add_argument("--report", help="write per-region threshold reports as CSV")
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")

    p = sub.add_parser("threshold", help="report per-region thresholds only")
    _add_region_args(p)

    p = sub.add_parser("sweep", help="iterations for every initial threshold in a range")
    p.add_argument("--input", required=True)
    p.add_argument("--range", type=_range, default=(0, 255), metavar="LO:HI")
    p.add_argument("--out", required=True)

    p = sub.add_parser("bench", help="compare baseline and 2x2 pipelines over seeds")
    p.add_argument("--input", required=True)
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--out", required=True)
    p.add_argument("--parallel", action="store_true")

    p = sub.add_parser("synth", help="write a synthetic test image")
    p.add_argument("--kind", choices=["constant", "checkerboard", "bimodal"], required=True)
    p.add_argument("--size", type=_size, required=True, metavar="WxH")
    p.add_argument("--value", type=int, default=128, help="constant: gray value")
    p.add_argument("--cell", type=int, default=8, help="checkerboard: cell size")
    p.add_argument("--lo", type=int, default=0, help="checkerboard: dark value")
    p.add_argument("--hi", type=int, default=255, help="checkerboard: bright value")
    p.add_argument("--mu1", type=float, default=60)
    p.add_argument("--mu2", type=float, default=180)
    p.add_argument("--sigma", type=float, default=20)
    p.add_argument("--mix", type=float, default=0.5, help="bimodal: fraction drawn from mu1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--ascii", action="store_true")
    return parser


def _pipeline_setup(args):
    rows, cols = args.grid
    lo, hi = args.init_range
    cfg = PipelineConfig(
        rows=rows,
        cols=cols,
        threshold=ThresholdConfig(lo, hi),
        edge=EdgeConfig(
            mode=getattr(args, "mode", "count"),
            entropy_threshold=getattr(args, "entropy_threshold", 0.2441),
            border=getattr(args, "border", "zero"),
        ),
        seed=args.seed,
    )
    overrides = None
    if args.init_t is not None:
        if len(args.init_t) != rows * cols:
            raise UsageError(f"--init-t has {len(args.init_t)} values but the grid has {rows * cols} regions")
        overrides = region_configs(cfg, args.init_t)
    return cfg, overrides


def _summary_line(reports) -> str:
    ts = " ".join(str(r.final_t) for r in reports)
    its = " ".join(str(r.iterations) for r in reports)
    return f"T: {ts} ; iters: {its}"


def _warn_degenerate(reports):
    for i, r in enumerate(reports, 1):
        if r.degenerate:
            print(f"region {i}: degenerate, one class empty; T kept at {r.final_t}", file=sys.stderr)
        elif not r.converged:
            print(f"region {i}: no fixpoint after {r.iterations} iterations", file=sys.stderr)


def report_csv(reports, rects) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_HEADER)
    for i, (r, (top, left, h, wd)) in enumerate(zip(reports, rects)):
        w.writerow([i, top, left, h, wd, r.init_t, r.final_t, r.iterations, r.pixel_visits,
                    "true" if r.converged else "false", "true" if r.degenerate else "false"])
    return buf.getvalue().encode("utf-8")


def cmd_detect(args):
    img = load_pgm(args.input)
    cfg, overrides = _pipeline_setup(args)
    result = run_pipeline(img, cfg, overrides, parallel=args.parallel)
    save_pgm(args.output, binary_to_gray(result.edges), ascii=args.ascii)
    if args.report:
        with open(args.report, "wb") as fh:
            fh.write(report_csv(result.region_reports, result.regions))
    _warn_degenerate(result.region_reports)
    print(_summary_line(result.region_reports))


def cmd_threshold(args):
    img = load_pgm(args.input)
    cfg, overrides = _pipeline_setup(args)
    reports, _, _ = threshold_regions(img, cfg, overrides, parallel=args.parallel)
    _warn_degenerate(reports)
    print(_summary_line(reports))


def cmd_sweep(args):
    img = load_pgm(args.input)
    lo, hi = args.range
    if not 0 <= lo <= hi <= 255:
        raise UsageError(f"--range {lo}:{hi} must satisfy 0 <= LO <= HI <= 255")
    rows = bench.sweep_init(img, lo, hi)
    with open(args.out, "wb") as fh:
        fh.write(bench.write_csv(rows, kind="sweep"))


def cmd_bench(args):
    img = load_pgm(args.input)
    if args.seeds < 1 or args.reps < 1:
        raise UsageError("--seeds and --reps must be positive")
    rows = bench.compare_pipelines(img, range(args.seeds), args.reps, parallel=args.parallel)
    with open(args.out, "wb") as fh:
        fh.write(bench.write_csv(rows, kind="compare"))
    means = bench.summarize(rows)
    print("mean_pixel_visits " + " ".join(f"{v}={means[v]:.1f}" for v in bench.VARIANTS))


def cmd_synth(args):
    w, h = args.size
    if w < 1 or h < 1:
        raise UsageError("--size must be positive")
    if args.kind == "constant":
        img = gen_constant(w, h, args.value)
    elif args.kind == "checkerboard":
        img = gen_checkerboard(w, h, args.cell, args.lo, args.hi)
    else:
        img = gen_bimodal(w, h, args.mu1, args.mu2, args.sigma, args.mix, args.seed)
    save_pgm(args.out, img, ascii=args.ascii)


COMMANDS = {
    "detect": cmd_detect,
    "threshold": cmd_threshold,
    "sweep": cmd_sweep,
    "bench": cmd_bench,
    "synth": cmd_synth,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except (OSError, PgmError) as exc:
        print(f"entedge: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"entedge: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
