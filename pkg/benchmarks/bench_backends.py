"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--size 512] [--repeats 5]
"""

import argparse

from entedge import kernels
from entedge.bench import time_backends
from entedge.imgio import gen_bimodal


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=512)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    img = gen_bimodal(args.size, args.size, 60, 180, 20, 0.5, seed=0)
    timings = time_backends(img, args.repeats)
    names = kernels.available_backends()
    print(f"{args.size}x{args.size} bimodal, best of {args.repeats}")
    print(f"{'kernel':<10}" + "".join(f"{n:>14}" for n in names))
    for label in ("sweep", "edges", "pipeline"):
        row = "".join(f"{timings[n][label] * 1e3:>12.2f}ms" for n in names)
        print(f"{label:<10}{row}")
    if "compiled" in timings:
        for label in ("sweep", "edges", "pipeline"):
            ratio = timings["python"][label] / timings["compiled"][label]
            print(f"{label}: python/compiled = {ratio:.2f}x")


if __name__ == "__main__":
    main()
