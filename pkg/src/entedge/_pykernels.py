"""numpy implementations of the hot loops, used when the extension is absent."""

import numpy as np


def threshold_step(a: np.ndarray, t: int):
    above = a > t
    n_above = int(np.count_nonzero(above))
    n_rest = a.size - n_above
    if n_above == 0 or n_rest == 0:
        return t, True
    sum_above = int(a[above].sum(dtype=np.int64))
    sum_rest = int(a.sum(dtype=np.int64)) - sum_above
    return (sum_above // n_above + sum_rest // n_rest) // 2, False


def match_counts(bits: np.ndarray) -> np.ndarray:
    rows, cols = bits.shape
    center = bits[1:-1, 1:-1]
    out = np.zeros((rows - 2, cols - 2), dtype=np.uint8)
    for dy in range(3):
        for dx in range(3):
            out += bits[dy : dy + rows - 2, dx : dx + cols - 2] == center
    return out
