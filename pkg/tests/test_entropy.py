import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from entedge.entropy import (
    EntropyUndefinedError,
    Histogram,
    build_histogram,
    class_stats,
    cumulative,
    pmf,
    self_information,
    window_entropy,
)
from entedge.imgio import GrayImage, gen_bimodal, gen_constant

probs = st.floats(min_value=1e-9, max_value=1.0, allow_nan=False)
histograms = st.lists(st.integers(0, 50), min_size=256, max_size=256).filter(lambda c: sum(c) > 0)


def test_self_information_anchors():
    assert self_information(1, 2) == 0
    assert self_information(0.5, 2) == pytest.approx(1, abs=1e-12)
    assert self_information(0.25) == pytest.approx(2, abs=1e-12)
    assert self_information(math.exp(-3), math.e) == pytest.approx(3, abs=1e-12)
    assert self_information(0.01, 10) == pytest.approx(2, abs=1e-12)


@pytest.mark.parametrize("p", [0, -0.1, 1.5])
def test_self_information_domain(p):
    with pytest.raises(ValueError):
        self_information(p)


@given(probs, probs)
def test_self_information_additive(p, q):
    assert self_information(p * q) == pytest.approx(
        self_information(p) + self_information(q), abs=1e-12
    )


def test_histogram_basic():
    h = build_histogram(gen_constant(2, 2, 5))
    assert h.counts[5] == 4 and h.counts.sum() == 4 and h.total == 4
    h = build_histogram(GrayImage.from_values(2, 2, [0, 255, 255, 0]))
    assert (h.counts[0], h.counts[255]) == (2, 2)
    img = gen_bimodal(17, 23, 50, 200, 30, 0.5, seed=9)
    assert build_histogram(img).counts.sum() == 17 * 23
    with pytest.raises(ValueError):
        Histogram(np.ones(256), 3)


def test_pmf_cases():
    p = pmf(build_histogram(gen_constant(3, 3, 9)))
    assert p[9] == 1 and p.sum() == 1
    p = pmf(build_histogram(GrayImage.from_values(2, 1, [10, 20])))
    assert (p[10], p[20]) == (0.5, 0.5)


@given(histograms)
def test_pmf_sums_to_one(counts):
    p = pmf(Histogram(counts, sum(counts)))
    assert abs(math.fsum(p) - 1) <= 1e-12


@given(histograms)
def test_cumulative_monotone(counts):
    p = pmf(Histogram(counts, sum(counts)))
    values = [cumulative(p, g) for g in range(256)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[-1] == pytest.approx(1, abs=1e-12)


def test_cumulative_point_mass():
    p = pmf(build_histogram(gen_constant(2, 2, 5)))
    assert cumulative(p, 4) == 0 and cumulative(p, 5) == 1
    with pytest.raises(ValueError):
        cumulative(p, 256)


def test_class_stats_point_masses():
    img = GrayImage.from_values(4, 1, [50, 50, 150, 150])
    s = class_stats(pmf(build_histogram(img)), 100)
    assert (s.p_foreground, s.p_background) == (0.5, 0.5)
    assert (s.h_foreground, s.h_background, s.h_total) == (0, 0, 0)


def test_class_stats_uniform():
    # closed form: entropy of a uniform distribution over 128 levels is ln(128)
    s = class_stats(np.full(256, 1 / 256), 127)
    assert s.h_foreground == pytest.approx(math.log(128), abs=1e-12)
    assert s.h_background == pytest.approx(math.log(128), abs=1e-12)
    assert s.h_total == pytest.approx(2 * math.log(128), abs=1e-12)


def test_class_stats_brute_force():
    # direct per-level evaluation of -sum q log q with q = p / P_class
    p = pmf(build_histogram(gen_bimodal(40, 40, 70, 170, 25, 0.4, seed=5)))
    for t in (60, 100, 128, 200):
        s = class_stats(p, t)
        pf = sum(p[: t + 1])
        hf = 0.0
        for g in range(t + 1):
            if p[g] > 0:
                hf -= (p[g] / pf) * math.log(p[g] / pf)
        assert s.h_foreground == pytest.approx(hf, abs=1e-10)


def test_class_stats_empty_class():
    p = pmf(build_histogram(gen_constant(2, 2, 100)))
    with pytest.raises(EntropyUndefinedError):
        class_stats(p, 50)
    with pytest.raises(EntropyUndefinedError):
        class_stats(p, 100)
    with pytest.raises(ValueError):
        class_stats(p, 255)


@given(histograms, st.integers(0, 254))
def test_class_stats_invariants(counts, t):
    p = pmf(Histogram(counts, sum(counts)))
    try:
        s = class_stats(p, t)
    except EntropyUndefinedError:
        return
    assert abs(s.p_foreground + s.p_background - 1) <= 1e-12
    assert s.h_total == s.h_foreground + s.h_background
    assert min(s.h_foreground, s.h_background) >= 0


def test_p_foreground_nondecreasing():
    p = pmf(build_histogram(gen_bimodal(30, 30, 50, 180, 40, 0.5, seed=1)))
    prev = -1.0
    for t in range(255):
        try:
            pf = class_stats(p, t).p_foreground
        except EntropyUndefinedError:
            continue
        assert pf >= prev
        prev = pf


@pytest.mark.parametrize(
    "p, expected",
    [(4 / 9, 0.3604), (2 / 9, 0.3342), (1.0, 0.0), (1 / 9, 0.244136)],
)
def test_window_entropy_anchors(p, expected):
    assert window_entropy(p) == pytest.approx(expected, abs=5e-5)


def test_window_entropy_shape():
    peak = 1 / math.e
    left = np.linspace(1e-6, peak, 200)
    right = np.linspace(peak, 1, 200)
    lv = [window_entropy(x) for x in left]
    rv = [window_entropy(x) for x in right]
    assert all(a < b for a, b in zip(lv, lv[1:]))
    assert all(a > b for a, b in zip(rv, rv[1:]))
    assert all(v > 0 for v in lv + rv[:-1])
    with pytest.raises(ValueError):
        window_entropy(0)
