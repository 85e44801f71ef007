import numpy as np
import pytest

from entedge.edgedetect import EdgeConfig, detect_edges
from entedge.imgio import GrayImage, gen_bimodal, gen_constant
from entedge.pipeline import (
    PipelineConfig,
    baseline_config,
    proposed_config,
    region_configs,
    region_rng,
    run_pipeline,
)
from entedge.threshold import ThresholdConfig, binarize, iterative_threshold

from .conftest import half_split


def direct(img, cfg):
    """Threshold, binarize and detect without going through the pipeline."""
    rep = iterative_threshold(img, cfg.threshold, region_rng(cfg.seed, 0))
    return rep, detect_edges(binarize(img, rep.final_t), cfg.edge)


def test_presets():
    b, p = baseline_config(3), proposed_config(3)
    assert (b.rows, b.cols, b.threshold.init_low, b.threshold.init_high) == (1, 1, 0, 255)
    assert (p.rows, p.cols, p.threshold.init_low, p.threshold.init_high) == (2, 2, 80, 140)
    assert b.edge == p.edge == EdgeConfig()
    assert b.seed == p.seed == 3


@pytest.mark.parametrize("seed", range(6))
def test_reduction_law(seed):
    img = gen_bimodal(23, 17, 50, 170, 25, 0.5, seed)
    cfg = baseline_config(seed)
    res = run_pipeline(img, cfg)
    rep, edges = direct(img, cfg)
    assert res.region_reports == (rep,)
    assert res.edges == edges


def test_constant_image():
    res = run_pipeline(gen_constant(10, 8, 77), proposed_config(0))
    assert all(r.degenerate for r in res.region_reports)
    assert len(res.region_reports) == 4
    assert res.edges.count() == 0


def test_two_value_fixture(backend):
    img = half_split(12, 8)
    cfg = proposed_config(0)
    res = run_pipeline(img, cfg, region_configs(cfg, [100] * 4))
    assert res.thresholds == [100] * 4
    expected = np.zeros((8, 12), int)
    expected[1:-1, 5:7] = 1
    assert res.edges.bits.tolist() == expected.tolist()


def test_seam_equivalence():
    # all regions converge to the same T, so the 2x2 result equals 1x1 with that T
    # random two-level image: every region holds both levels, whose only fixpoint is 100
    img = GrayImage(np.where(np.random.default_rng(1).random((30, 40)) < 0.5, 50, 150))
    res = run_pipeline(img, proposed_config(5))
    assert not any(r.degenerate for r in res.region_reports)
    ts = set(res.thresholds)
    assert ts == {100}
    (t,) = ts
    single = run_pipeline(img, PipelineConfig(1, 1, ThresholdConfig(explicit_init=t)))
    assert single.thresholds == [t]
    assert res.edges == single.edges


def test_edges_cross_seams():
    # a boundary exactly on the region seam is still detected
    img = half_split(12, 8)
    res = run_pipeline(img, PipelineConfig(1, 2, ThresholdConfig(explicit_init=100)))
    assert res.edges.bits[1:-1, 5:7].all()


def test_work_accounting():
    img = gen_bimodal(64, 64, 60, 180, 20, 0.5, seed=0)
    res = run_pipeline(img, proposed_config(1))
    assert res.total_pixel_visits == sum(r.iterations * 32 * 32 for r in res.region_reports)
    assert res.total_pixel_visits == sum(r.pixel_visits for r in res.region_reports)


def test_parallel_matches_sequential():
    img = gen_bimodal(90, 70, 60, 180, 25, 0.5, seed=4)
    for seed in range(4):
        cfg = PipelineConfig(3, 3, ThresholdConfig(80, 140), seed=seed)
        a = run_pipeline(img, cfg)
        b = run_pipeline(img, cfg, parallel=True)
        assert a.region_reports == b.region_reports
        assert a.edges == b.edges and a.binary == b.binary


def test_region_streams_independent_of_order():
    draws = [int(region_rng(9, i).integers(0, 256)) for i in range(4)]
    assert draws == [int(region_rng(9, i).integers(0, 256)) for i in reversed(range(4))][::-1]


def test_determinism():
    img = gen_bimodal(50, 50, 60, 180, 20, 0.5, seed=2)
    a = run_pipeline(img, proposed_config(8))
    b = run_pipeline(img, proposed_config(8))
    assert a.region_reports == b.region_reports and a.edges == b.edges


def test_errors():
    with pytest.raises(ValueError):
        run_pipeline(gen_constant(2, 5, 0), baseline_config())
    with pytest.raises(ValueError):
        run_pipeline(gen_constant(5, 5, 0), PipelineConfig(6, 1))
    with pytest.raises(ValueError):
        region_configs(proposed_config(), [1, 2, 3])
    with pytest.raises(ValueError):
        PipelineConfig(0, 1)


def test_generalized_grid():
    img = gen_bimodal(31, 29, 60, 180, 20, 0.5, seed=6)
    res = run_pipeline(img, PipelineConfig(3, 4, seed=2))
    assert len(res.region_reports) == 12
    assert (res.edges.height, res.edges.width) == (29, 31)
    assert sum(h * w for _, _, h, w in res.regions) == img.size
