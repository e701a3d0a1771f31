import json
import math

import numpy as np
import pytest

from hopfcode.channel import (
    BLOCK,
    DECODERS,
    SimConfig,
    block_rng,
    draw_block,
    sigma_from_snr,
    simulate,
    snr_from_sigma,
    timing_probe,
)
from hopfcode.errors import DomainError, ResourceError
from hopfcode.schf import CodeSpec

C152 = CodeSpec(4, 0.5)


def test_sigma_snr_conversion():
    assert sigma_from_snr(math.inf, 4) == 0.0
    assert snr_from_sigma(0.0, 4) == math.inf
    # 0 dB at dim 4 means total noise energy 1
    assert sigma_from_snr(0.0, 4) == pytest.approx(0.5)
    for snr in (-3.0, 0.0, 7.5, 20.0):
        assert snr_from_sigma(sigma_from_snr(snr, 8), 8) == pytest.approx(snr, abs=1e-12)


def test_noise_calibration():
    sigma = sigma_from_snr(10.0, 4)
    z = np.concatenate([draw_block(3, 0, b, BLOCK, 10, 4, sigma)[1] for b in range(245)])
    assert z.size > 10**6
    assert np.var(z) == pytest.approx(sigma**2, rel=0.01)
    assert abs(np.mean(z)) < 0.01 * sigma


def test_streams_are_keyed():
    a = block_rng(1, 0, 0).standard_normal(5)
    np.testing.assert_array_equal(a, block_rng(1, 0, 0).standard_normal(5))
    assert not np.array_equal(a, block_rng(1, 0, 1).standard_normal(5))
    assert not np.array_equal(a, block_rng(1, 1, 0).standard_normal(5))
    assert not np.array_equal(a, block_rng(2, 0, 0).standard_normal(5))


def test_indices_are_uniform():
    idx, _ = draw_block(0, 0, 0, 100_000, 7, 4, 0.1)
    counts = np.bincount(idx, minlength=7)
    assert counts.min() > 0.95 * 100_000 / 7


@pytest.mark.parametrize("decoder", DECODERS)
def test_noiseless_channel_has_no_errors(decoder):
    rep = simulate(SimConfig(C152, [math.inf], 3000, decoder=decoder))
    assert rep.rows[0].errors == 0 and rep.rows[0].ser == 0.0


def test_deterministic_across_workers():
    base = dict(spec=C152, snr_db_list=[10.0, 14.0], trials_per_point=5000, seed=11)
    runs = [simulate(SimConfig(**base, workers=w)) for w in (1, 3, 8)]
    counts = [[r.errors for r in rep.rows] for rep in runs]
    assert counts[0] == counts[1] == counts[2]
    assert simulate(SimConfig(**base, workers=1)).rows[0].errors == counts[0][0]


def test_seed_changes_counts():
    a = simulate(SimConfig(C152, [8.0], 5000, seed=1)).rows[0].errors
    b = simulate(SimConfig(C152, [8.0], 5000, seed=2)).rows[0].errors
    assert a != b


def test_ser_non_increasing_in_snr():
    grid = [4.0, 8.0, 12.0, 16.0, 20.0, 24.0]
    for decoder in DECODERS:
        rep = simulate(SimConfig(C152, grid, 10_000, seed=7, decoder=decoder))
        sers = [r.ser for r in rep.rows]
        assert all(b <= a for a, b in zip(sers, sers[1:])), (decoder, sers)


def test_paired_trials_order_decoders():
    # every decoder sees the same words and noise, so ML can never lose
    grid = [12.0, 16.0]
    res = {d: simulate(SimConfig(C152, grid, 10_000, seed=5, decoder=d)) for d in DECODERS}
    for s in range(len(grid)):
        ml = res["ml"].rows[s].errors
        assert ml <= res["suboptimal-refined"].rows[s].errors <= res["suboptimal"].rows[s].errors


def test_report_formats():
    rep = simulate(SimConfig(C152, [10.0, math.inf], 2000, seed=4))
    lines = rep.to_csv().splitlines()
    assert lines[0] == "snr_db,trials,errors,ser,stderr"
    assert lines[2].startswith("inf,2000,0,0")
    doc = json.loads(rep.to_json())
    assert doc["config"]["snr_db_list"][0] == 10.0
    assert doc["rows"][0]["errors"] == rep.rows[0].errors
    row = rep.rows[0]
    assert row.stderr == pytest.approx(math.sqrt(row.ser * (1 - row.ser) / 2000))
    assert rep.seconds_per_word > 0


def test_config_validation():
    for bad in (dict(trials_per_point=0), dict(decoder="nope"), dict(workers=0), dict(seed=-1)):
        kw = dict(spec=C152, snr_db_list=[1.0], trials_per_point=10) | bad
        with pytest.raises(DomainError):
            SimConfig(**kw)


def test_ml_beyond_cap_is_a_resource_error():
    with pytest.raises(ResourceError):
        simulate(SimConfig(CodeSpec(8, 0.5), [10.0], 10, decoder="ml", cap=1000))


def test_large_code_without_codebook():
    # suboptimal decoding does not need the codebook in memory
    rep = simulate(SimConfig(CodeSpec(16, 0.5), [math.inf, 30.0], 500, decoder="suboptimal", cap=10))
    assert rep.rows[0].errors == 0


def test_timing_probe_shape():
    stats = timing_probe(CodeSpec(4, 0.7), trials=200, repeats=1)
    assert set(stats) == set(DECODERS)
    assert all(s.mean > 0 and s.median > 0 for s in stats.values())
