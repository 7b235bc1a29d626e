import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rscover.code import crs_code, grs_code
from rscover.cover import chordal_distance, crs_cover, grs_cover
from rscover.sim import (estimate_avg_covering, nearest_codeword_exhaustive,
                         sample_complex_gaussian, sample_uniform_hamming, trial_rng,
                         write_trial_log)


def test_trial_rng_is_keyed_by_seed_and_trial():
    a = trial_rng(3, 10).integers(0, 1 << 30, 8)
    assert np.array_equal(a, trial_rng(3, 10).integers(0, 1 << 30, 8))
    assert not np.array_equal(a, trial_rng(3, 11).integers(0, 1 << 30, 8))
    assert not np.array_equal(a, trial_rng(4, 10).integers(0, 1 << 30, 8))


def test_uniform_sampler_chi_square():
    q = 7
    rng = trial_rng(0, 0)
    x = np.concatenate([sample_uniform_hamming(q, 6, rng) for _ in range(5000)])
    counts = np.bincount(x, minlength=q)
    exp = x.size / q
    chi2 = ((counts - exp) ** 2 / exp).sum()
    assert chi2 < 22.46  # 0.999 quantile at 6 dof
    assert x.min() >= 0 and x.max() < q


def test_gaussian_sampler_statistics():
    rng = trial_rng(1, 0)
    z = sample_complex_gaussian(200000, rng)
    assert abs(np.abs(z).mean() - 1) < 0.02
    assert abs(np.abs(z).var() - (4 / math.pi - 1)) < 0.01
    ph = np.sort((np.angle(z) + math.pi) / (2 * math.pi))
    ks = np.max(np.abs(ph - (np.arange(1, ph.size + 1) / ph.size)))
    assert ks < 1.95 / math.sqrt(ph.size)


def test_exhaustive_matches_double_loop():
    code = grs_code(5, 4, 2)
    cws = [(f, code.encode(f)) for f in itertools.product(range(5), repeat=2)]
    for y in itertools.product(range(5), repeat=4):
        best = min(int(sum(a != b for a, b in zip(y, c))) for _, c in cws)
        msg, d = nearest_codeword_exhaustive(code, list(y))
        assert d == best
        assert int(sum(a != b for a, b in zip(y, code.encode(msg)))) == d


def test_exhaustive_tie_goes_to_first_message():
    code = grs_code(5, 4, 2)
    msg, d = nearest_codeword_exhaustive(code, [0, 0, 0, 0])
    assert d == 0 and tuple(msg.padded(2)) == (0, 0)


def test_exhaustive_chordal_and_errors():
    code = crs_code(7, 6, 2)
    rng = trial_rng(0, 1)
    y = sample_complex_gaussian(6, rng)
    _, d = nearest_codeword_exhaustive(code, y)
    assert math.isclose(d, min(chordal_distance(y, c) for c in code.codebook), abs_tol=1e-12)
    with pytest.raises(ValueError):
        nearest_codeword_exhaustive(grs_code(31, 30, 5), [0] * 30)
    with pytest.raises(ValueError):
        nearest_codeword_exhaustive(code, y[:3])
    with pytest.raises(TypeError):
        nearest_codeword_exhaustive("code", y)


@settings(max_examples=30)
@given(st.integers(0, 2**32), st.sampled_from(["unique", "list"]))
def test_oracle_never_worse_than_cover(seed, mode):
    code = grs_code(7, 6, 3)
    y = sample_uniform_hamming(7, 6, trial_rng(seed, 0)).tolist()
    _, d = nearest_codeword_exhaustive(code, y)
    assert d <= grs_cover(code, y, mode).distance


@settings(max_examples=20)
@given(st.integers(0, 2**32))
def test_oracle_never_worse_than_crs_cover(seed):
    code = crs_code(7, 6, 3)
    rng = trial_rng(seed, 0)
    y = sample_complex_gaussian(6, rng)
    _, d = nearest_codeword_exhaustive(code, y)
    assert d <= crs_cover(code, y, "unique", rng=rng).distance + 1e-12


def test_estimator_k1_list_needs_no_punctures():
    r = estimate_avg_covering("hamming", grs_code(7, 6, 1), "list", trials=200, master_seed=0)
    assert r.mean_punctures == 0 and r.stderr_punctures == 0
    assert r.estimator == "hamming-cover-list"


def test_estimator_unique_k5_matches_closed_form():
    r = estimate_avg_covering("hamming", grs_code(7, 6, 5), "unique", trials=500, master_seed=0)
    assert abs(r.mean_punctures - 6 / 7) <= 3 * r.stderr_punctures


def test_estimator_crs_list_range():
    r = estimate_avg_covering("chordal", crs_code(7, 6, 4), "list", trials=500, master_seed=0)
    assert 0.6 <= r.mean <= 0.8


def test_estimator_oracle_agreement():
    r = estimate_avg_covering("hamming", grs_code(7, 6, 2), "list", trials=100, master_seed=2,
                              oracle=True)
    assert r.oracle_agreement is not None and 0 <= r.oracle_agreement <= 1
    assert all(x.oracle_distance <= x.distance for x in r.records)
    e = estimate_avg_covering("hamming", grs_code(7, 6, 2), trials=100, master_seed=2,
                              algorithm="exhaustive")
    assert math.isclose(e.mean, np.mean([x.oracle_distance for x in r.records]))


def test_estimator_workers_give_identical_records():
    code = grs_code(7, 6, 3)
    a = estimate_avg_covering("hamming", code, "list", trials=60, master_seed=5, workers=1)
    b = estimate_avg_covering("hamming", code, "list", trials=60, master_seed=5, workers=2)
    assert write_trial_log(a.records) == write_trial_log(b.records)
    assert (a.mean, a.stderr) == (b.mean, b.stderr)
    c = crs_code(7, 6, 3)
    a = estimate_avg_covering("chordal", c, "unique", trials=40, master_seed=5, workers=1)
    b = estimate_avg_covering("chordal", c, "unique", trials=40, master_seed=5, workers=3)
    assert write_trial_log(a.records) == write_trial_log(b.records)


def test_estimator_errors():
    code = grs_code(7, 6, 3)
    with pytest.raises(ValueError):
        estimate_avg_covering("hamming", code, trials=0)
    with pytest.raises(TypeError):
        estimate_avg_covering("chordal", code)
    with pytest.raises(TypeError):
        estimate_avg_covering("hamming", crs_code(7, 6, 3))
    with pytest.raises(ValueError):
        estimate_avg_covering("euclid", code)
    with pytest.raises(ValueError):
        estimate_avg_covering("hamming", code, algorithm="magic")


def test_trial_log_format(tmp_path):
    r = estimate_avg_covering("hamming", grs_code(5, 4, 2), trials=3, master_seed=0)
    text = write_trial_log(r.records, tmp_path / "log.csv")
    lines = text.splitlines()
    assert lines[0] == "trial,distance,punctures,oracle_distance,seed_offset"
    assert len(lines) == 4
    assert [ln.split(",")[0] for ln in lines[1:]] == ["0", "1", "2"]
    assert (tmp_path / "log.csv").read_text() == text
    d = r.to_dict()
    assert "records" not in d and d["trials"] == 3
    assert len(r.to_dict(with_records=True)["records"]) == 3
