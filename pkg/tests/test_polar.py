import math

import numpy as np
import pytest

from modlab import analysis, polar


def test_power_of_two_enforced():
    with pytest.raises(ValueError):
        polar.PolarCode(mu=12, info_set=(), design_noise_power=1.0)
    with pytest.raises(ValueError):
        polar.construct(12, 0.5, 1.0)


def test_info_set_validation():
    with pytest.raises(ValueError):
        polar.PolarCode(mu=4, info_set=(2, 1), design_noise_power=1.0)
    with pytest.raises(ValueError):
        polar.PolarCode(mu=4, info_set=(4,), design_noise_power=1.0)


def test_rate_edges():
    assert polar.construct(16, 0.0, 1.0).info_set == ()
    assert polar.construct(16, 1.0, 1.0).info_set == tuple(range(16))
    with pytest.raises(ValueError):
        polar.construct(16, 1.2, 1.0)


def test_mu2_butterfly():
    code = polar.PolarCode(mu=2, info_set=(1,), design_noise_power=1.0)
    # info (1) -> u = (0, 1) -> transform (1, 1) -> modulated (-1, -1)
    assert np.array_equal(polar.polar_encode(np.array([1]), code), [-1, -1])
    assert np.array_equal(polar.polar_encode(np.array([0]), code), [1, 1])


def test_all_zero_info_is_all_plus_one():
    code = polar.construct(64, 0.5, 1.0)
    assert np.all(polar.polar_encode(np.zeros(code.k, dtype=np.int64), code) == 1)


def test_encode_length_check():
    code = polar.construct(8, 0.5, 1.0)
    with pytest.raises(ValueError):
        polar.polar_encode(np.zeros(3, dtype=np.int64), code)


def test_construction_deterministic():
    a = polar.construct(256, 0.4, 0.8)
    b = polar.construct(256, 0.4, 0.8)
    assert a.info_set == b.info_set
    assert a.k == round(256 * 0.4)


def test_noiseless_roundtrip():
    rng = np.random.default_rng(0)
    for mu, rate in ((64, 0.5), (128, 0.3), (256, 0.7)):
        code = polar.construct(mu, rate, 1.0)
        for _ in range(350):
            info = rng.integers(0, 2, code.k)
            x = polar.polar_encode(info, code)
            rec = polar.sc_decode(4.0 * x.astype(float), code)
            assert np.array_equal(rec, info)


def test_all_zero_llrs_decode_to_zero():
    code = polar.construct(32, 0.5, 1.0)
    rec = polar.sc_decode(np.zeros(32), code)
    assert np.all(rec == 0)
    rec2 = polar.sc_decode(np.zeros(32), code)
    assert np.array_equal(rec, rec2)


def test_sc_decode_rejects_nonfinite():
    code = polar.construct(8, 0.5, 1.0)
    llr = np.zeros(8)
    llr[3] = np.inf
    with pytest.raises(ValueError):
        polar.sc_decode(llr, code)


def _wer(code, sigma2, trials, seed):
    rng = np.random.default_rng(seed)
    errors = 0
    for _ in range(trials):
        info = rng.integers(0, 2, code.k)
        x = polar.polar_encode(info, code).astype(float)
        y = x + math.sqrt(sigma2) * rng.standard_normal(code.mu)
        rec = polar.sc_decode(2.0 * y / sigma2, code)
        errors += int(not np.array_equal(rec, info))
    return errors / trials


def test_wer_at_design_point():
    # 25% rate margin below capacity at the design noise keeps SC solidly
    # sub-5% word error at this length
    sigma2 = 0.5
    cap = analysis.biawgn_capacity(1.0 / sigma2)
    code = polar.construct(1024, 0.75 * cap, sigma2)
    assert _wer(code, sigma2, trials=1000, seed=7) <= 0.05


def test_wer_monotone_in_noise():
    sigma2 = 0.5
    cap = analysis.biawgn_capacity(1.0 / sigma2)
    code = polar.construct(256, 0.6 * cap, sigma2)
    wers = [_wer(code, s2, trials=400, seed=11) for s2 in (0.35, 0.55, 0.9)]
    assert wers[0] <= wers[1] <= wers[2]


def _genie_error_counts(llrs, u_true):
    # per-synthetic-channel first-error counts with all earlier decisions
    # forced correct; vectorized over the batch axis
    B, n = llrs.shape
    if n == 1:
        dec = (llrs[:, 0] < 0).astype(np.int64)
        return (dec != u_true[:, 0]).astype(np.int64)[:, None]
    half = n // 2
    a, b = llrs[:, :half], llrs[:, half:]
    left = _genie_error_counts(polar._f_op(a, b), u_true[:, :half])
    xa = polar._transform(u_true[:, :half])
    right = _genie_error_counts(polar._g_op(a, b, xa), u_true[:, half:])
    return np.concatenate([left, right], axis=1)


def test_construction_matches_monte_carlo_genie():
    # mu=1024, rate 1/2, sigma^2=1: the Gaussian-approximation ranking must
    # agree with a genie-aided Monte-Carlo oracle on >= 95% of the selected
    # channels
    mu, sigma2, trials = 1024, 1.0, 100_000
    code = polar.construct(mu, 0.5, sigma2)
    rng = np.random.default_rng(123)
    errs = np.zeros(mu)
    batch = 2000
    for _ in range(trials // batch):
        u = rng.integers(0, 2, (batch, mu))
        x = 1 - 2 * polar._transform(u)
        y = x + math.sqrt(sigma2) * rng.standard_normal((batch, mu))
        errs += _genie_error_counts(2.0 * y / sigma2, u).sum(axis=0)
    order = np.lexsort((-np.arange(mu), errs))
    mc_set = set(int(i) for i in order[:code.k])
    overlap = len(mc_set & set(code.info_set)) / code.k
    assert overlap >= 0.95
