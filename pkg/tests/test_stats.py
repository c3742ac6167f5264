import math
import random

import numpy as np
import pytest
from scipy import special
from scipy import stats as sps

from services.errors import DegenerateVarianceError, InsufficientDataError
from services.stats import (
    f_cdf,
    f_test_variance,
    regularized_incomplete_beta,
    summarize,
    t_two_sided_p,
    welch_t_test,
)

# observed collection moments: (fog mean, fog sd, flesch mean, flesch sd)
COLLECTION_MOMENTS = {
    "Bookm": (21.02, 3.37, 8.77, 14.44),
    "Cites": (19.83, 4.03, 15.80, 15.10),
    "Downl": (18.22, 3.86, 25.86, 13.48),
    "Control": (19.95, 4.18, 14.80, 15.96),
}


def _pairs():
    rng = np.random.default_rng(404)
    pairs = [
        ([1, 2, 3, 4, 5], [2, 4, 6, 8, 10]),
        ([2.5, 3.1, 2.9, 3.3], [1.0, 4.0, 2.0, 5.0, 3.0]),
        ([10, 11], [12, 13, 20]),
    ]
    for index in range(22):
        na, nb = int(rng.integers(2, 40)), int(rng.integers(2, 40))
        a = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 4), size=na)
        b = rng.normal(rng.uniform(-5, 5), rng.uniform(0.1, 4), size=nb)
        pairs.append((a.tolist(), b.tolist()))
    return pairs


PAIRS = _pairs()


def test_summarize_examples():
    summary = summarize([4.0, 34.0])
    assert summary.mean == 19.0
    assert summary.stddev == pytest.approx(21.2132, abs=1e-4)
    assert summarize([3.0] * 5).stddev == 0.0
    assert summarize(range(1, 1001)).mean == 500.5
    assert summarize([7.0]).stddev is None


def test_summarize_empty():
    with pytest.raises(InsufficientDataError):
        summarize([])


def test_welch_worked_example():
    result = welch_t_test([1, 2, 3, 4, 5], [2, 4, 6, 8, 10])
    assert result.statistic == pytest.approx(-1.8974, abs=1e-4)
    assert result.df[0] == pytest.approx(5.8824, abs=1e-4)
    assert not result.is_significant(0.05)


def test_welch_identical_samples():
    result = welch_t_test([1, 2, 3], [1, 2, 3])
    assert result.statistic == 0.0
    assert result.p_value == 1.0


def test_welch_degenerate_variance():
    same = welch_t_test([2, 2, 2], [2, 2])
    assert same.degenerate and same.statistic == 0.0 and same.p_value == 1.0
    apart = welch_t_test([2, 2, 2], [3, 3])
    assert apart.degenerate and apart.p_value == 0.0
    assert apart.statistic == -math.inf
    assert apart.significant_at == frozenset({0.05, 0.01, 0.001})


def test_tests_need_two_values_per_sample():
    with pytest.raises(InsufficientDataError):
        welch_t_test([1.0], [1.0, 2.0])
    with pytest.raises(InsufficientDataError):
        f_test_variance([1.0, 2.0], [1.0])


@pytest.mark.parametrize("a, b", PAIRS)
def test_welch_matches_reference(a, b):
    result = welch_t_test(a, b)
    reference = sps.ttest_ind(a, b, equal_var=False)
    va, vb = np.var(a, ddof=1) / len(a), np.var(b, ddof=1) / len(b)
    df = (va + vb) ** 2 / (va ** 2 / (len(a) - 1) + vb ** 2 / (len(b) - 1))
    assert result.statistic == pytest.approx(reference.statistic, rel=1e-6, abs=1e-6)
    assert result.df[0] == pytest.approx(df, rel=1e-6)
    assert result.p_value == pytest.approx(reference.pvalue, abs=1e-6)


@pytest.mark.parametrize("a, b", PAIRS)
def test_f_matches_reference(a, b):
    result = f_test_variance(a, b)
    ratio = np.var(a, ddof=1) / np.var(b, ddof=1)
    dfn, dfd = len(a) - 1, len(b) - 1
    cdf = sps.f.cdf(ratio, dfn, dfd)
    expected_p = min(1.0, 2.0 * min(cdf, sps.f.sf(ratio, dfn, dfd)))
    assert result.statistic == pytest.approx(ratio, rel=1e-9)
    assert result.df == (float(dfn), float(dfd))
    assert result.p_value == pytest.approx(expected_p, abs=1e-6)


def test_f_worked_example():
    a, b = [2, 4, 6, 8, 10], [1, 2, 3, 4, 5]
    assert summarize(a).variance == pytest.approx(10.0)
    assert summarize(b).variance == pytest.approx(2.5)
    result = f_test_variance(a, b)
    assert result.statistic == pytest.approx(4.0)
    assert result.df == (4.0, 4.0)


def test_f_identity_and_swap():
    a, b = PAIRS[1]
    same = f_test_variance(a, a)
    assert same.statistic == 1.0
    assert same.p_value == pytest.approx(1.0)
    forward, backward = f_test_variance(a, b), f_test_variance(b, a)
    assert backward.statistic == pytest.approx(1.0 / forward.statistic)
    assert backward.p_value == pytest.approx(forward.p_value, abs=1e-12)


def test_f_zero_variance():
    with pytest.raises(DegenerateVarianceError):
        f_test_variance([1.0, 1.0, 1.0], [1.0, 2.0])


def test_t_and_f_tails():
    assert t_two_sided_p(0.0, 10.0) == pytest.approx(1.0)
    assert t_two_sided_p(math.inf, 10.0) == 0.0
    assert t_two_sided_p(2.228138852, 10.0) == pytest.approx(0.05, abs=1e-8)
    assert f_cdf(0.0, 3.0, 4.0) == 0.0
    assert f_cdf(math.inf, 3.0, 4.0) == 1.0
    assert f_cdf(2.5, 3.0, 7.0) == pytest.approx(sps.f.cdf(2.5, 3, 7), abs=1e-12)


def test_incomplete_beta_matches_reference():
    rng = random.Random(8)
    for _ in range(500):
        x, a, b = rng.random(), rng.uniform(0.05, 60), rng.uniform(0.05, 60)
        assert regularized_incomplete_beta(x, a, b) == pytest.approx(special.betainc(a, b, x), abs=1e-10)


def test_incomplete_beta_symmetry():
    rng = random.Random(9)
    for _ in range(1000):
        x, a, b = rng.random(), rng.uniform(0.1, 50), rng.uniform(0.1, 50)
        total = regularized_incomplete_beta(x, a, b) + regularized_incomplete_beta(1.0 - x, b, a)
        assert total == pytest.approx(1.0, abs=1e-12)


def test_incomplete_beta_domain():
    assert regularized_incomplete_beta(0.0, 2.0, 3.0) == 0.0
    assert regularized_incomplete_beta(1.0, 2.0, 3.0) == 1.0
    with pytest.raises(ValueError):
        regularized_incomplete_beta(0.5, 0.0, 1.0)
    with pytest.raises(ValueError):
        regularized_incomplete_beta(1.5, 1.0, 1.0)


def _random_pair(rng):
    a = rng.normal(rng.uniform(-3, 3), rng.uniform(0.5, 3), size=int(rng.integers(3, 30)))
    b = rng.normal(rng.uniform(-3, 3), rng.uniform(0.5, 3), size=int(rng.integers(3, 30)))
    return a, b


def test_welch_antisymmetry():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        a, b = _random_pair(rng)
        forward, backward = welch_t_test(a, b), welch_t_test(b, a)
        assert backward.statistic == -forward.statistic
        assert backward.p_value == pytest.approx(forward.p_value, abs=1e-12)


def test_shift_and_scale_invariance():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        a, b = _random_pair(rng)
        shift, scale = rng.uniform(-50, 50), rng.uniform(0.1, 10)
        base_t, base_f = welch_t_test(a, b), f_test_variance(a, b)
        for ta, tb in ((a + shift, b + shift), (a * scale, b * scale)):
            moved_t, moved_f = welch_t_test(ta, tb), f_test_variance(ta, tb)
            assert moved_t.statistic == pytest.approx(base_t.statistic, rel=1e-9, abs=1e-9)
            assert moved_t.p_value == pytest.approx(base_t.p_value, rel=1e-9, abs=1e-9)
            assert moved_f.statistic == pytest.approx(base_f.statistic, rel=1e-9)
            assert moved_f.p_value == pytest.approx(base_f.p_value, rel=1e-9, abs=1e-9)


def _collection(rng, name, index, n=3000):
    mean, sd = COLLECTION_MOMENTS[name][index], COLLECTION_MOMENTS[name][index + 1]
    return rng.normal(mean, sd, size=n)


def test_collection_moments_bookmark_fog_is_significant():
    rng = np.random.default_rng(2012)
    result = welch_t_test(_collection(rng, "Bookm", 0), _collection(rng, "Control", 0))
    assert result.is_significant(0.001)


def test_collection_moments_marker_pattern():
    rng = np.random.default_rng(13)
    hits = 0
    for _ in range(100):
        fog_control = _collection(rng, "Control", 0)
        flesch_control = _collection(rng, "Control", 2)
        pattern = (
            welch_t_test(_collection(rng, "Bookm", 0), fog_control).p_value < 0.001,
            welch_t_test(_collection(rng, "Bookm", 2), flesch_control).p_value < 0.001,
            welch_t_test(_collection(rng, "Downl", 0), fog_control).p_value < 0.001,
            welch_t_test(_collection(rng, "Downl", 2), flesch_control).p_value < 0.001,
            welch_t_test(_collection(rng, "Cites", 0), fog_control).p_value >= 0.001,
        )
        hits += all(pattern)
    assert hits >= 95
