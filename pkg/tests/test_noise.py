import math

import numpy as np
import pytest

from jplse import InvalidInput
from jplse.noise import (
    NoiseModel,
    beta_n,
    check_condition_A,
    check_dyadic_bound,
    max_partial_stat,
    parse_model,
    sample_noise,
)


def brute_stat(x):
    best, arg = -1.0, None
    for i in range(len(x)):
        for j in range(i, len(x)):
            v = sum(x[i : j + 1]) ** 2 / (j - i + 1)
            if v > best:
                best, arg = v, (i + 1, j + 1)
    return best, arg


def test_model_validation():
    with pytest.raises(InvalidInput):
        NoiseModel("gaussian", sigma=0.0)
    with pytest.raises(InvalidInput):
        NoiseModel("subgaussian", alpha=1.0, zeta=1.0)
    with pytest.raises(InvalidInput):
        NoiseModel("moment", m=2.0)
    with pytest.raises(InvalidInput):
        NoiseModel("moment", m=3.0, dist="t", df=6.0)
    NoiseModel("moment", m=3.0, dist="t", df=8.0)
    NoiseModel("moment", m=3.0, dist="pareto", shape=7.0)


def test_parse_model():
    assert parse_model("gaussian:2").sigma == 2.0
    m = parse_model("subgaussian:1:0.5")
    assert (m.alpha, m.zeta) == (1.0, 0.5)
    assert parse_model("t:3:8").df == 8.0
    with pytest.raises(InvalidInput):
        parse_model("cauchy:1")


def test_sampling_is_reproducible_and_centred():
    m = NoiseModel("gaussian", sigma=1.0, seed=42)
    a = sample_noise(m, 1000, 3)
    np.testing.assert_array_equal(a, sample_noise(m, 1000, 3))
    assert not np.array_equal(a, sample_noise(m, 1000, 4))
    big = sample_noise(m, 10**6)
    assert abs(big.mean()) < 4 / math.sqrt(10**6)


@pytest.mark.parametrize("model", [
    NoiseModel("moment", m=3.0, dist="t", df=8.0, seed=1),
    NoiseModel("moment", m=3.0, dist="pareto", shape=8.0, seed=1),
    NoiseModel("subgaussian", alpha=0.5, zeta=0.3, seed=1),
])
def test_other_families_centred(model):
    x = sample_noise(model, 400_000)
    assert abs(x.mean()) < 6 * x.std() / math.sqrt(x.size)


def test_beta_examples():
    assert beta_n(NoiseModel("gaussian", sigma=1.0), 1000) == pytest.approx(13.8155, abs=1e-4)
    assert beta_n(NoiseModel("subgaussian", alpha=1.0, zeta=0.0), math.e) == pytest.approx(13.0)
    assert beta_n(NoiseModel("gaussian", sigma=2.0), math.e) == pytest.approx(8.0)
    m = NoiseModel("moment", m=4.0, dist="t", df=9.0)
    assert beta_n(m, 100) == pytest.approx((100 * math.log(100)) ** 0.5)
    with pytest.raises(InvalidInput):
        beta_n(m, 1)


def test_max_partial_examples():
    assert max_partial_stat([1, 1, 1, 1]) == (4.0, (1, 4))
    assert max_partial_stat([1, -1]) == (1.0, (1, 1))
    assert max_partial_stat([0, 1, 0], "DYADIC") == (1.0, (2, 2))
    assert max_partial_stat([0, 1, 0])[0] == 1.0


def test_exact_matches_enumeration(rng):
    for _ in range(100):
        x = rng.standard_normal(int(rng.integers(1, 15)))
        v, arg = max_partial_stat(x)
        bv, barg = brute_stat(list(x))
        assert v == pytest.approx(bv, rel=1e-12) and arg == barg


def test_dyadic_bounds_and_invariances(rng):
    for _ in range(200):
        x = rng.standard_t(3, int(rng.integers(1, 100)))
        e, _ = max_partial_stat(x)
        d, _ = max_partial_stat(x, "DYADIC")
        assert d <= e * (1 + 1e-12)
        assert max_partial_stat(-x)[0] == pytest.approx(e)
        assert max_partial_stat(x[::-1])[0] == pytest.approx(e)
        assert check_dyadic_bound(x)[2]


def test_single_spike():
    x = np.zeros(9)
    x[4] = -3.5
    assert max_partial_stat(x)[0] == pytest.approx(12.25)


def test_dyadic_examples():
    assert check_dyadic_bound(np.full(7, 2.0))[2]
    assert check_dyadic_bound([0, 1, 0]) == (1.0, 1.0, True)


def test_condition_a_examples(rng):
    d = check_condition_A(np.zeros(5), 0.1)
    assert d.passed and d.interval_means_ok
    d = check_condition_A([10.0], 1.0)
    assert not d.passed and d.argmax == (1, 1)
    for _ in range(50):
        x = rng.standard_normal(40)
        beta = float(rng.uniform(0.5, 8))
        d = check_condition_A(x, beta)
        assert d.passed == d.interval_means_ok
