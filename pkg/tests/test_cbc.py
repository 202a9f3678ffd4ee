import math

import numpy as np
import pytest

from latgen.cbc import (
    V_quality,
    construct_korobov_cbc,
    construct_standard_cbc,
    rader_scores,
)
from latgen.error import wce_product
from latgen.kernel import LN4, kernel_table, omega
from latgen.numtheory import GeneratingVector
from latgen.weights import GeneralWeights, ProductWeights, power_weights

W = ProductWeights(tuple(1.0 / j**2 for j in range(1, 11)))


def test_V_quality_direct_sum():
    N = 13
    v = GeneratingVector(N, (1, 5))
    w = ProductWeights((0.5, 0.25))
    total = 0.0
    for k in range(1, N):
        prod = 1.0
        for j, zj in enumerate(v.z, start=1):
            prod *= 1.0 + w.gamma(j) * omega(((k * zj) % N) / N)
        total += prod - 1.0
    assert V_quality(v, w) == pytest.approx(total, rel=1e-10, abs=1e-10)


def test_V_quality_general_weights_agrees_with_product():
    v = GeneratingVector(17, (1, 7, 5))
    w = ProductWeights((0.9, 0.5, 0.2))
    g = GeneralWeights.from_product(w)
    assert V_quality(v, g) == pytest.approx(V_quality(v, w), rel=1e-10, abs=1e-10)


@pytest.mark.parametrize("N", [5, 7, 13, 31, 61, 127])
def test_rader_scores_match_direct(N):
    rng = np.random.default_rng(N)
    q = rng.standard_normal(N - 1)
    kernel = kernel_table(N).values - LN4
    scores = rader_scores(q, kernel, N)
    tab = np.concatenate([[0.0], kernel])
    for z in range(1, N):
        direct = sum(q[k - 1] * tab[(k * z) % N] for k in range(1, N))
        assert scores[z - 1] == pytest.approx(direct, abs=1e-8)


def test_rader_scores_rejects_composite():
    with pytest.raises(ValueError):
        rader_scores(np.ones(7), np.ones(7), 8)


@pytest.mark.parametrize("N", [17, 31, 61])
def test_korobov_fast_equals_naive(N):
    fast = construct_korobov_cbc(N, 5, W, mode="fast")
    naive = construct_korobov_cbc(N, 5, W, mode="naive")
    assert fast.z == naive.z


@pytest.mark.parametrize("N", [16, 31, 32, 64, 128])
@pytest.mark.parametrize("alpha", [2.0, 2.5])
def test_standard_fast_equals_naive(N, alpha):
    w = power_weights(W, alpha)
    fast = construct_standard_cbc(N, 4, alpha, w, mode="fast")
    naive = construct_standard_cbc(N, 4, alpha, w, mode="naive")
    assert fast.z == naive.z


def test_korobov_greedy_is_componentwise_optimal():
    """Each z_d must minimize V over all candidates given the earlier ones."""
    N, s = 31, 4
    v = construct_korobov_cbc(N, s, W)
    for d in range(2, s + 1):
        chosen = V_quality(GeneratingVector(N, v.z[:d]), W)
        for cand in range(1, N):
            trial = V_quality(GeneratingVector(N, v.z[: d - 1] + (cand,)), W)
            assert chosen <= trial + 1e-9 * abs(trial)


def test_standard_greedy_is_componentwise_optimal():
    N, s, alpha = 32, 3, 2.0
    w = power_weights(W, alpha)
    v = construct_standard_cbc(N, s, alpha, w)
    for d in range(2, s + 1):
        chosen = wce_product(GeneratingVector(N, v.z[:d]), alpha, w)
        for cand in range(1, N, 2):
            trial = wce_product(
                GeneratingVector(N, v.z[: d - 1] + (cand,)), alpha, w
            )
            assert chosen <= trial + 1e-9 * abs(trial)


def test_constructions_are_nested():
    v5 = construct_korobov_cbc(61, 5, W)
    v3 = construct_korobov_cbc(61, 3, W)
    assert v5.z[:3] == v3.z
    u5 = construct_standard_cbc(64, 5, 2.0, W)
    u2 = construct_standard_cbc(64, 2, 2.0, W)
    assert u5.z[:2] == u2.z


def test_first_component_is_one():
    assert construct_korobov_cbc(13, 3, W).z[0] == 1
    assert construct_standard_cbc(16, 3, 2.0, W).z[0] == 1


def test_construct_rejects_bad_args():
    with pytest.raises(ValueError):
        construct_korobov_cbc(16, 2, W)  # not prime
    with pytest.raises(ValueError):
        construct_korobov_cbc(13, 11, W)  # weights too short
    with pytest.raises(ValueError):
        construct_standard_cbc(12, 2, 2.0, W)  # neither prime nor 2^n
    with pytest.raises(ValueError):
        construct_standard_cbc(16, 2, 1.0, W)  # alpha must exceed 1
    with pytest.raises(ValueError):
        construct_korobov_cbc(13, 2, W, mode="turbo")


def test_pow2_candidates_are_odd():
    v = construct_standard_cbc(64, 6, 2.0, W)
    assert all(z % 2 == 1 for z in v.z)
