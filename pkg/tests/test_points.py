import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from softrgg.errors import DomainError
from softrgg.points import (
    PointConfiguration,
    SeedSpec,
    WindowParams,
    pair_uniform,
    pair_uniform_batch,
    sample_point_configuration,
)

U64 = st.integers(min_value=0, max_value=2**64 - 1)


def test_window_rejects_nonpositive_n():
    with pytest.raises(DomainError):
        WindowParams(0)
    with pytest.raises(DomainError):
        WindowParams(-3)


def test_seed_spec_rejects_out_of_range():
    with pytest.raises(DomainError):
        SeedSpec(-1, 0)
    with pytest.raises(DomainError):
        SeedSpec(0, 2**64)


def test_configuration_rejects_unsorted_and_out_of_window():
    w = WindowParams(5)
    with pytest.raises(DomainError):
        PointConfiguration(w, np.array([1.0, 0.5]))
    with pytest.raises(DomainError):
        PointConfiguration(w, np.array([0.0, 0.0]))
    with pytest.raises(DomainError):
        PointConfiguration(w, np.array([-6.0, 0.0]))


@given(st.integers(min_value=1, max_value=500), U64, U64)
@settings(max_examples=50)
def test_sample_is_sorted_simple_and_in_window(n, master, stream):
    w = WindowParams(n)
    pc = sample_point_configuration(w, SeedSpec(master, stream))
    pos = pc.positions
    if pos.size:
        assert pos[0] >= -n and pos[-1] <= n
    if pos.size > 1:
        assert np.all(np.diff(pos) > 0)


def test_sample_is_deterministic():
    w = WindowParams(100)
    s = SeedSpec(987654321, 13)
    a = sample_point_configuration(w, s)
    b = sample_point_configuration(w, s)
    assert np.array_equal(a.positions, b.positions)


def test_point_count_moments_match_window_length():
    # mean and variance of the count must both be close to 2n
    w = WindowParams(25)
    m = 10_000
    counts = np.array(
        [len(sample_point_configuration(w, SeedSpec(4242, sid))) for sid in range(m)],
        dtype=np.float64,
    )
    lam = w.length
    se_mean = math.sqrt(lam / m)
    assert abs(counts.mean() - lam) <= 4 * se_mean
    # Var of the sample variance of Poisson: approx (lam + 2 lam^2) ... use
    # 4 relative-ish standard errors via the fourth-moment bound
    se_var = math.sqrt((lam + 2 * lam**2) / m)
    assert abs(counts.var(ddof=1) - lam) <= 4 * se_var


def test_small_window_mean_count_is_two():
    w = WindowParams(1)
    m = 20_000
    total = sum(len(sample_point_configuration(w, SeedSpec(7, sid))) for sid in range(m))
    assert abs(total / m - 2.0) <= 4 * math.sqrt(2.0 / m)


@given(U64, U64, st.integers(0, 2**40), st.integers(0, 2**40))
@settings(max_examples=100)
def test_pair_uniform_symmetric_and_in_range(master, stream, i, j):
    if i == j:
        j += 1
    s = SeedSpec(master, stream)
    u = pair_uniform(s, i, j)
    assert 0.0 <= u < 1.0
    assert u == pair_uniform(s, j, i)


def test_pair_uniform_rejects_self_loop():
    with pytest.raises(DomainError):
        pair_uniform(SeedSpec(0, 0), 4, 4)


def test_pair_uniform_distinct_seeds_differ():
    assert pair_uniform(SeedSpec(1, 0), 3, 7) != pair_uniform(SeedSpec(2, 0), 3, 7)


@given(U64, U64, st.lists(st.tuples(st.integers(0, 2**30), st.integers(0, 2**30)),
                          min_size=1, max_size=20))
@settings(max_examples=50)
def test_pair_uniform_batch_matches_scalar_bitwise(master, stream, pairs):
    # the compiled batch path and the pure-python path must agree exactly
    s = SeedSpec(master, stream)
    lo = np.array([min(a, b) for a, b in pairs], dtype=np.int64)
    hi = np.array([max(a, b) + (a == b) for a, b in pairs], dtype=np.int64)
    hi = np.maximum(hi, lo + 1)
    got = pair_uniform_batch(s, lo, hi)
    expect = np.array([pair_uniform(s, int(a), int(b)) for a, b in zip(lo, hi)])
    assert np.array_equal(got, expect)


def test_pair_uniform_batch_rejects_bad_order():
    s = SeedSpec(0, 0)
    with pytest.raises(DomainError):
        pair_uniform_batch(s, np.array([3]), np.array([3]))


def test_pair_uniforms_look_uniform():
    # KS distance of 1e6 pair values against Uniform[0,1)
    s = SeedSpec(20240515, 0)
    m = 1_000_000
    lo = np.arange(m, dtype=np.int64)
    hi = lo + 1 + (lo % 97)
    u = np.sort(pair_uniform_batch(s, lo, hi))
    grid = np.arange(1, m + 1) / m
    ks = max(np.max(grid - u), np.max(u - (grid - 1.0 / m)))
    assert ks < 0.002
