import numpy as np
import pytest

from softrgg.connection import (
    always_one,
    always_zero,
    capped_power,
    evaluate,
    exp_form,
    hard_threshold,
)
from softrgg.errors import DomainError, SizeError
from softrgg.graph_sampler import (
    count_exceedances,
    longest_edge,
    longest_edge_lazy,
    longest_edge_naive,
)
from softrgg.points import (
    PointConfiguration,
    SeedSpec,
    WindowParams,
    pair_uniform,
    sample_point_configuration,
)

REGIME_FORMS = [capped_power(a) for a in (0.5, 1.0, 1.5, 2.0, 3.0)]
EXTRA_FORMS = [exp_form(1.5), hard_threshold(4.0), always_one(), always_zero()]


def _pc(w, positions):
    return PointConfiguration(WindowParams(w), np.asarray(positions, dtype=np.float64))


def test_always_one_takes_extreme_pair_immediately():
    pc = _pc(10, [-9.0, -2.0, 3.5, 8.0])
    res = longest_edge_lazy(pc, always_one(), SeedSpec(1, 1))
    assert res.length == pytest.approx(17.0)
    assert res.endpoint_indices == (0, 3)
    assert res.pairs_examined == 1


def test_always_zero_examines_every_pair_and_returns_absent():
    pc = _pc(10, [-9.0, -2.0, 3.5, 8.0, 9.0])
    res = longest_edge_lazy(pc, always_zero(), SeedSpec(1, 1))
    assert res.absent
    assert res.length is None and res.endpoint_indices is None
    assert res.pairs_examined == 5 * 4 // 2


def test_two_points_always_one():
    pc = _pc(1, [-1.0, 1.0])
    res = longest_edge_naive(pc, always_one(), SeedSpec(0, 0))
    assert res.length == pytest.approx(2.0)
    assert res.endpoint_indices == (0, 1)


@pytest.mark.parametrize("positions", [[], [0.3]])
def test_fewer_than_two_points_is_absent(positions):
    pc = _pc(1, positions)
    for fn in (longest_edge_lazy, longest_edge_naive, longest_edge):
        assert fn(pc, always_one(), SeedSpec(0, 0)).absent


def test_naive_guard_rejects_huge_instances():
    pos = np.linspace(-4999.0, 4999.0, 10_001)
    pc = PointConfiguration(WindowParams(5000), pos)
    with pytest.raises(SizeError):
        longest_edge_naive(pc, always_one(), SeedSpec(0, 0))


def test_count_example_three_points():
    pc = _pc(2, [-1.0, 0.0, 1.0])
    res = count_exceedances(pc, always_one(), SeedSpec(5, 5), 1.5)
    assert res.count == 1
    # unordered pairs are counted once: distances {1, 1, 2} above r = 0.5
    assert count_exceedances(pc, always_one(), SeedSpec(5, 5), 0.5).count == 3


def test_count_zero_above_max_distance():
    pc = _pc(2, [-1.0, 0.0, 1.0])
    assert count_exceedances(pc, always_one(), SeedSpec(5, 5), 2.0).count == 0


def test_count_threshold_domain_error():
    pc = _pc(2, [-1.0, 1.0])
    with pytest.raises(DomainError):
        count_exceedances(pc, always_one(), SeedSpec(0, 0), 4.0)
    with pytest.raises(DomainError):
        count_exceedances(pc, always_one(), SeedSpec(0, 0), 0.0)


def test_count_matches_pairwise_brute_force():
    w = WindowParams(25)
    g = capped_power(1.2)
    for sid in range(25):
        s = SeedSpec(31337, sid)
        pc = sample_point_configuration(w, s)
        pos = pc.positions
        r = 7.5
        brute = sum(
            1
            for i in range(len(pos))
            for j in range(i + 1, len(pos))
            if pos[j] - pos[i] > r and pair_uniform(s, i, j) <= evaluate(g, pos[j] - pos[i])
        )
        assert count_exceedances(pc, g, s, r).count == brute


def test_lazy_naive_and_dispatch_agree_with_heap_order_checked():
    w = WindowParams(40)
    mismatches = 0
    for sid in range(200):
        s = SeedSpec(2024, sid)
        pc = sample_point_configuration(w, s)
        for g in REGIME_FORMS + EXTRA_FORMS:
            a = longest_edge_lazy(pc, g, s, check_order=True)
            b = longest_edge_naive(pc, g, s)
            c = longest_edge(pc, g, s)
            if (a.length, a.endpoint_indices) != (b.length, b.endpoint_indices):
                mismatches += 1
            if (a.length, a.endpoint_indices) != (c.length, c.endpoint_indices):
                mismatches += 1
    assert mismatches == 0


def test_bulk_path_agrees_with_lazy_above_cutoff():
    w = WindowParams(400)  # about 800 points, above the dispatch cutoff
    for sid in range(10):
        s = SeedSpec(77, sid)
        pc = sample_point_configuration(w, s)
        assert len(pc) > 512
        for g in (capped_power(3.0), capped_power(0.5), exp_form(1.5)):
            a = longest_edge_lazy(pc, g, s)
            c = longest_edge(pc, g, s)
            assert (a.length, a.endpoint_indices) == (c.length, c.endpoint_indices)


def test_zero_count_iff_longest_edge_at_most_threshold():
    # the below-threshold event and the no-exceedance event coincide per seed
    w = WindowParams(30)
    g = capped_power(1.5)
    rng = np.random.default_rng(5)
    for sid in range(2000):
        s = SeedSpec(424242, sid)
        pc = sample_point_configuration(w, s)
        r = float(rng.uniform(0.5, 55.0))
        res = longest_edge(pc, g, s)
        below = res.absent or res.length <= r
        assert (count_exceedances(pc, g, s, r).count == 0) == below


def test_length_bounded_by_window():
    w = WindowParams(15)
    for sid in range(50):
        s = SeedSpec(8, sid)
        pc = sample_point_configuration(w, s)
        res = longest_edge(pc, always_one(), s)
        if not res.absent:
            i, j = res.endpoint_indices
            assert i < j
            assert res.length == pytest.approx(pc.positions[j] - pc.positions[i])
            assert res.length <= w.length
