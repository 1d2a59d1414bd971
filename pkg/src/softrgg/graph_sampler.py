"""Longest-edge extraction and exceedance counting on the implicit edge set.

The edge set is never materialized: each unordered index pair (i, j) is
an edge iff pair_uniform(seed, i, j) <= g(positions[j] - positions[i]).
All operations here share that coupling, so for a fixed seed the lazy,
naive and bulk extractors return the same edge, and
count_exceedances(..., r).count == 0 exactly when the longest edge is
at most r (or absent).
"""

from __future__ import annotations

import numpy as np

from dataclasses import dataclass

from . import _kernels
from .connection import ConnectionFunction
from .errors import DomainError, SizeError
from .points import PointConfiguration, SeedSpec

_NAIVE_GUARD = 10_000
# below this count the heap's overhead is irrelevant; above it the bulk
# annulus scan is substantially faster at identical output
_BULK_CUTOFF = 512


@dataclass(frozen=True)
class LongestEdgeResult:
    length: float | None
    endpoint_indices: tuple[int, int] | None
    pairs_examined: int

    @property
    def absent(self) -> bool:
        return self.length is None


@dataclass(frozen=True)
class ExceedanceCount:
    threshold: float
    count: int
    pairs_examined: int = 0


def _result(best: float, i: int, j: int, examined: int) -> LongestEdgeResult:
    if best < 0.0:
        return LongestEdgeResult(None, None, int(examined))
    return LongestEdgeResult(float(best), (int(i), int(j)), int(examined))


def longest_edge_lazy(
    pc: PointConfiguration,
    g: ConnectionFunction,
    s: SeedSpec,
    check_order: bool = False,
) -> LongestEdgeResult:
    """Longest realized edge via largest-first heap enumeration.

    Pairs are tried in non-increasing distance order starting from the
    extreme pair (0, K-1); the first connected pair is the answer.  With
    ``check_order`` the kernel verifies the popped distances are
    non-increasing and a violation raises AssertionError.
    """
    best, i, j, examined, order_ok = _kernels.longest_edge_lazy_kernel(
        pc.positions, np.uint64(s.master_seed), np.uint64(s.stream_id),
        g.form_code, g.alpha, g.radius, check_order,
    )
    if check_order and not order_ok:
        raise AssertionError("heap enumeration popped distances out of order")
    return _result(best, i, j, examined)


def longest_edge_naive(
    pc: PointConfiguration, g: ConnectionFunction, s: SeedSpec
) -> LongestEdgeResult:
    """Brute-force oracle over all K(K-1)/2 pairs; K is guarded."""
    if len(pc) > _NAIVE_GUARD:
        raise SizeError(f"naive longest edge is quadratic; K={len(pc)} exceeds {_NAIVE_GUARD}")
    best, i, j, examined = _kernels.longest_edge_naive_kernel(
        pc.positions, np.uint64(s.master_seed), np.uint64(s.stream_id), g.form_code, g.alpha, g.radius
    )
    return _result(best, i, j, examined)


def longest_edge(
    pc: PointConfiguration, g: ConnectionFunction, s: SeedSpec
) -> LongestEdgeResult:
    """Longest realized edge; dispatches to the fastest exact extractor."""
    if len(pc) <= _BULK_CUTOFF:
        return longest_edge_lazy(pc, g, s)
    best, i, j, examined = _kernels.longest_edge_bulk_kernel(
        pc.positions, np.uint64(s.master_seed), np.uint64(s.stream_id), g.form_code, g.alpha, g.radius
    )
    return _result(best, i, j, examined)


def count_exceedances(
    pc: PointConfiguration, g: ConnectionFunction, s: SeedSpec, r: float
) -> ExceedanceCount:
    """Number of realized edges strictly longer than r, 0 < r < 2n."""
    if not 0.0 < r < pc.window.length:
        raise DomainError(f"threshold r must lie in (0, 2n), got {r}")
    count, examined = _kernels.count_exceedances_kernel(
        pc.positions, np.uint64(s.master_seed), np.uint64(s.stream_id),
        g.form_code, g.alpha, g.radius, float(r),
    )
    return ExceedanceCount(float(r), int(count), int(examined))
