"""Poisson point configurations on [-n, n] and the shared randomness keys.

Two sources of randomness, both pure functions of a :class:`SeedSpec`:

* point configurations, drawn from a counter-based Philox generator keyed
  by (master_seed, stream_id);
* per-pair uniforms, a stateless keyed hash of
  (master_seed, stream_id, min(i, j), max(i, j)) over sorted-position
  indices, shared by every edge-sampling algorithm in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


@dataclass(frozen=True)
class WindowParams:
    """Half-length n of the observation window [-n, n]."""

    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise DomainError(f"window half-length must be a positive integer, got {self.n!r}")

    @property
    def length(self) -> float:
        return 2.0 * self.n


@dataclass(frozen=True)
class SeedSpec:
    """(master_seed, stream_id) pair determining every draw of one replication."""

    master_seed: int
    stream_id: int

    def __post_init__(self) -> None:
        for name in ("master_seed", "stream_id"):
            v = getattr(self, name)
            if not 0 <= v < 2**64:
                raise DomainError(f"{name} must be an unsigned 64-bit integer, got {v!r}")


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """Sorted, strictly increasing positions inside the window."""

    window: WindowParams
    positions: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        pos = np.asarray(self.positions, dtype=np.float64)
        object.__setattr__(self, "positions", pos)
        if pos.ndim != 1:
            raise DomainError("positions must be a 1-d array")
        n = self.window.n
        if pos.size and (pos[0] < -n or pos[-1] > n):
            raise DomainError("positions must lie in [-n, n]")
        if pos.size > 1 and not np.all(np.diff(pos) > 0):
            raise DomainError("positions must be strictly increasing (simple point process)")

    def __len__(self) -> int:
        return int(self.positions.size)


def sample_point_configuration(w: WindowParams, s: SeedSpec) -> PointConfiguration:
    """Homogeneous unit-intensity Poisson sample on [-n, n].

    The count is Poisson(2n) and, given the count, positions are i.i.d.
    uniform on the window, returned sorted.  Exact float ties (possible
    in principle, probability ~K^2 * 2^-53) trigger a resample from a
    derived sub-stream so configurations are always simple.
    """
    retry = 0
    while True:
        seq = np.random.SeedSequence((s.master_seed, s.stream_id, retry))
        rng = np.random.Generator(np.random.Philox(seq))
        count = rng.poisson(w.length)
        pos = np.sort(rng.uniform(-w.n, w.n, size=count))
        if count < 2 or np.all(np.diff(pos) > 0):
            return PointConfiguration(w, pos)
        retry += 1


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def pair_uniform(s: SeedSpec, i: int, j: int) -> float:
    """Deterministic Uniform[0, 1) mark of the unordered index pair {i, j}.

    Symmetric in (i, j); distinct (seed, pair) keys give values
    statistically indistinguishable from i.i.d. uniforms.
    """
    if i == j:
        raise DomainError("pair_uniform is undefined on the diagonal (no self-loops)")
    lo, hi = (i, j) if i < j else (j, i)
    z = _mix64((s.master_seed + _GOLDEN) & _MASK64)
    z = _mix64(z ^ s.stream_id)
    z = _mix64(z ^ lo)
    z = _mix64(z ^ hi)
    return (z >> 11) * 2.0**-53


def pair_uniform_batch(s: SeedSpec, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorized :func:`pair_uniform` for index arrays with lo[k] < hi[k]."""
    lo = np.asarray(lo, dtype=np.uint64)
    hi = np.asarray(hi, dtype=np.uint64)
    if np.any(lo >= hi):
        raise DomainError("pair_uniform_batch requires lo < hi elementwise")
    return _kernels.pair_uniform_batch(
        np.uint64(s.master_seed), np.uint64(s.stream_id), lo, hi
    )
