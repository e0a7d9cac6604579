"""Seed-reproducible sampling of disk points and segment pairs.

Reproducibility contract
------------------------
``RandomSource`` wraps NumPy's PCG64 bit generator seeded through
``SeedSequence``.  Substream ``k`` of a source with seed ``s`` is the
generator seeded by ``SeedSequence(s, spawn_key=(k,))``; by construction of
``SeedSequence`` the substreams are deterministic and pairwise independent.

Every Monte Carlo routine splits its work into fixed-size chunks of
:data:`CHUNK_SIZE` sample units, draws chunk ``k`` exclusively from substream
``k``, and reduces results in chunk order.  Outputs therefore depend only on
``(seed, n)`` and never on the number of worker threads.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from . import kernels
from .geometry import Point2, SegmentEndpoints

__all__ = [
    "CHUNK_SIZE",
    "RandomSource",
    "Histogram",
    "McEstimate",
    "sample_disk_point",
    "sample_segment",
    "sample_points",
    "sample_segment_frames",
    "sample_pair_statistics",
    "estimate_intersection_probability",
    "sample_conditional_angles",
    "histogram",
]

CHUNK_SIZE = 1 << 16

_MAX_SEED = 2 ** 64


class RandomSource:
    """Deterministic uniform generator with derivable substreams.

    Parameters
    ----------
    seed : int
        64-bit unsigned seed.  Identical seeds give identical streams.
    """

    def __init__(self, seed: int, _spawn_key: tuple[int, ...] = ()):
        if not isinstance(seed, (int, np.integer)):
            raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
        if not 0 <= seed < _MAX_SEED:
            raise ValueError(f"seed must lie in [0, 2^64), got {seed}")
        self.seed = int(seed)
        self._spawn_key = _spawn_key
        self._gen = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(self.seed, spawn_key=_spawn_key)))

    @property
    def generator_id(self) -> str:
        """Generator name and version, recorded in run reports."""
        return f"numpy-{np.__version__}-PCG64-SeedSequence"

    def substream(self, k: int) -> "RandomSource":
        """Independent source derived from ``(seed, spawn_key + (k,))``."""
        if k < 0:
            raise ValueError(f"substream index must be non-negative, got {k}")
        return RandomSource(self.seed, self._spawn_key + (k,))

    def uniforms(self, n: int) -> NDArray[np.float64]:
        """Next ``n`` uniform variates in [0, 1) from this source's stream."""
        return self._gen.random(n)

    def __repr__(self) -> str:
        return f"RandomSource(seed={self.seed}, spawn_key={self._spawn_key})"


@dataclass(frozen=True)
class McEstimate:
    """A Monte Carlo estimate with its standard error and sample count."""

    value: float
    std_error: float
    n: int

    def __post_init__(self) -> None:
        if self.n <= 0:
            raise ValueError(f"n must be positive, got {self.n}")


@dataclass(frozen=True)
class Histogram:
    """Equal-width histogram over [lo, hi]; right-open bins, last bin closed."""

    lo: float
    hi: float
    bin_count: int
    counts: NDArray[np.int64]
    total: int

    def __post_init__(self) -> None:
        if int(np.sum(self.counts)) != self.total:
            raise ValueError("counts do not sum to total")

    def edges(self) -> NDArray[np.float64]:
        return np.linspace(self.lo, self.hi, self.bin_count + 1)

    def bin_width(self) -> float:
        return (self.hi - self.lo) / self.bin_count

    def empirical_mass(self) -> NDArray[np.float64]:
        """Per-bin probability mass; zeros when the histogram is empty."""
        if self.total == 0:
            return np.zeros(self.bin_count)
        return self.counts / self.total

    def density_heights(self) -> NDArray[np.float64]:
        """Normalized heights count / (total * width); integrate to one."""
        if self.total == 0:
            return np.zeros(self.bin_count)
        return self.counts / (self.total * self.bin_width())


def histogram(values: Sequence[float], lo: float, hi: float,
              bins: int) -> Histogram:
    """Bin values into ``bins`` equal-width cells of [lo, hi].

    Bins are right-open except the last, which is closed, so ``hi`` itself
    lands in the final bin.  Values outside [lo, hi] raise ``ValueError``.
    """
    if bins < 1:
        raise ValueError(f"bins must be at least 1, got {bins}")
    if not lo < hi:
        raise ValueError(f"need lo < hi, got [{lo}, {hi}]")
    arr = np.asarray(values, dtype=np.float64)
    if arr.size and (arr.min() < lo or arr.max() > hi):
        raise ValueError(f"values outside histogram range [{lo}, {hi}]")
    counts, _ = np.histogram(arr, bins=bins, range=(lo, hi))
    return Histogram(lo, hi, bins, counts.astype(np.int64), int(arr.size))


def sample_disk_point(rng: RandomSource) -> Point2:
    """One point uniform on the closed unit disk, via sqrt-radius polar draw."""
    u = rng.uniforms(2)
    r = np.sqrt(u[0])
    ang = 2.0 * np.pi * u[1]
    return Point2(float(r * np.cos(ang)), float(r * np.sin(ang)))


def sample_segment(rng: RandomSource) -> SegmentEndpoints:
    """Segment joining two independent uniform disk points.

    Exactly coincident endpoints (a measure-zero float event) are redrawn.
    """
    while True:
        a = sample_disk_point(rng)
        b = sample_disk_point(rng)
        if a.x != b.x or a.y != b.y:
            return SegmentEndpoints(a, b)


def _chunk_sizes(n: int) -> list[int]:
    sizes = [CHUNK_SIZE] * (n // CHUNK_SIZE)
    if n % CHUNK_SIZE:
        sizes.append(n % CHUNK_SIZE)
    return sizes


def _chunk_coords(sub: RandomSource, size: int, columns: int) -> list[NDArray[np.float64]]:
    """Disk-point coordinates for one chunk.

    Each row consumes ``2 * columns`` uniforms: (radius, angle) per point, in
    point order.  Rows where the two points of any segment coincide exactly
    are redrawn from the same substream, preserving determinism.
    """
    u = sub.uniforms(size * 2 * columns).reshape(size, 2 * columns)
    while True:
        coords = []
        for j in range(columns):
            r = np.sqrt(u[:, 2 * j])
            ang = 2.0 * np.pi * u[:, 2 * j + 1]
            coords.append(r * np.cos(ang))
            coords.append(r * np.sin(ang))
        bad = np.zeros(size, dtype=bool)
        for j in range(0, columns - 1, 2):
            bad |= (coords[2 * j] == coords[2 * j + 2]) \
                & (coords[2 * j + 1] == coords[2 * j + 3])
        if not bad.any():
            return coords
        u[bad] = sub.uniforms(int(bad.sum()) * 2 * columns).reshape(-1, 2 * columns)


def _run_chunks(rng: RandomSource, n: int, threads: int,
                worker: Callable[[RandomSource, int], object]) -> list:
    """Apply ``worker(substream(k), size_k)`` to every chunk, in chunk order."""
    if n < 1:
        raise ValueError(f"sample count must be at least 1, got {n}")
    sizes = _chunk_sizes(n)
    if threads <= 1 or len(sizes) == 1:
        return [worker(rng.substream(k), size) for k, size in enumerate(sizes)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, rng.substream(k), size)
                   for k, size in enumerate(sizes)]
        return [f.result() for f in futures]


def sample_points(rng: RandomSource, n: int,
                  threads: int = 1) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Coordinates of ``n`` uniform disk points as ``(x, y)`` arrays."""
    def worker(sub: RandomSource, size: int):
        x, y = _chunk_coords(sub, size, 1)
        return x, y

    parts = _run_chunks(rng, n, threads, worker)
    return (np.concatenate([p[0] for p in parts]),
            np.concatenate([p[1] for p in parts]))


def sample_segment_frames(rng: RandomSource, n: int, threads: int = 1
                          ) -> tuple[NDArray[np.float64], NDArray[np.float64],
                                     NDArray[np.float64], NDArray[np.float64]]:
    """Chord frames ``(rho, gamma, t_a, t_b)`` of ``n`` random segments.

    The segment length is recoverable as ``|t_a - t_b|``.
    """
    def worker(sub: RandomSource, size: int):
        ax, ay, bx, by = _chunk_coords(sub, size, 2)
        return kernels.segment_frames(ax, ay, bx, by)

    parts = _run_chunks(rng, n, threads, worker)
    return tuple(np.concatenate([p[i] for p in parts]) for i in range(4))


def sample_pair_statistics(rng: RandomSource, n: int, threads: int = 1
                           ) -> tuple[NDArray[np.uint8], NDArray[np.float64]]:
    """Crossing flags and chord angles for ``n`` independent segment pairs."""
    def worker(sub: RandomSource, size: int):
        coords = _chunk_coords(sub, size, 4)
        return kernels.pair_stats(*coords)

    parts = _run_chunks(rng, n, threads, worker)
    return (np.concatenate([p[0] for p in parts]),
            np.concatenate([p[1] for p in parts]))


def estimate_intersection_probability(rng: RandomSource, n: int,
                                      threads: int = 1) -> McEstimate:
    """Proportion of ``n`` independent segment pairs that intersect.

    Standard error is the binomial ``sqrt(p (1 - p) / n)``.
    """
    def worker(sub: RandomSource, size: int) -> int:
        coords = _chunk_coords(sub, size, 4)
        crossed, _ = kernels.pair_stats(*coords)
        return int(np.sum(crossed, dtype=np.int64))

    hits = sum(_run_chunks(rng, n, threads, worker))
    p = hits / n
    return McEstimate(p, float(np.sqrt(p * (1.0 - p) / n)), n)


def sample_conditional_angles(rng: RandomSource, n_accepted: int,
                              threads: int = 1) -> NDArray[np.float64]:
    """Angles between intersecting segment pairs, by rejection sampling.

    Draws pairs chunk by chunk and keeps the chord angle of each intersecting
    pair until ``n_accepted`` angles are collected.  The number of consumed
    chunks depends only on the seed: chunks are always examined in index
    order, so thread counts cannot change the output.

    Raises
    ------
    RuntimeError
        If more than ``10 * n_accepted`` pairs are consumed before enough
        angles accumulate (cannot happen at the true acceptance rate unless
        the crossing predicate is broken).
    """
    if n_accepted < 1:
        raise ValueError(f"n_accepted must be at least 1, got {n_accepted}")
    max_pairs = 10 * n_accepted

    def worker(sub: RandomSource, size: int) -> NDArray[np.float64]:
        coords = _chunk_coords(sub, size, 4)
        crossed, theta = kernels.pair_stats(*coords)
        return theta[crossed == 1]

    accepted: list[NDArray[np.float64]] = []
    collected = 0
    consumed_pairs = 0
    next_chunk = 0
    wave = max(1, threads) * 2
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while collected < n_accepted:
            if consumed_pairs >= max_pairs:
                raise RuntimeError(
                    f"rejection sampling cap exceeded: {consumed_pairs} pairs "
                    f"yielded {collected} < {n_accepted} angles")
            indices = range(next_chunk, next_chunk + wave)
            if pool is None:
                results = [worker(rng.substream(k), CHUNK_SIZE) for k in indices]
            else:
                futures = [pool.submit(worker, rng.substream(k), CHUNK_SIZE)
                           for k in indices]
                results = [f.result() for f in futures]
            # Consume strictly in chunk order; stop mid-wave once the target
            # is reached so speculative chunks never influence the output.
            for part in results:
                if collected >= n_accepted or consumed_pairs >= max_pairs:
                    break
                accepted.append(part)
                collected += part.size
                consumed_pairs += CHUNK_SIZE
            next_chunk += wave
    finally:
        if pool is not None:
            pool.shutdown()
    return np.concatenate(accepted)[:n_accepted]
