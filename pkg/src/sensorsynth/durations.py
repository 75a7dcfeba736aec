"""Dwell-time statistics: normal sampling, estimation and outlier fences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Sequence

import numpy as np

from .markov import RandomSource

# upper-quartile z-score of the standard normal
Z_Q3 = NormalDist().inv_cdf(0.75)
FENCE_MULTIPLIER = 3.0
MAX_REDRAWS = 10


@dataclass(frozen=True)
class DurationStats:
    mean_s: float
    sd_s: float
    sample_count: int = 0

    def __post_init__(self):
        if not (self.mean_s >= 0 and self.sd_s >= 0):
            raise ValueError(f"duration stats must be non-negative, got mean={self.mean_s} sd={self.sd_s}")
        if self.sample_count < 0:
            raise ValueError("sample_count must be >= 0")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def sample_duration(stats: DurationStats, rng: RandomSource) -> int:
    """Whole-second duration from N(mean, sd); draws under 1 s are redrawn, then clamped."""
    if stats.sd_s == 0:
        return max(1, _round_half_up(stats.mean_s))
    x = stats.mean_s + stats.sd_s * rng.normal()
    redraws = 0
    while x < 1 and redraws < MAX_REDRAWS:
        x = stats.mean_s + stats.sd_s * rng.normal()
        redraws += 1
    if x < 1:
        return 1
    return _round_half_up(x)


def outlier_mean(stats: DurationStats, direction: str) -> float:
    """Mean moved onto the 3-IQR fence of the fitted normal.

    ``long`` gives Q3 + 3*IQR, ``short`` gives Q1 - 3*IQR floored at 1 s.
    """
    spread = Z_Q3 * stats.sd_s
    iqr = 2 * spread
    if direction == "long":
        return stats.mean_s + spread + FENCE_MULTIPLIER * iqr
    if direction == "short":
        # never above the original mean, even when mean < 1 s
        return min(stats.mean_s, max(stats.mean_s - spread - FENCE_MULTIPLIER * iqr, 1.0))
    raise ValueError(f"direction must be 'long' or 'short', got {direction!r}")


def empirical_stats(samples: Sequence[float]) -> DurationStats:
    n = len(samples)
    if n == 0:
        return DurationStats(0.0, 0.0, 0)
    arr = np.asarray(samples, dtype=float)
    if (arr == arr[0]).all():
        return DurationStats(float(arr[0]), 0.0, n)
    mean = float(arr.mean())
    sd = float(arr.std(ddof=1))
    return DurationStats(mean, sd, n)
