"""Lifetime allocation for age-based engines.

The bi-linear strategy maps an individual's fitness, relative to the
current population's min/avg/max, onto an integer lifetime between
min_lt and max_lt. Below-average members interpolate between min_lt and
the midpoint; above-average members between the midpoint and max_lt.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import ConfigurationError, Population, round_half_away


@dataclass(frozen=True, slots=True)
class LifetimeConfig:
    min_lt: int = 1
    max_lt: int = 11

    def __post_init__(self):
        if self.min_lt < 1:
            raise ConfigurationError(f"min_lt must be >= 1, got {self.min_lt}")
        if self.max_lt < self.min_lt:
            raise ConfigurationError(
                f"max_lt ({self.max_lt}) must be >= min_lt ({self.min_lt})"
            )


@dataclass(frozen=True, slots=True)
class FitStats:
    """Min/avg/max fitness of the population a lifetime is judged against."""

    min_fit: float
    avg_fit: float
    max_fit: float

    def __post_init__(self):
        if not self.min_fit <= self.avg_fit <= self.max_fit:
            raise ValueError(
                f"stats out of order: {self.min_fit}, {self.avg_fit}, {self.max_fit}"
            )


def stats_from_fits(fits: list[float]) -> FitStats:
    """Exact min/mean/max of a non-empty fitness list.

    The mean is accumulated as an offset from the minimum so that a
    population of identical fitnesses yields avg_fit == min_fit exactly,
    which the degenerate branch of bilinear_lifetime relies on.
    """
    if not fits:
        raise ValueError("stats of an empty population")
    lo = min(fits)
    hi = max(fits)
    if lo == hi:
        return FitStats(lo, lo, hi)
    avg = lo + math.fsum([f - lo for f in fits]) / len(fits)
    if avg > hi:
        avg = hi
    return FitStats(lo, avg, hi)


def compute_stats(pop: Population) -> FitStats:
    """Exact min/mean/max of member fitnesses."""
    if not pop:
        raise ValueError("compute_stats on empty population")
    return stats_from_fits([ind.fitness for ind in pop])


def bilinear_lifetime(fit: float, stats: FitStats, cfg: LifetimeConfig) -> int:
    """Bi-linear lifetime of an individual with fitness `fit`.

    Result is rounded to the nearest integer (halves away from zero) and
    clamped to [min_lt, max_lt]. An all-equal-fitness population puts
    every member at the rounded midpoint.
    """
    if fit < stats.min_fit or fit > stats.max_fit:
        raise ValueError(
            f"fitness {fit} outside stats range "
            f"[{stats.min_fit}, {stats.max_fit}]; stats are stale"
        )
    midpoint = (cfg.min_lt + cfg.max_lt) / 2.0
    half_span = (cfg.max_lt - cfg.min_lt) / 2.0
    # the ratio is computed first so that fit == avg == max endpoints
    # cancel exactly and both branches meet at the midpoint
    if stats.avg_fit >= fit:
        denom = stats.avg_fit - stats.min_fit
        if denom <= 0.0:
            raw = midpoint
        else:
            raw = cfg.min_lt + half_span * ((fit - stats.min_fit) / denom)
    else:
        raw = midpoint + half_span * (
            (fit - stats.avg_fit) / (stats.max_fit - stats.avg_fit)
        )
    value = round_half_away(raw)
    if value < cfg.min_lt:
        return cfg.min_lt
    if value > cfg.max_lt:
        return cfg.max_lt
    return value
