"""Deterministic wind: constant mean plus a seeded sinusoidal gust."""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import InvalidArgumentError

# Golden-ratio fraction maps integer seeds to well-spread phases without RNG.
_PHASE_SPREAD = 0.6180339887498949


@dataclass(frozen=True)
class Wind:
    mean_east_mps: float = 0.0
    mean_north_mps: float = 0.0
    mean_up_mps: float = 0.0
    gust_amplitude_mps: float = 0.0
    gust_period_s: float = 10.0
    phase_seed: int = 0

    def __post_init__(self) -> None:
        if self.gust_period_s <= 0:
            raise InvalidArgumentError("gust_period_s must be > 0")
        if self.gust_amplitude_mps < 0:
            raise InvalidArgumentError("gust_amplitude_mps must be >= 0")

    @property
    def mean(self) -> tuple[float, float, float]:
        return (self.mean_east_mps, self.mean_north_mps, self.mean_up_mps)


def wind_phase(seed: int) -> float:
    return 2.0 * math.pi * ((seed * _PHASE_SPREAD) % 1.0)


def wind_velocity(wind: Wind, t: float) -> tuple[float, float, float]:
    """Wind vector at time t: mean plus gust along the mean direction.

    Zero-mean wind gusts along the fixed east unit so the gust never
    vanishes just because the mean does.
    """
    me, mn, mu = wind.mean
    magnitude = math.sqrt(me * me + mn * mn + mu * mu)
    if magnitude > 0.0:
        ue, un, uu = me / magnitude, mn / magnitude, mu / magnitude
    else:
        ue, un, uu = 1.0, 0.0, 0.0
    gust = wind.gust_amplitude_mps * math.sin(
        2.0 * math.pi * t / wind.gust_period_s + wind_phase(wind.phase_seed)
    )
    return (me + gust * ue, mn + gust * un, mu + gust * uu)
