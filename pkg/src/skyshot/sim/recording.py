"""Flight-path recordings and their export back into editable plans."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidArgumentError
from ..flightplan import FlightPlan, Waypoint
from ..geometry import GeoOrigin, Pose


@dataclass(frozen=True)
class Recording:
    """Pose samples of one drone at the simulation rate."""

    drone_id: int
    dt_s: float
    samples: tuple[tuple[float, Pose], ...]

    def __post_init__(self) -> None:
        if self.dt_s <= 0:
            raise InvalidArgumentError("dt_s must be > 0")
        times = [t for t, _ in self.samples]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise InvalidArgumentError("recording times must be strictly increasing")


def record_and_export(
    recording: Recording,
    origin: GeoOrigin,
    interval_s: float = 1.0,
    speed_mps: float = 5.0,
) -> FlightPlan:
    """Downsample a recording into a flight plan.

    Picks every round(interval/dt)-th sample; the first and last recorded
    poses are preserved bit-exactly.
    """
    if len(recording.samples) < 2:
        raise InvalidArgumentError("recording needs at least 2 samples")
    if interval_s <= 0:
        raise InvalidArgumentError("interval_s must be > 0")
    stride = max(1, round(interval_s / recording.dt_s))
    indices = list(range(0, len(recording.samples), stride))
    if indices[-1] != len(recording.samples) - 1:
        indices.append(len(recording.samples) - 1)
    waypoints = []
    for i in indices:
        _, pose = recording.samples[i]
        waypoints.append(
            Waypoint(
                position=pose.position,
                speed_mps=speed_mps,
                heading_deg=pose.yaw_deg,
                gimbal_pitch_deg=pose.gimbal_pitch_deg,
            )
        )
    return FlightPlan(origin=origin, waypoints=tuple(waypoints))
