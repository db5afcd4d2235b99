"""Foreground actors following waypoint polylines at constant speed."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..errors import InvalidArgumentError
from ..geometry import EnuPoint, Pose, normalize_yaw_deg

ACTOR_KINDS = ("car", "cyclist", "boat")


def polyline_length(points: tuple[EnuPoint, ...]) -> float:
    return sum(a.distance_to(b) for a, b in zip(points, points[1:]))


def point_along(points: tuple[EnuPoint, ...], distance: float) -> tuple[EnuPoint, float]:
    """Position and segment heading at the given arc length (clamped to the ends)."""
    if distance <= 0.0:
        return points[0], _segment_heading(points[0], points[1])
    remaining = distance
    for a, b in zip(points, points[1:]):
        seg = a.distance_to(b)
        if remaining <= seg:
            f = remaining / seg
            pos = EnuPoint(
                east=a.east + (b.east - a.east) * f,
                north=a.north + (b.north - a.north) * f,
                up=a.up + (b.up - a.up) * f,
            )
            return pos, _segment_heading(a, b)
        remaining -= seg
    return points[-1], _segment_heading(points[-2], points[-1])


def _segment_heading(a: EnuPoint, b: EnuPoint) -> float:
    return normalize_yaw_deg(math.degrees(math.atan2(b.east - a.east, b.north - a.north)))


@dataclass
class Actor:
    """A waypoint-following foreground object (car, cyclist or boat)."""

    actor_id: int
    kind: str
    path: tuple[EnuPoint, ...]
    speed_mps: float
    loop: bool = False
    distance_m: float = 0.0
    pose: Pose = field(init=False)

    def __post_init__(self) -> None:
        if self.kind not in ACTOR_KINDS:
            raise InvalidArgumentError(f"unknown actor kind {self.kind!r}")
        if len(self.path) < 2:
            raise InvalidArgumentError("actor path needs at least 2 waypoints")
        if self.speed_mps <= 0:
            raise InvalidArgumentError("actor speed must be > 0")
        for a, b in zip(self.path, self.path[1:]):
            if a.distance_to(b) == 0.0:
                raise InvalidArgumentError("actor path has a zero-length segment")
        self.path = tuple(self.path)
        self._total = polyline_length(self.path)
        position, heading = point_along(self.path, self.distance_m)
        self.pose = Pose(position=position, yaw_deg=heading, gimbal_pitch_deg=0.0)

    @property
    def path_length_m(self) -> float:
        return self._total

    def position_at_time(self, t: float) -> EnuPoint:
        """Position after travelling for t seconds from the path start (pure)."""
        s = self.speed_mps * t
        if self.loop:
            s = s % self._total
        else:
            s = min(s, self._total)
        return point_along(self.path, s)[0]


def follow_path(actor: Actor, dt: float) -> Actor:
    """Advance the actor by speed*dt of arc length along its path (in place).

    Loop actors wrap; others stop at the terminal waypoint. Corners lose no
    distance: the advance is by arc length, not by straight-line stepping.
    """
    s = actor.distance_m + actor.speed_mps * dt
    if actor.loop:
        if s >= actor._total:
            s -= actor._total * math.floor(s / actor._total)
    else:
        s = min(s, actor._total)
    actor.distance_m = s
    position, heading = point_along(actor.path, s)
    actor.pose = Pose(position=position, yaw_deg=heading, gimbal_pitch_deg=0.0)
    return actor
