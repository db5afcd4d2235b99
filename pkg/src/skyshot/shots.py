"""Parametric generators for the five cinematic shot types.

Each shot type is a small closed-form path around a (possibly moving)
target, with yaw and gimbal pitch solved every sample so the target stays
centred. The default reference camera defines the scale: for any other
camera every distance-like parameter is rescaled by the working-distance
ratio so the target keeps the same angular size in frame.

Shot parametrizations (heights are relative to the target's initial up):

* ESTABLISH - straight 3D line from (start_distance, start_height) to
  (end_distance, end_height) along a fixed approach azimuth to the target.
* CHASE     - first-order pursuit of a point `chase_distance` behind the
  target (against its velocity) at `height` above it; the drone closes on
  that commanded point at up to `speed`.
* FLYBY     - straight pass of `flyby_leg` length, laterally offset from
  the target, camera tracking the target throughout.
* ELEVATOR  - vertical climb at a fixed horizontal anchor from start to end
  height at `speed`.
* ORBIT     - circle of `orbit_radius` about the target's vertical axis,
  angular speed = speed / radius, starting at azimuth 0 (due east).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable

from .errors import (
    DegenerateHeadingError,
    InvalidArgumentError,
    ZeroLengthShotError,
)
from .geometry import (
    DEFAULT_CAMERA,
    DEFAULT_REFERENCE,
    CameraIntrinsics,
    EnuPoint,
    Pose,
    ReferenceSetup,
    normalize_yaw_deg,
    scale_working_distance,
)

TargetPath = Callable[[float], EnuPoint]


class ShotType(str, enum.Enum):
    ESTABLISH = "ESTABLISH"
    CHASE = "CHASE"
    FLYBY = "FLYBY"
    ELEVATOR = "ELEVATOR"
    ORBIT = "ORBIT"


@dataclass(frozen=True)
class TargetRef:
    """Either a static point or a reference to a simulation actor."""

    static_point: EnuPoint | None = None
    actor_id: int | None = None

    def __post_init__(self) -> None:
        if (self.static_point is None) == (self.actor_id is None):
            raise InvalidArgumentError("exactly one of static_point / actor_id must be set")

    @classmethod
    def point(cls, p: EnuPoint) -> "TargetRef":
        return cls(static_point=p)

    @classmethod
    def actor(cls, actor_id: int) -> "TargetRef":
        return cls(actor_id=actor_id)


# Fields rescaled by rescale_shot_params. Implementation defaults below are
# tunable placeholders, not values taken from any study.
DISTANCE_FIELDS = (
    "height_m",
    "orbit_radius_m",
    "chase_distance_m",
    "flyby_offset_m",
    "flyby_leg_m",
    "establish_start_distance_m",
    "establish_end_distance_m",
    "establish_start_height_m",
    "establish_end_height_m",
    "elevator_start_height_m",
    "elevator_end_height_m",
    "elevator_distance_m",
)


@dataclass(frozen=True)
class ShotSpec:
    shot_type: ShotType
    target: TargetRef
    camera: CameraIntrinsics = DEFAULT_CAMERA
    height_m: float = 10.0
    speed_mps: float = 5.0
    orbit_radius_m: float = 30.0
    orbit_arc_deg: float = 360.0
    chase_distance_m: float = 10.0
    chase_duration_s: float = 20.0
    flyby_offset_m: float = 15.0
    flyby_leg_m: float = 100.0
    flyby_heading_deg: float = 0.0
    establish_start_distance_m: float = 80.0
    establish_end_distance_m: float = 25.0
    establish_start_height_m: float = 50.0
    establish_end_height_m: float = 10.0
    elevator_start_height_m: float = 5.0
    elevator_end_height_m: float = 45.0
    elevator_distance_m: float = 20.0
    approach_azimuth_deg: float = 0.0

    def __post_init__(self) -> None:
        if self.speed_mps <= 0:
            raise InvalidArgumentError("speed_mps must be > 0")
        if self.chase_duration_s <= 0:
            raise InvalidArgumentError("chase_duration_s must be > 0")
        if self.orbit_arc_deg == 0:
            raise InvalidArgumentError("orbit_arc_deg must be non-zero")
        for name in DISTANCE_FIELDS:
            if getattr(self, name) <= 0:
                raise InvalidArgumentError(f"{name} must be > 0")


@dataclass(frozen=True)
class TrajectorySample:
    time_s: float
    pose: Pose
    aim_point: EnuPoint | None = None


@dataclass(frozen=True)
class Trajectory:
    """Uniformly sampled pose sequence realizing a shot."""

    dt_s: float
    camera: CameraIntrinsics
    samples: tuple[TrajectorySample, ...]

    def __post_init__(self) -> None:
        if self.dt_s <= 0:
            raise InvalidArgumentError("dt_s must be > 0")
        if not self.samples:
            raise InvalidArgumentError("trajectory needs at least one sample")
        for a, b in zip(self.samples, self.samples[1:]):
            if abs((b.time_s - a.time_s) - self.dt_s) > 1e-9:
                raise InvalidArgumentError("trajectory time step is not uniform")

    @property
    def duration_s(self) -> float:
        return self.samples[-1].time_s


def aim_gimbal(drone_position: EnuPoint, target: EnuPoint, fallback_yaw_deg: float = 0.0) -> tuple[float, float]:
    """Yaw and gimbal pitch that centre the target.

    Pitch is clamped to the mechanical range [-30, 90]. At the nadir
    singularity (target straight below/above) the bearing is undefined and
    fallback_yaw_deg is returned instead.
    """
    de = target.east - drone_position.east
    dn = target.north - drone_position.north
    du = target.up - drone_position.up
    horizontal = math.hypot(de, dn)
    if horizontal == 0.0 and du == 0.0:
        raise InvalidArgumentError("target coincides with the drone position")
    if horizontal == 0.0:
        yaw = normalize_yaw_deg(fallback_yaw_deg)
    else:
        yaw = normalize_yaw_deg(math.degrees(math.atan2(de, dn)))
    pitch = math.degrees(math.atan2(-du, horizontal))
    pitch = min(90.0, max(-30.0, pitch))
    return yaw, pitch


def static_target(point: EnuPoint) -> TargetPath:
    def path(_t: float) -> EnuPoint:
        return point

    return path


def rescale_shot_params(spec: ShotSpec, ref: ReferenceSetup = DEFAULT_REFERENCE) -> ShotSpec:
    """Rescale every distance-like parameter for the spec's camera.

    The factor is the working-distance ratio of the spec camera relative to
    the reference (cross-track sensor axis); angles, speeds and durations
    are left unchanged.
    """
    factor = scale_working_distance(ref, spec.camera, "cross_track") / ref.working_distance_m
    changes = {name: getattr(spec, name) * factor for name in DISTANCE_FIELDS}
    return replace(spec, **changes)


def generate_shot(spec: ShotSpec, target_path: TargetPath | None = None, dt_s: float = 0.05) -> Trajectory:
    """Sample the shot into a time-stamped pose sequence.

    target_path gives the target position over time; it defaults to the
    spec's static point and is required for actor targets. Yaw and gimbal
    are solved per sample with aim_gimbal; across the nadir singularity the
    previous yaw is held (0 for the first sample).
    """
    if dt_s <= 0:
        raise InvalidArgumentError("dt_s must be > 0")
    if target_path is None:
        if spec.target.static_point is None:
            raise InvalidArgumentError("actor-targeted shots need an explicit target_path")
        target_path = static_target(spec.target.static_point)

    if spec.shot_type == ShotType.CHASE:
        positions, times = _chase_positions(spec, target_path, dt_s)
    else:
        path, duration = _parametric_path(spec, target_path)
        n_steps = max(1, math.ceil(duration / dt_s - 1e-9))
        times = [i * dt_s for i in range(n_steps + 1)]
        positions = [path(min(t, duration)) for t in times]

    samples = []
    prev_yaw = 0.0
    for t, position in zip(times, positions):
        aim = target_path(t)
        yaw, pitch = aim_gimbal(position, aim, fallback_yaw_deg=prev_yaw)
        prev_yaw = yaw
        samples.append(
            TrajectorySample(time_s=t, pose=Pose(position=position, yaw_deg=yaw, gimbal_pitch_deg=pitch), aim_point=aim)
        )
    return Trajectory(dt_s=dt_s, camera=spec.camera, samples=tuple(samples))


def _parametric_path(spec: ShotSpec, target_path: TargetPath) -> tuple[Callable[[float], EnuPoint], float]:
    """Closed-form position function and duration for the non-chase types."""
    t0 = target_path(0.0)

    if spec.shot_type == ShotType.ORBIT:
        omega = spec.speed_mps / spec.orbit_radius_m  # rad/s, counterclockwise
        arc = math.radians(spec.orbit_arc_deg)
        duration = abs(arc) * spec.orbit_radius_m / spec.speed_mps
        sign = 1.0 if arc > 0 else -1.0

        def orbit(t: float) -> EnuPoint:
            target = target_path(t)
            theta = sign * omega * t
            return EnuPoint(
                east=target.east + spec.orbit_radius_m * math.cos(theta),
                north=target.north + spec.orbit_radius_m * math.sin(theta),
                up=target.up + spec.height_m,
            )

        return orbit, duration

    if spec.shot_type == ShotType.ELEVATOR:
        h0 = spec.elevator_start_height_m
        h1 = spec.elevator_end_height_m
        if h0 == h1:
            raise ZeroLengthShotError("elevator start and end heights are equal")
        duration = abs(h1 - h0) / spec.speed_mps
        direction = 1.0 if h1 > h0 else -1.0
        az = math.radians(spec.approach_azimuth_deg)
        anchor_e = t0.east + spec.elevator_distance_m * math.cos(az)
        anchor_n = t0.north + spec.elevator_distance_m * math.sin(az)

        def elevator(t: float) -> EnuPoint:
            return EnuPoint(east=anchor_e, north=anchor_n, up=t0.up + h0 + direction * spec.speed_mps * t)

        return elevator, duration

    if spec.shot_type == ShotType.FLYBY:
        heading = math.radians(spec.flyby_heading_deg)
        de = math.sin(heading)
        dn = math.cos(heading)
        # unit vector 90 degrees clockwise of the travel heading
        re = math.cos(heading)
        rn = -math.sin(heading)
        center_e = t0.east + spec.flyby_offset_m * re
        center_n = t0.north + spec.flyby_offset_m * rn
        start_e = center_e - de * spec.flyby_leg_m / 2.0
        start_n = center_n - dn * spec.flyby_leg_m / 2.0
        duration = spec.flyby_leg_m / spec.speed_mps
        up = t0.up + spec.height_m

        def flyby(t: float) -> EnuPoint:
            return EnuPoint(east=start_e + de * spec.speed_mps * t, north=start_n + dn * spec.speed_mps * t, up=up)

        return flyby, duration

    if spec.shot_type == ShotType.ESTABLISH:
        az = math.radians(spec.approach_azimuth_deg)
        d0 = spec.establish_start_distance_m
        d1 = spec.establish_end_distance_m
        h0 = spec.establish_start_height_m
        h1 = spec.establish_end_height_m
        length = math.hypot(d1 - d0, h1 - h0)
        if length == 0.0:
            raise ZeroLengthShotError("establish start and end poses coincide")
        duration = length / spec.speed_mps
        ce = math.cos(az)
        cn = math.sin(az)

        def establish(t: float) -> EnuPoint:
            s = t / duration
            d = d0 + (d1 - d0) * s
            h = h0 + (h1 - h0) * s
            return EnuPoint(east=t0.east + d * ce, north=t0.north + d * cn, up=t0.up + h)

        return establish, duration

    raise InvalidArgumentError(f"unknown shot type {spec.shot_type!r}")


def _chase_positions(spec: ShotSpec, target_path: TargetPath, dt_s: float) -> tuple[list[EnuPoint], list[float]]:
    """First-order pursuit; target velocity from one-step backward differences."""
    n_steps = max(1, math.ceil(spec.chase_duration_s / dt_s - 1e-9))
    times = [i * dt_s for i in range(n_steps + 1)]

    positions: list[EnuPoint] = []
    unit_prev: tuple[float, float, float] | None = None
    pos: EnuPoint | None = None
    for i, t in enumerate(times):
        target = target_path(t)
        if i == 0:
            ahead = target_path(dt_s)  # bootstrap: forward difference
            ve = (ahead.east - target.east) / dt_s
            vn = (ahead.north - target.north) / dt_s
            vu = (ahead.up - target.up) / dt_s
        else:
            behind = target_path(t - dt_s)
            ve = (target.east - behind.east) / dt_s
            vn = (target.north - behind.north) / dt_s
            vu = (target.up - behind.up) / dt_s
        speed = math.sqrt(ve * ve + vn * vn + vu * vu)
        if speed < 1e-9:
            if unit_prev is None:
                raise DegenerateHeadingError("chase target is stationary; heading undefined")
            ue, un, uu = unit_prev
        else:
            ue, un, uu = ve / speed, vn / speed, vu / speed
            unit_prev = (ue, un, uu)

        commanded = EnuPoint(
            east=target.east - spec.chase_distance_m * ue,
            north=target.north - spec.chase_distance_m * un,
            up=target.up - spec.chase_distance_m * uu + spec.height_m,
        )
        if pos is None:
            pos = commanded
        else:
            de = commanded.east - pos.east
            dn = commanded.north - pos.north
            du = commanded.up - pos.up
            dist = math.sqrt(de * de + dn * dn + du * du)
            max_step = spec.speed_mps * dt_s
            if dist > max_step:
                scale = max_step / dist
                pos = EnuPoint(pos.east + de * scale, pos.north + dn * scale, pos.up + du * scale)
            else:
                pos = commanded
        positions.append(pos)
    return positions, times
