"""Kinematic drone model: manual control, trajectory replay, plan following."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from ..errors import InvalidArgumentError
from ..flightplan import FlightPlan
from ..geometry import DEFAULT_CAMERA, CameraIntrinsics, EnuPoint, Pose, normalize_yaw_deg
from ..shots import Trajectory
from .wind import Wind, wind_velocity


def _clamp(value: float, lo: float, hi: float) -> float:
    return min(hi, max(lo, value))


@dataclass(frozen=True)
class ControlInput:
    """Normalized manual control axes, each clamped to [-1, 1]."""

    forward: float = 0.0
    right: float = 0.0
    climb: float = 0.0
    yaw_rate: float = 0.0
    gimbal_rate: float = 0.0

    def __post_init__(self) -> None:
        for name in ("forward", "right", "climb", "yaw_rate", "gimbal_rate"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidArgumentError(f"{name} must be finite")
            object.__setattr__(self, name, _clamp(value, -1.0, 1.0))


ZERO_CONTROL = ControlInput()


@dataclass(frozen=True)
class DroneLimits:
    max_horizontal_mps: float = 10.0
    max_climb_mps: float = 4.0
    max_yaw_rate_dps: float = 90.0
    max_gimbal_rate_dps: float = 60.0

    def __post_init__(self) -> None:
        for name in ("max_horizontal_mps", "max_climb_mps", "max_yaw_rate_dps", "max_gimbal_rate_dps"):
            if getattr(self, name) <= 0:
                raise InvalidArgumentError(f"{name} must be > 0")


class DroneMode(str, enum.Enum):
    MANUAL = "manual"
    FOLLOW_TRAJECTORY = "follow_trajectory"
    FOLLOW_PLAN = "follow_plan"


@dataclass
class Drone:
    drone_id: int
    position: EnuPoint
    yaw_deg: float = 0.0
    gimbal_pitch_deg: float = 0.0
    limits: DroneLimits = field(default_factory=DroneLimits)
    cruise_speed_mps: float = 5.0
    camera: CameraIntrinsics = DEFAULT_CAMERA
    mode: DroneMode = DroneMode.MANUAL
    trajectory: Trajectory | None = None
    plan: FlightPlan | None = None
    velocity: tuple[float, float, float] = (0.0, 0.0, 0.0)
    # runtime progress
    follow_time_s: float = 0.0
    plan_index: int = 0

    def __post_init__(self) -> None:
        self.yaw_deg = normalize_yaw_deg(self.yaw_deg)
        if self.cruise_speed_mps <= 0:
            raise InvalidArgumentError("cruise_speed_mps must be > 0")
        if self.mode == DroneMode.FOLLOW_TRAJECTORY and self.trajectory is None:
            raise InvalidArgumentError("follow_trajectory mode needs a trajectory")
        if self.mode == DroneMode.FOLLOW_PLAN and self.plan is None:
            raise InvalidArgumentError("follow_plan mode needs a plan")
        if self.mode == DroneMode.FOLLOW_TRAJECTORY and self.trajectory is not None:
            first = self.trajectory.samples[0].pose
            self.position = first.position
            self.yaw_deg = first.yaw_deg
            self.gimbal_pitch_deg = first.gimbal_pitch_deg

    @property
    def pose(self) -> Pose:
        return Pose(position=self.position, yaw_deg=self.yaw_deg, gimbal_pitch_deg=self.gimbal_pitch_deg)

    def step(self, dt: float, wind: Wind, t: float, control: ControlInput) -> None:
        if self.mode == DroneMode.MANUAL:
            apply_manual_control(self, control, wind, dt, t)
        elif self.mode == DroneMode.FOLLOW_TRAJECTORY:
            self._step_trajectory(dt)
        else:
            self._step_plan(dt)

    def _step_trajectory(self, dt: float) -> None:
        """Perfectly position-controlled replay; linear interpolation, hold at the end."""
        assert self.trajectory is not None
        old = self.position
        self.follow_time_s += dt
        pose = sample_trajectory(self.trajectory, self.follow_time_s)
        self.position = pose.position
        self.yaw_deg = pose.yaw_deg
        self.gimbal_pitch_deg = pose.gimbal_pitch_deg
        self.velocity = (
            (self.position.east - old.east) / dt,
            (self.position.north - old.north) / dt,
            (self.position.up - old.up) / dt,
        )

    def _step_plan(self, dt: float) -> None:
        """March toward the current waypoint; snap and advance on arrival."""
        assert self.plan is not None
        waypoints = self.plan.waypoints
        if self.plan_index >= len(waypoints):
            self.velocity = (0.0, 0.0, 0.0)
            return
        old = self.position
        budget = dt
        while budget > 0.0 and self.plan_index < len(waypoints):
            wp = waypoints[self.plan_index]
            speed = min(wp.speed_mps, self.limits.max_horizontal_mps)
            de = wp.position.east - self.position.east
            dn = wp.position.north - self.position.north
            du = wp.position.up - self.position.up
            dist = math.sqrt(de * de + dn * dn + du * du)
            reach = speed * budget
            if dist <= reach:
                self.position = wp.position
                self.yaw_deg = normalize_yaw_deg(wp.heading_deg)
                self.gimbal_pitch_deg = wp.gimbal_pitch_deg
                self.plan_index += 1
                budget -= dist / speed if speed > 0 else budget
            else:
                f = reach / dist
                self.position = EnuPoint(
                    self.position.east + de * f,
                    self.position.north + dn * f,
                    self.position.up + du * f,
                )
                if math.hypot(de, dn) > 1e-9:
                    self.yaw_deg = normalize_yaw_deg(math.degrees(math.atan2(de, dn)))
                self.gimbal_pitch_deg = wp.gimbal_pitch_deg
                budget = 0.0
        self.velocity = (
            (self.position.east - old.east) / dt,
            (self.position.north - old.north) / dt,
            (self.position.up - old.up) / dt,
        )


def sample_trajectory(trajectory: Trajectory, t: float) -> Pose:
    """Pose at time t, linearly interpolated between samples, clamped to the ends."""
    samples = trajectory.samples
    if t <= samples[0].time_s:
        return samples[0].pose
    if t >= samples[-1].time_s:
        return samples[-1].pose
    idx = int(t / trajectory.dt_s)
    idx = min(idx, len(samples) - 2)
    a = samples[idx]
    b = samples[idx + 1]
    f = (t - a.time_s) / trajectory.dt_s
    pa, pb = a.pose, b.pose
    position = EnuPoint(
        east=pa.position.east + (pb.position.east - pa.position.east) * f,
        north=pa.position.north + (pb.position.north - pa.position.north) * f,
        up=pa.position.up + (pb.position.up - pa.position.up) * f,
    )
    yaw = _lerp_angle_deg(pa.yaw_deg, pb.yaw_deg, f)
    pitch = pa.gimbal_pitch_deg + (pb.gimbal_pitch_deg - pa.gimbal_pitch_deg) * f
    return Pose(position=position, yaw_deg=yaw, gimbal_pitch_deg=pitch)


def _lerp_angle_deg(a: float, b: float, f: float) -> float:
    delta = (b - a + 180.0) % 360.0 - 180.0
    return normalize_yaw_deg(a + delta * f)


def apply_manual_control(drone: Drone, control: ControlInput, wind: Wind, dt: float, t: float = 0.0) -> Drone:
    """Integrate one manual-control step (explicit Euler).

    The commanded body-frame velocity is input times limits, with the
    horizontal magnitude capped at the horizontal limit; wind is added on
    top. Yaw and gimbal integrate their commanded rates; gimbal clamps to
    the mechanical range.
    """
    limits = drone.limits
    cmd_forward = control.forward * limits.max_horizontal_mps
    cmd_right = control.right * limits.max_horizontal_mps
    horizontal = math.hypot(cmd_forward, cmd_right)
    if horizontal > limits.max_horizontal_mps:
        scale = limits.max_horizontal_mps / horizontal
        cmd_forward *= scale
        cmd_right *= scale
    cmd_climb = control.climb * limits.max_climb_mps

    yaw_rad = math.radians(drone.yaw_deg)
    sy = math.sin(yaw_rad)
    cy = math.cos(yaw_rad)
    ve = cmd_forward * sy + cmd_right * cy
    vn = cmd_forward * cy - cmd_right * sy
    vu = cmd_climb

    we, wn, wu = wind_velocity(wind, t)
    drone.velocity = (ve + we, vn + wn, vu + wu)
    drone.position = EnuPoint(
        east=drone.position.east + drone.velocity[0] * dt,
        north=drone.position.north + drone.velocity[1] * dt,
        up=drone.position.up + drone.velocity[2] * dt,
    )
    drone.yaw_deg = normalize_yaw_deg(drone.yaw_deg + control.yaw_rate * limits.max_yaw_rate_dps * dt)
    drone.gimbal_pitch_deg = _clamp(
        drone.gimbal_pitch_deg + control.gimbal_rate * limits.max_gimbal_rate_dps * dt, -30.0, 90.0
    )
    return drone
