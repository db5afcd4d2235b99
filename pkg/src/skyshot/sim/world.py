"""Fixed-step deterministic world simulation.

The world advances only in whole ticks of the configured step (20 Hz by
default); any other dt is rejected outright, so two runs from the same
initial state and input log are bit-identical. Wind perturbs manual-mode
drones only: plan and trajectory followers are treated as perfectly
position-controlled so rehearsed shots replay exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..errors import InvalidArgumentError
from ..geometry import CameraIntrinsics, EnuPoint
from ..shots import Trajectory
from .actors import Actor, follow_path
from .drone import ZERO_CONTROL, ControlInput, Drone, DroneMode
from .recording import Recording
from .terrain import Terrain
from .wind import Wind

DEFAULT_TICK_S = 0.05
DEFAULT_TERRAIN_THRESHOLD_M = 5.0
DEFAULT_ACTOR_THRESHOLD_M = 3.0


@dataclass(frozen=True)
class SimEvent:
    time_s: float
    kind: str  # terrain_proximity | actor_proximity | out_of_bounds
    subject_ids: tuple[int, ...]
    distance_m: float


class World:
    """Owns terrain, wind, actors and drones; stepped by a single caller."""

    def __init__(
        self,
        terrain: Terrain | None = None,
        wind: Wind | None = None,
        actors: list[Actor] | None = None,
        drones: list[Drone] | None = None,
        tick_s: float = DEFAULT_TICK_S,
        terrain_threshold_m: float = DEFAULT_TERRAIN_THRESHOLD_M,
        actor_threshold_m: float = DEFAULT_ACTOR_THRESHOLD_M,
    ):
        if tick_s <= 0:
            raise InvalidArgumentError("tick_s must be > 0")
        self.terrain = terrain
        self.wind = wind if wind is not None else Wind()
        self.actors = list(actors) if actors else []
        self.drones = list(drones) if drones else []
        self.tick_s = tick_s
        self.terrain_threshold_m = terrain_threshold_m
        self.actor_threshold_m = actor_threshold_m
        self.tick = 0
        self.time_s = 0.0
        self._pending: dict[int, ControlInput] = {}
        self._recordings: dict[int, list[tuple[float, object]]] = {}

        ids = [a.actor_id for a in self.actors]
        if len(ids) != len(set(ids)):
            raise InvalidArgumentError("duplicate actor ids")
        ids = [d.drone_id for d in self.drones]
        if len(ids) != len(set(ids)):
            raise InvalidArgumentError("duplicate drone ids")
        if self.terrain is not None:
            for actor in self.actors:
                if actor.kind == "boat":
                    for wp in actor.path:
                        if not self.terrain.is_water(wp.east, wp.north):
                            raise InvalidArgumentError(
                                f"boat {actor.actor_id} waypoint ({wp.east}, {wp.north}) is not on water"
                            )

    def drone(self, drone_id: int) -> Drone:
        for d in self.drones:
            if d.drone_id == drone_id:
                return d
        raise InvalidArgumentError(f"no drone with id {drone_id}")

    def actor(self, actor_id: int) -> Actor:
        for a in self.actors:
            if a.actor_id == actor_id:
                return a
        raise InvalidArgumentError(f"no actor with id {actor_id}")

    def set_control(self, drone_id: int, control: ControlInput) -> None:
        """Queue a manual control for the next tick (last writer wins)."""
        drone = self.drone(drone_id)
        if drone.mode != DroneMode.MANUAL:
            raise InvalidArgumentError(f"drone {drone_id} is not in manual mode")
        self._pending[drone_id] = control

    def start_recording(self, drone_id: int) -> None:
        drone = self.drone(drone_id)
        self._recordings[drone_id] = [(self.time_s, drone.pose)]

    def stop_recording(self, drone_id: int) -> Recording:
        samples = self._recordings.pop(drone_id, None)
        if samples is None:
            raise InvalidArgumentError(f"no recording in progress for drone {drone_id}")
        return Recording(drone_id=drone_id, dt_s=self.tick_s, samples=tuple(samples))

    def step(self, dt: float | None = None) -> list[SimEvent]:
        """Advance everything by exactly one tick; returns the tick's events."""
        if dt is not None and dt != self.tick_s:
            raise InvalidArgumentError(f"engine runs at a fixed tick of {self.tick_s} s, got {dt}")
        dt = self.tick_s
        t_new = self.time_s + dt

        for actor in self.actors:
            follow_path(actor, dt)
        for drone in self.drones:
            control = self._pending.pop(drone.drone_id, ZERO_CONTROL)
            drone.step(dt, self.wind, self.time_s, control)

        self.time_s = t_new
        self.tick += 1

        for drone_id, samples in self._recordings.items():
            samples.append((self.time_s, self.drone(drone_id).pose))

        return self._collect_events()

    def _collect_events(self) -> list[SimEvent]:
        events: list[SimEvent] = []
        for drone in self.drones:
            p = drone.position
            if self.terrain is not None:
                if not self.terrain.contains(p.east, p.north):
                    overshoot = self._bounds_overshoot(p)
                    events.append(
                        SimEvent(self.time_s, "out_of_bounds", (drone.drone_id,), -overshoot)
                    )
                else:
                    agl = p.up - self.terrain.height_at(p.east, p.north)
                    if agl < self.terrain_threshold_m:
                        events.append(
                            SimEvent(self.time_s, "terrain_proximity", (drone.drone_id,), agl)
                        )
            for actor in self.actors:
                d = p.distance_to(actor.pose.position)
                if d < self.actor_threshold_m:
                    events.append(
                        SimEvent(self.time_s, "actor_proximity", (drone.drone_id, actor.actor_id), d)
                    )
        return events

    def _bounds_overshoot(self, p: EnuPoint) -> float:
        assert self.terrain is not None
        de = max(0.0 - p.east, p.east - self.terrain.east_extent_m, 0.0)
        dn = max(0.0 - p.north, p.north - self.terrain.north_extent_m, 0.0)
        return math.hypot(de, dn)

    def snapshot(self) -> dict:
        """Immutable view of all poses for streaming/inspection."""
        return {
            "tick": self.tick,
            "time_s": self.time_s,
            "drones": [
                {
                    "id": d.drone_id,
                    "east": d.position.east,
                    "north": d.position.north,
                    "up": d.position.up,
                    "yaw_deg": d.yaw_deg,
                    "gimbal_pitch_deg": d.gimbal_pitch_deg,
                    "mode": d.mode.value,
                    # intrinsics ride along so clients can derive any number
                    # of per-drone viewports from the snapshot alone
                    "camera": {
                        "sensor_width_mm": d.camera.sensor_width_mm,
                        "sensor_height_mm": d.camera.sensor_height_mm,
                        "focal_length_mm": d.camera.focal_length_mm,
                    },
                }
                for d in self.drones
            ],
            "actors": [
                {
                    "id": a.actor_id,
                    "kind": a.kind,
                    "east": a.pose.position.east,
                    "north": a.pose.position.north,
                    "up": a.pose.position.up,
                    "yaw_deg": a.pose.yaw_deg,
                }
                for a in self.actors
            ],
        }


def landmark_coverage(trajectory: Trajectory, camera: CameraIntrinsics, landmark: EnuPoint) -> float:
    """Fraction of trajectory samples whose frustum contains the landmark."""
    samples = trajectory.samples
    if not samples:
        raise InvalidArgumentError("trajectory has no samples")
    array = np.empty((len(samples), 5), dtype=np.float64)
    for i, s in enumerate(samples):
        array[i, 0] = s.pose.position.east
        array[i, 1] = s.pose.position.north
        array[i, 2] = s.pose.position.up
        array[i, 3] = s.pose.yaw_deg
        array[i, 4] = s.pose.gimbal_pitch_deg
    visible = kernels.frustum_visible_count(
        array,
        camera.sensor_width_mm,
        camera.sensor_height_mm,
        camera.focal_length_mm,
        landmark.east,
        landmark.north,
        landmark.up,
    )
    return visible / len(samples)
