"""Versioned project documents: scene, actors, drones, shots and scan plans.

A project is a single human-readable JSON document with an explicit
schema_version. Loading is strict: unsupported versions and unknown fields
are rejected, and every id reference must resolve. ``load(save(p)) == p``
holds exactly (floats survive JSON round trips bit-for-bit).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import IntegrityError, InvalidArgumentError, SchemaVersionError
from .geometry import CameraIntrinsics, EnuPoint, GeoOrigin, Pose
from .scanplan import (
    CapturePoint,
    GridPass,
    ScanArea,
    ScanConfig,
    ScanLayer,
    ScanLeg,
    ScanPlan,
)
from .shots import ShotSpec, ShotType, TargetRef, Trajectory, generate_shot, static_target
from .sim import (
    Actor,
    Drone,
    DroneLimits,
    DroneMode,
    Recording,
    Terrain,
    Wind,
    World,
)
from .sim.actors import ACTOR_KINDS

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class SceneMetadata:
    """Visual-only options; carried for clients, no effect on simulation."""

    time_of_day_h: float = 12.0
    lighting: float = 1.0
    cloud_thickness: float = 0.0
    cloud_speed_mps: float = 0.0


@dataclass(frozen=True)
class ActorConfig:
    actor_id: int
    kind: str
    path: tuple[EnuPoint, ...]
    speed_mps: float
    loop: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ACTOR_KINDS:
            raise InvalidArgumentError(f"actors[{self.actor_id}].kind: unknown kind {self.kind!r}")
        if len(self.path) < 2:
            raise InvalidArgumentError(f"actors[{self.actor_id}].path: needs at least 2 waypoints")
        if self.speed_mps <= 0:
            raise InvalidArgumentError(f"actors[{self.actor_id}].speed_mps: must be > 0")
        for a, b in zip(self.path, self.path[1:]):
            if a.distance_to(b) == 0.0:
                raise InvalidArgumentError(f"actors[{self.actor_id}].path: zero-length segment")


@dataclass(frozen=True)
class DroneConfig:
    drone_id: int
    name: str = "drone"
    start: EnuPoint = EnuPoint(0.0, 0.0, 10.0)
    cruise_speed_mps: float = 5.0
    limits: DroneLimits = field(default_factory=DroneLimits)
    shot_spec_id: int | None = None

    def __post_init__(self) -> None:
        if self.cruise_speed_mps <= 0:
            raise InvalidArgumentError(f"drones[{self.drone_id}].cruise_speed_mps: must be > 0")


@dataclass(frozen=True)
class ShotSpecEntry:
    spec_id: int
    spec: ShotSpec


@dataclass(frozen=True)
class ScanPlanEntry:
    plan_id: int
    area: ScanArea
    config: ScanConfig
    plan: ScanPlan


@dataclass(frozen=True)
class RecordingEntry:
    drone_id: int
    dt_s: float
    samples: tuple[tuple[float, Pose], ...]


@dataclass(frozen=True)
class Project:
    schema_version: int = SCHEMA_VERSION
    origin: GeoOrigin = GeoOrigin(0.0, 0.0, 0.0)
    terrain: Terrain | None = None
    wind: Wind = Wind()
    actors: tuple[ActorConfig, ...] = ()
    drones: tuple[DroneConfig, ...] = ()
    shot_specs: tuple[ShotSpecEntry, ...] = ()
    scan_plans: tuple[ScanPlanEntry, ...] = ()
    recordings: tuple[RecordingEntry, ...] = ()
    scene: SceneMetadata = SceneMetadata()


def validate_project(project: Project) -> None:
    """Check id uniqueness and that every reference resolves."""
    actor_ids = [a.actor_id for a in project.actors]
    drone_ids = [d.drone_id for d in project.drones]
    spec_ids = [s.spec_id for s in project.shot_specs]
    plan_ids = [p.plan_id for p in project.scan_plans]
    for label, ids in (("actor", actor_ids), ("drone", drone_ids), ("shot spec", spec_ids), ("scan plan", plan_ids)):
        if len(ids) != len(set(ids)):
            raise IntegrityError(f"duplicate {label} ids")
    for entry in project.shot_specs:
        target = entry.spec.target
        if target.actor_id is not None and target.actor_id not in actor_ids:
            raise IntegrityError(f"shot spec {entry.spec_id} references missing actor {target.actor_id}")
    for drone in project.drones:
        if drone.shot_spec_id is not None and drone.shot_spec_id not in spec_ids:
            raise IntegrityError(f"drone {drone.drone_id} references missing shot spec {drone.shot_spec_id}")
    for rec in project.recordings:
        if rec.drone_id not in drone_ids:
            raise IntegrityError(f"recording references missing drone {rec.drone_id}")


# --- serialization -------------------------------------------------------

def _check_keys(data: dict, allowed: set[str], context: str) -> None:
    unknown = set(data) - allowed
    if unknown:
        raise SchemaVersionError(f"unknown field(s) {sorted(unknown)} in {context}")


def _enu_to_dict(p: EnuPoint) -> dict:
    return {"east": p.east, "north": p.north, "up": p.up}


def _enu_from_dict(data: dict, context: str) -> EnuPoint:
    _check_keys(data, {"east", "north", "up"}, context)
    return EnuPoint(east=data["east"], north=data["north"], up=data["up"])


def _camera_to_dict(c: CameraIntrinsics) -> dict:
    return {
        "sensor_width_mm": c.sensor_width_mm,
        "sensor_height_mm": c.sensor_height_mm,
        "focal_length_mm": c.focal_length_mm,
    }


def _camera_from_dict(data: dict, context: str) -> CameraIntrinsics:
    _check_keys(data, {"sensor_width_mm", "sensor_height_mm", "focal_length_mm"}, context)
    return CameraIntrinsics(**data)


def _pose_to_dict(pose: Pose) -> dict:
    return {
        "position": _enu_to_dict(pose.position),
        "yaw_deg": pose.yaw_deg,
        "gimbal_pitch_deg": pose.gimbal_pitch_deg,
    }


def _pose_from_dict(data: dict, context: str) -> Pose:
    _check_keys(data, {"position", "yaw_deg", "gimbal_pitch_deg"}, context)
    return Pose(
        position=_enu_from_dict(data["position"], context),
        yaw_deg=data["yaw_deg"],
        gimbal_pitch_deg=data["gimbal_pitch_deg"],
    )


def _spec_to_dict(spec: ShotSpec) -> dict:
    if spec.target.static_point is not None:
        target: dict[str, Any] = {"static_point": _enu_to_dict(spec.target.static_point)}
    else:
        target = {"actor_id": spec.target.actor_id}
    return {
        "shot_type": spec.shot_type.value,
        "target": target,
        "camera": _camera_to_dict(spec.camera),
        "height_m": spec.height_m,
        "speed_mps": spec.speed_mps,
        "orbit_radius_m": spec.orbit_radius_m,
        "orbit_arc_deg": spec.orbit_arc_deg,
        "chase_distance_m": spec.chase_distance_m,
        "chase_duration_s": spec.chase_duration_s,
        "flyby_offset_m": spec.flyby_offset_m,
        "flyby_leg_m": spec.flyby_leg_m,
        "flyby_heading_deg": spec.flyby_heading_deg,
        "establish_start_distance_m": spec.establish_start_distance_m,
        "establish_end_distance_m": spec.establish_end_distance_m,
        "establish_start_height_m": spec.establish_start_height_m,
        "establish_end_height_m": spec.establish_end_height_m,
        "elevator_start_height_m": spec.elevator_start_height_m,
        "elevator_end_height_m": spec.elevator_end_height_m,
        "elevator_distance_m": spec.elevator_distance_m,
        "approach_azimuth_deg": spec.approach_azimuth_deg,
    }


_SPEC_SCALAR_FIELDS = (
    "height_m",
    "speed_mps",
    "orbit_radius_m",
    "orbit_arc_deg",
    "chase_distance_m",
    "chase_duration_s",
    "flyby_offset_m",
    "flyby_leg_m",
    "flyby_heading_deg",
    "establish_start_distance_m",
    "establish_end_distance_m",
    "establish_start_height_m",
    "establish_end_height_m",
    "elevator_start_height_m",
    "elevator_end_height_m",
    "elevator_distance_m",
    "approach_azimuth_deg",
)


def _spec_from_dict(data: dict, context: str) -> ShotSpec:
    _check_keys(data, {"shot_type", "target", "camera", *_SPEC_SCALAR_FIELDS}, context)
    target_data = data["target"]
    _check_keys(target_data, {"static_point", "actor_id"}, f"{context}.target")
    if "static_point" in target_data:
        target = TargetRef.point(_enu_from_dict(target_data["static_point"], f"{context}.target"))
    else:
        target = TargetRef.actor(target_data["actor_id"])
    try:
        shot_type = ShotType(data["shot_type"])
    except ValueError as exc:
        raise SchemaVersionError(f"unknown shot type {data['shot_type']!r} in {context}") from exc
    scalars = {name: data[name] for name in _SPEC_SCALAR_FIELDS if name in data}
    return ShotSpec(
        shot_type=shot_type,
        target=target,
        camera=_camera_from_dict(data["camera"], f"{context}.camera"),
        **scalars,
    )


def _plan_to_dict(plan: ScanPlan) -> dict:
    return {
        "total_image_count": plan.total_image_count,
        "layers": [
            {
                "height_m": layer.height_m,
                "gimbal_pitch_deg": layer.gimbal_pitch_deg,
                "cross_track_spacing_m": layer.cross_track_spacing_m,
                "in_track_spacing_m": layer.in_track_spacing_m,
                "passes": [
                    {
                        "direction": grid_pass.direction,
                        "cross_spacing_m": grid_pass.cross_spacing_m,
                        "in_spacing_m": grid_pass.in_spacing_m,
                        "legs": [
                            {
                                "start": _enu_to_dict(leg.start),
                                "end": _enu_to_dict(leg.end),
                                "heading_deg": leg.heading_deg,
                                "captures": [
                                    {
                                        "position": _enu_to_dict(c.position),
                                        "yaw_deg": c.pose.yaw_deg,
                                        "gimbal_pitch_deg": c.pose.gimbal_pitch_deg,
                                    }
                                    for c in leg.captures
                                ],
                            }
                            for leg in grid_pass.legs
                        ],
                    }
                    for grid_pass in layer.passes
                ],
            }
            for layer in plan.layers
        ],
    }


def _plan_from_dict(data: dict, context: str) -> ScanPlan:
    _check_keys(data, {"total_image_count", "layers"}, context)
    layers = []
    for li, layer_data in enumerate(data["layers"]):
        lcontext = f"{context}.layers[{li}]"
        _check_keys(
            layer_data,
            {"height_m", "gimbal_pitch_deg", "cross_track_spacing_m", "in_track_spacing_m", "passes"},
            lcontext,
        )
        passes = []
        for pi, pass_data in enumerate(layer_data["passes"]):
            pcontext = f"{lcontext}.passes[{pi}]"
            _check_keys(pass_data, {"direction", "cross_spacing_m", "in_spacing_m", "legs"}, pcontext)
            legs = []
            for leg_data in pass_data["legs"]:
                _check_keys(leg_data, {"start", "end", "heading_deg", "captures"}, pcontext)
                captures = []
                for c in leg_data["captures"]:
                    _check_keys(c, {"position", "yaw_deg", "gimbal_pitch_deg"}, pcontext)
                    position = _enu_from_dict(c["position"], pcontext)
                    captures.append(
                        CapturePoint(
                            position=position,
                            pose=Pose(
                                position=position,
                                yaw_deg=c["yaw_deg"],
                                gimbal_pitch_deg=c["gimbal_pitch_deg"],
                            ),
                        )
                    )
                legs.append(
                    ScanLeg(
                        start=_enu_from_dict(leg_data["start"], pcontext),
                        end=_enu_from_dict(leg_data["end"], pcontext),
                        heading_deg=leg_data["heading_deg"],
                        captures=tuple(captures),
                    )
                )
            passes.append(
                GridPass(
                    direction=pass_data["direction"],
                    cross_spacing_m=pass_data["cross_spacing_m"],
                    in_spacing_m=pass_data["in_spacing_m"],
                    legs=tuple(legs),
                )
            )
        layers.append(
            ScanLayer(
                height_m=layer_data["height_m"],
                gimbal_pitch_deg=layer_data["gimbal_pitch_deg"],
                cross_track_spacing_m=layer_data["cross_track_spacing_m"],
                in_track_spacing_m=layer_data["in_track_spacing_m"],
                passes=tuple(passes),
            )
        )
    return ScanPlan(layers=tuple(layers), total_image_count=data["total_image_count"])


def project_to_dict(project: Project) -> dict:
    terrain = project.terrain
    return {
        "schema_version": project.schema_version,
        "origin": {
            "latitude": project.origin.latitude,
            "longitude": project.origin.longitude,
            "altitude": project.origin.altitude,
        },
        "terrain": None
        if terrain is None
        else {
            "cell_size_m": terrain.cell_size_m,
            "heights": terrain.heights.tolist(),
            "water_mask": None if terrain.water_mask is None else terrain.water_mask.astype(int).tolist(),
        },
        "wind": {
            "mean_east_mps": project.wind.mean_east_mps,
            "mean_north_mps": project.wind.mean_north_mps,
            "mean_up_mps": project.wind.mean_up_mps,
            "gust_amplitude_mps": project.wind.gust_amplitude_mps,
            "gust_period_s": project.wind.gust_period_s,
            "phase_seed": project.wind.phase_seed,
        },
        "actors": [
            {
                "actor_id": a.actor_id,
                "kind": a.kind,
                "path": [_enu_to_dict(p) for p in a.path],
                "speed_mps": a.speed_mps,
                "loop": a.loop,
            }
            for a in project.actors
        ],
        "drones": [
            {
                "drone_id": d.drone_id,
                "name": d.name,
                "start": _enu_to_dict(d.start),
                "cruise_speed_mps": d.cruise_speed_mps,
                "limits": {
                    "max_horizontal_mps": d.limits.max_horizontal_mps,
                    "max_climb_mps": d.limits.max_climb_mps,
                    "max_yaw_rate_dps": d.limits.max_yaw_rate_dps,
                    "max_gimbal_rate_dps": d.limits.max_gimbal_rate_dps,
                },
                "shot_spec_id": d.shot_spec_id,
            }
            for d in project.drones
        ],
        "shot_specs": [
            {"spec_id": entry.spec_id, "spec": _spec_to_dict(entry.spec)} for entry in project.shot_specs
        ],
        "scan_plans": [
            {
                "plan_id": entry.plan_id,
                "area": {
                    "origin_corner": _enu_to_dict(entry.area.origin_corner),
                    "length_x_m": entry.area.length_x_m,
                    "length_y_m": entry.area.length_y_m,
                    "rotation_deg": entry.area.rotation_deg,
                },
                "config": {
                    "camera": _camera_to_dict(entry.config.camera),
                    "base_height_m": entry.config.base_height_m,
                    "avg_building_height_m": entry.config.avg_building_height_m,
                    "max_building_height_m": entry.config.max_building_height_m,
                    "in_track_overlap": entry.config.in_track_overlap,
                    "cross_track_overlap": entry.config.cross_track_overlap,
                    "gimbal_pitch_per_layer_deg": list(entry.config.gimbal_pitch_per_layer_deg),
                    "cruise_speed_mps": entry.config.cruise_speed_mps,
                    "both_directions": entry.config.both_directions,
                },
                "plan": _plan_to_dict(entry.plan),
            }
            for entry in project.scan_plans
        ],
        "recordings": [
            {
                "drone_id": r.drone_id,
                "dt_s": r.dt_s,
                "samples": [
                    [t, pose.position.east, pose.position.north, pose.position.up, pose.yaw_deg, pose.gimbal_pitch_deg]
                    for t, pose in r.samples
                ],
            }
            for r in project.recordings
        ],
        "scene": {
            "time_of_day_h": project.scene.time_of_day_h,
            "lighting": project.scene.lighting,
            "cloud_thickness": project.scene.cloud_thickness,
            "cloud_speed_mps": project.scene.cloud_speed_mps,
        },
    }


_PROJECT_KEYS = {
    "schema_version",
    "origin",
    "terrain",
    "wind",
    "actors",
    "drones",
    "shot_specs",
    "scan_plans",
    "recordings",
    "scene",
}


def project_from_dict(data: dict) -> Project:
    if not isinstance(data, dict):
        raise SchemaVersionError("project document must be a JSON object")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(f"unsupported schema_version {version!r}; this build supports {SCHEMA_VERSION}")
    _check_keys(data, _PROJECT_KEYS, "project")

    origin_data = data["origin"]
    _check_keys(origin_data, {"latitude", "longitude", "altitude"}, "origin")
    origin = GeoOrigin(**origin_data)

    terrain = None
    if data["terrain"] is not None:
        tdata = data["terrain"]
        _check_keys(tdata, {"cell_size_m", "heights", "water_mask"}, "terrain")
        water = tdata["water_mask"]
        terrain = Terrain(
            heights=np.asarray(tdata["heights"], dtype=np.float64),
            cell_size_m=tdata["cell_size_m"],
            water_mask=None if water is None else np.asarray(water, dtype=bool),
        )

    wdata = data["wind"]
    _check_keys(
        wdata,
        {"mean_east_mps", "mean_north_mps", "mean_up_mps", "gust_amplitude_mps", "gust_period_s", "phase_seed"},
        "wind",
    )
    wind = Wind(**wdata)

    actors = []
    for adata in data["actors"]:
        _check_keys(adata, {"actor_id", "kind", "path", "speed_mps", "loop"}, "actor")
        actors.append(
            ActorConfig(
                actor_id=adata["actor_id"],
                kind=adata["kind"],
                path=tuple(_enu_from_dict(p, "actor.path") for p in adata["path"]),
                speed_mps=adata["speed_mps"],
                loop=adata["loop"],
            )
        )

    drones = []
    for ddata in data["drones"]:
        _check_keys(ddata, {"drone_id", "name", "start", "cruise_speed_mps", "limits", "shot_spec_id"}, "drone")
        limits_data = ddata["limits"]
        _check_keys(
            limits_data,
            {"max_horizontal_mps", "max_climb_mps", "max_yaw_rate_dps", "max_gimbal_rate_dps"},
            "drone.limits",
        )
        drones.append(
            DroneConfig(
                drone_id=ddata["drone_id"],
                name=ddata["name"],
                start=_enu_from_dict(ddata["start"], "drone.start"),
                cruise_speed_mps=ddata["cruise_speed_mps"],
                limits=DroneLimits(**limits_data),
                shot_spec_id=ddata["shot_spec_id"],
            )
        )

    shot_specs = []
    for sdata in data["shot_specs"]:
        _check_keys(sdata, {"spec_id", "spec"}, "shot_specs")
        shot_specs.append(ShotSpecEntry(spec_id=sdata["spec_id"], spec=_spec_from_dict(sdata["spec"], "shot_spec")))

    scan_plans = []
    for pdata in data["scan_plans"]:
        _check_keys(pdata, {"plan_id", "area", "config", "plan"}, "scan_plans")
        area_data = pdata["area"]
        _check_keys(area_data, {"origin_corner", "length_x_m", "length_y_m", "rotation_deg"}, "scan area")
        area = ScanArea(
            origin_corner=_enu_from_dict(area_data["origin_corner"], "scan area"),
            length_x_m=area_data["length_x_m"],
            length_y_m=area_data["length_y_m"],
            rotation_deg=area_data["rotation_deg"],
        )
        config_data = dict(pdata["config"])
        _check_keys(
            config_data,
            {
                "camera",
                "base_height_m",
                "avg_building_height_m",
                "max_building_height_m",
                "in_track_overlap",
                "cross_track_overlap",
                "gimbal_pitch_per_layer_deg",
                "cruise_speed_mps",
                "both_directions",
            },
            "scan config",
        )
        config_data["camera"] = _camera_from_dict(config_data["camera"], "scan config.camera")
        config_data["gimbal_pitch_per_layer_deg"] = tuple(config_data["gimbal_pitch_per_layer_deg"])
        config = ScanConfig(**config_data)
        scan_plans.append(
            ScanPlanEntry(
                plan_id=pdata["plan_id"],
                area=area,
                config=config,
                plan=_plan_from_dict(pdata["plan"], "scan plan"),
            )
        )

    recordings = []
    for rdata in data["recordings"]:
        _check_keys(rdata, {"drone_id", "dt_s", "samples"}, "recordings")
        samples = tuple(
            (
                row[0],
                Pose(position=EnuPoint(row[1], row[2], row[3]), yaw_deg=row[4], gimbal_pitch_deg=row[5]),
            )
            for row in rdata["samples"]
        )
        recordings.append(RecordingEntry(drone_id=rdata["drone_id"], dt_s=rdata["dt_s"], samples=samples))

    scene_data = data["scene"]
    _check_keys(scene_data, {"time_of_day_h", "lighting", "cloud_thickness", "cloud_speed_mps"}, "scene")
    scene = SceneMetadata(**scene_data)

    project = Project(
        schema_version=version,
        origin=origin,
        terrain=terrain,
        wind=wind,
        actors=tuple(actors),
        drones=tuple(drones),
        shot_specs=tuple(shot_specs),
        scan_plans=tuple(scan_plans),
        recordings=tuple(recordings),
        scene=scene,
    )
    validate_project(project)
    return project


def save_project(project: Project) -> bytes:
    validate_project(project)
    return json.dumps(project_to_dict(project), sort_keys=True, indent=2, allow_nan=False).encode("utf-8")


def load_project(data: bytes) -> Project:
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaVersionError(f"not a valid project document: {exc}") from exc
    return project_from_dict(document)


# --- standalone artifact documents (CLI files) ---------------------------

def scan_bundle_to_dict(area: ScanArea, config: ScanConfig, plan: ScanPlan) -> dict:
    """Self-contained scan mission document: area + config + generated plan."""
    return {
        "area": {
            "origin_corner": _enu_to_dict(area.origin_corner),
            "length_x_m": area.length_x_m,
            "length_y_m": area.length_y_m,
            "rotation_deg": area.rotation_deg,
        },
        "config": {
            "camera": _camera_to_dict(config.camera),
            "base_height_m": config.base_height_m,
            "avg_building_height_m": config.avg_building_height_m,
            "max_building_height_m": config.max_building_height_m,
            "in_track_overlap": config.in_track_overlap,
            "cross_track_overlap": config.cross_track_overlap,
            "gimbal_pitch_per_layer_deg": list(config.gimbal_pitch_per_layer_deg),
            "cruise_speed_mps": config.cruise_speed_mps,
            "both_directions": config.both_directions,
        },
        "plan": _plan_to_dict(plan),
    }


def scan_bundle_from_dict(data: dict) -> tuple[ScanArea, ScanConfig, ScanPlan]:
    _check_keys(data, {"area", "config", "plan"}, "scan bundle")
    area_data = data["area"]
    _check_keys(area_data, {"origin_corner", "length_x_m", "length_y_m", "rotation_deg"}, "scan bundle.area")
    area = ScanArea(
        origin_corner=_enu_from_dict(area_data["origin_corner"], "scan bundle.area"),
        length_x_m=area_data["length_x_m"],
        length_y_m=area_data["length_y_m"],
        rotation_deg=area_data["rotation_deg"],
    )
    config_data = dict(data["config"])
    config_data["camera"] = _camera_from_dict(config_data["camera"], "scan bundle.config.camera")
    config_data["gimbal_pitch_per_layer_deg"] = tuple(config_data["gimbal_pitch_per_layer_deg"])
    config = ScanConfig(**config_data)
    return area, config, _plan_from_dict(data["plan"], "scan bundle.plan")


def trajectory_to_dict(trajectory: Trajectory) -> dict:
    return {
        "dt_s": trajectory.dt_s,
        "camera": _camera_to_dict(trajectory.camera),
        "samples": [
            [
                s.time_s,
                s.pose.position.east,
                s.pose.position.north,
                s.pose.position.up,
                s.pose.yaw_deg,
                s.pose.gimbal_pitch_deg,
            ]
            for s in trajectory.samples
        ],
    }


def trajectory_from_dict(data: dict) -> Trajectory:
    from .shots import TrajectorySample

    _check_keys(data, {"dt_s", "camera", "samples"}, "trajectory")
    samples = tuple(
        TrajectorySample(
            time_s=row[0],
            pose=Pose(position=EnuPoint(row[1], row[2], row[3]), yaw_deg=row[4], gimbal_pitch_deg=row[5]),
        )
        for row in data["samples"]
    )
    return Trajectory(dt_s=data["dt_s"], camera=_camera_from_dict(data["camera"], "trajectory.camera"), samples=samples)


# --- world construction --------------------------------------------------

def shot_target_path(project: Project, spec: ShotSpec):
    """Target position over time: a constant for static targets, the actor's
    waypoint motion for actor targets."""
    if spec.target.static_point is not None:
        return static_target(spec.target.static_point)
    config = next(a for a in project.actors if a.actor_id == spec.target.actor_id)
    actor = Actor(
        actor_id=config.actor_id,
        kind=config.kind,
        path=config.path,
        speed_mps=config.speed_mps,
        loop=config.loop,
    )
    return actor.position_at_time


def generate_project_shot(project: Project, spec: ShotSpec, dt_s: float = 0.05) -> Trajectory:
    return generate_shot(spec, shot_target_path(project, spec), dt_s=dt_s)


def build_world(project: Project, tick_s: float = 0.05, manual_drone_id: int | None = None) -> World:
    """Instantiate a fresh simulation world from the project.

    Drones with a shot spec follow their regenerated trajectory; all others
    (and the one named by manual_drone_id) start in manual mode, hovering.
    """
    validate_project(project)
    specs = {entry.spec_id: entry.spec for entry in project.shot_specs}
    actors = [
        Actor(actor_id=a.actor_id, kind=a.kind, path=a.path, speed_mps=a.speed_mps, loop=a.loop)
        for a in project.actors
    ]
    drones = []
    for config in project.drones:
        trajectory = None
        mode = DroneMode.MANUAL
        camera = None
        if config.shot_spec_id is not None and config.drone_id != manual_drone_id:
            spec = specs[config.shot_spec_id]
            trajectory = generate_project_shot(project, spec, dt_s=tick_s)
            mode = DroneMode.FOLLOW_TRAJECTORY
            camera = spec.camera
        kwargs = {"camera": camera} if camera is not None else {}
        drones.append(
            Drone(
                drone_id=config.drone_id,
                position=config.start,
                limits=config.limits,
                cruise_speed_mps=config.cruise_speed_mps,
                mode=mode,
                trajectory=trajectory,
                **kwargs,
            )
        )
    return World(
        terrain=project.terrain,
        wind=project.wind,
        actors=actors,
        drones=drones,
        tick_s=tick_s,
    )


def attach_recording(project: Project, recording: Recording) -> Project:
    """Project copy with the recording appended (for freeplay exit)."""
    entry = RecordingEntry(drone_id=recording.drone_id, dt_s=recording.dt_s, samples=recording.samples)
    return Project(
        schema_version=project.schema_version,
        origin=project.origin,
        terrain=project.terrain,
        wind=project.wind,
        actors=project.actors,
        drones=project.drones,
        shot_specs=project.shot_specs,
        scan_plans=project.scan_plans,
        recordings=project.recordings + (entry,),
        scene=project.scene,
    )
