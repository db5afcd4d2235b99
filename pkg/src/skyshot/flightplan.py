"""Export-neutral flight plans and the mission-file exporters/importers.

Supported formats:

* QGroundControl ``.plan`` JSON (export + import of the emitted subset),
* Litchi waypoint CSV (export only),
* a neutral JSON representation for persistence and format conversion.

All exporters are deterministic (sorted keys, fixed float handling) and
refuse non-finite values. Coordinates are written with 12 decimal places
so positions survive a round trip to within 1e-6 m.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from typing import Any

from .errors import ExportError, InvalidArgumentError, PlanParseError, UnsupportedLatitudeError
from .geometry import EnuPoint, GeoOrigin, enu_to_geodetic, geodetic_to_enu
from .shots import Trajectory

# MAVLink command ids for the emitted mission-item subset.
MAV_CMD_NAV_WAYPOINT = 16
MAV_CMD_DO_CHANGE_SPEED = 178
MAV_CMD_DO_DIGICAM_CONTROL = 203
MAV_CMD_DO_MOUNT_CONTROL = 205

_FRAME_RELATIVE_ALT = 3
_FRAME_MISSION = 2

_COORD_DECIMALS = 12
_ALT_DECIMALS = 7


@dataclass(frozen=True)
class Waypoint:
    position: EnuPoint
    speed_mps: float = 5.0
    heading_deg: float = 0.0
    gimbal_pitch_deg: float = 0.0
    capture: bool = False

    def __post_init__(self) -> None:
        if self.speed_mps <= 0:
            raise InvalidArgumentError("waypoint speed must be > 0")
        if not 0.0 <= self.heading_deg < 360.0:
            raise InvalidArgumentError(f"heading_deg must be in [0, 360), got {self.heading_deg}")


@dataclass(frozen=True)
class FlightPlan:
    origin: GeoOrigin
    waypoints: tuple[Waypoint, ...]

    def __post_init__(self) -> None:
        if not self.waypoints:
            raise InvalidArgumentError("flight plan needs at least one waypoint")


def from_trajectory(
    trajectory: Trajectory,
    origin: GeoOrigin,
    waypoint_interval_s: float = 1.0,
    speed_mps: float = 5.0,
) -> FlightPlan:
    """Downsample a trajectory into a waypoint plan.

    Waypoints land on the sample grid every waypoint_interval_s; the first
    and last samples are always kept exactly.
    """
    if waypoint_interval_s <= 0:
        raise InvalidArgumentError("waypoint_interval_s must be > 0")
    samples = trajectory.samples
    stride = max(1, round(waypoint_interval_s / trajectory.dt_s))
    indices = list(range(0, len(samples), stride))
    if indices[-1] != len(samples) - 1:
        indices.append(len(samples) - 1)
    waypoints = tuple(
        Waypoint(
            position=samples[i].pose.position,
            speed_mps=speed_mps,
            heading_deg=samples[i].pose.yaw_deg,
            gimbal_pitch_deg=samples[i].pose.gimbal_pitch_deg,
        )
        for i in indices
    )
    return FlightPlan(origin=origin, waypoints=waypoints)


def _require_finite_plan(plan: FlightPlan) -> None:
    for i, wp in enumerate(plan.waypoints):
        values = (
            wp.position.east,
            wp.position.north,
            wp.position.up,
            wp.speed_mps,
            wp.heading_deg,
            wp.gimbal_pitch_deg,
        )
        if not all(math.isfinite(v) for v in values):
            raise ExportError(f"waypoint {i} contains a non-finite value")


def export_qgc_plan(plan: FlightPlan) -> bytes:
    """Serialize to a QGroundControl plan document.

    One NAV_WAYPOINT item per waypoint (relative altitude, heading in
    param 4), preceded by DO_CHANGE_SPEED / DO_MOUNT_CONTROL items whenever
    speed or gimbal pitch change, and followed by a DO_DIGICAM_CONTROL item
    for capture waypoints.
    """
    _require_finite_plan(plan)
    items: list[dict[str, Any]] = []
    prev_speed: float | None = None
    prev_gimbal: float | None = None

    def add_item(command: int, frame: int, params: list[Any], altitude: float | None = None) -> None:
        item: dict[str, Any] = {
            "AMSLAltAboveTerrain": None,
            "Altitude": altitude if altitude is not None else 0,
            "AltitudeMode": 1,
            "autoContinue": True,
            "command": command,
            "doJumpId": len(items) + 1,
            "frame": frame,
            "params": params,
            "type": "SimpleItem",
        }
        items.append(item)

    for i, wp in enumerate(plan.waypoints):
        try:
            lat, lon, _ = enu_to_geodetic(plan.origin, wp.position)
        except UnsupportedLatitudeError as exc:
            raise ExportError(f"waypoint {i}: {exc}") from exc
        if wp.speed_mps != prev_speed:
            add_item(MAV_CMD_DO_CHANGE_SPEED, _FRAME_MISSION, [1, wp.speed_mps, -1, 0, 0, 0, 0])
            prev_speed = wp.speed_mps
        if wp.gimbal_pitch_deg != prev_gimbal:
            # mount control pitch uses negative-down; mode 2 = MAVLINK_TARGETING
            add_item(
                MAV_CMD_DO_MOUNT_CONTROL,
                _FRAME_MISSION,
                [-wp.gimbal_pitch_deg, 0, 0, 0, 0, 0, 2],
            )
            prev_gimbal = wp.gimbal_pitch_deg
        alt = round(wp.position.up, _ALT_DECIMALS)
        add_item(
            MAV_CMD_NAV_WAYPOINT,
            _FRAME_RELATIVE_ALT,
            [0, 0, 0, wp.heading_deg, round(lat, _COORD_DECIMALS), round(lon, _COORD_DECIMALS), alt],
            altitude=alt,
        )
        if wp.capture:
            add_item(MAV_CMD_DO_DIGICAM_CONTROL, _FRAME_MISSION, [0, 0, 0, 0, 1, 0, 0])

    document = {
        "fileType": "Plan",
        "geoFence": {"circles": [], "polygons": [], "version": 2},
        "groundStation": "skyshot",
        "mission": {
            "cruiseSpeed": plan.waypoints[0].speed_mps,
            "firmwareType": 12,
            "hoverSpeed": 5,
            "items": items,
            "plannedHomePosition": [
                round(plan.origin.latitude, _COORD_DECIMALS),
                round(plan.origin.longitude, _COORD_DECIMALS),
                round(plan.origin.altitude, _ALT_DECIMALS),
            ],
            "vehicleType": 2,
            "version": 2,
        },
        "rallyPoints": {"points": [], "version": 2},
        "version": 1,
    }
    try:
        text = json.dumps(document, sort_keys=True, indent=2, allow_nan=False)
    except ValueError as exc:
        raise ExportError(f"plan contains non-serializable values: {exc}") from exc
    return text.encode("utf-8")


def import_qgc_plan(data: bytes) -> FlightPlan:
    """Parse a plan document of the subset emitted by export_qgc_plan."""
    try:
        document = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise PlanParseError(f"not a valid plan document: {exc}") from exc
    if not isinstance(document, dict) or document.get("fileType") != "Plan":
        raise PlanParseError("unknown fileType; expected a QGroundControl 'Plan' document")
    mission = document.get("mission")
    if not isinstance(mission, dict) or not isinstance(mission.get("items"), list):
        raise PlanParseError("document has no mission items")
    home = mission.get("plannedHomePosition")
    if not (isinstance(home, list) and len(home) == 3):
        raise PlanParseError("missing plannedHomePosition")
    origin = GeoOrigin(latitude=home[0], longitude=home[1], altitude=home[2])

    waypoints: list[Waypoint] = []
    speed = 5.0
    gimbal = 0.0
    for index, item in enumerate(mission["items"]):
        if not isinstance(item, dict) or "command" not in item or "params" not in item:
            raise PlanParseError(f"item {index} is not a mission item")
        command = item["command"]
        params = item["params"]
        if command == MAV_CMD_DO_CHANGE_SPEED:
            speed = float(params[1])
        elif command == MAV_CMD_DO_MOUNT_CONTROL:
            gimbal = -float(params[0])
        elif command == MAV_CMD_DO_DIGICAM_CONTROL:
            if not waypoints:
                raise PlanParseError(f"item {index}: capture trigger before any waypoint")
            last = waypoints[-1]
            waypoints[-1] = Waypoint(
                position=last.position,
                speed_mps=last.speed_mps,
                heading_deg=last.heading_deg,
                gimbal_pitch_deg=last.gimbal_pitch_deg,
                capture=True,
            )
        elif command == MAV_CMD_NAV_WAYPOINT:
            heading = float(params[3])
            lat = float(params[4])
            lon = float(params[5])
            alt = float(params[6])
            position = geodetic_to_enu(origin, lat, lon, origin.altitude)
            waypoints.append(
                Waypoint(
                    position=EnuPoint(position.east, position.north, alt),
                    speed_mps=speed,
                    heading_deg=heading,
                    gimbal_pitch_deg=gimbal,
                )
            )
        else:
            raise PlanParseError(f"item {index}: unsupported command id {command}")
    if not waypoints:
        raise PlanParseError("document contains no waypoints")
    return FlightPlan(origin=origin, waypoints=tuple(waypoints))


def export_litchi_csv(plan: FlightPlan) -> str:
    """Litchi-style waypoint CSV; gimbal pitch uses the negative-down sign."""
    _require_finite_plan(plan)
    buf = io.StringIO()
    buf.write(
        "latitude,longitude,altitude(m),heading(deg),curvesize(m),"
        "rotationdir,gimbalmode,gimbalpitchangle,actiontype1\r\n"
    )
    for i, wp in enumerate(plan.waypoints):
        try:
            lat, lon, _ = enu_to_geodetic(plan.origin, wp.position)
        except UnsupportedLatitudeError as exc:
            raise ExportError(f"waypoint {i}: {exc}") from exc
        action = 1 if wp.capture else -1
        buf.write(
            f"{lat:.7f},{lon:.7f},{wp.position.up:.3f},{wp.heading_deg:.2f},"
            f"0,0,2,{-wp.gimbal_pitch_deg:.2f},{action}\r\n"
        )
    return buf.getvalue()


def plan_to_dict(plan: FlightPlan) -> dict[str, Any]:
    return {
        "origin": {
            "latitude": plan.origin.latitude,
            "longitude": plan.origin.longitude,
            "altitude": plan.origin.altitude,
        },
        "waypoints": [
            {
                "east": wp.position.east,
                "north": wp.position.north,
                "up": wp.position.up,
                "speed_mps": wp.speed_mps,
                "heading_deg": wp.heading_deg,
                "gimbal_pitch_deg": wp.gimbal_pitch_deg,
                "capture": wp.capture,
            }
            for wp in plan.waypoints
        ],
    }


def plan_from_dict(data: dict[str, Any]) -> FlightPlan:
    try:
        origin = GeoOrigin(**data["origin"])
        waypoints = tuple(
            Waypoint(
                position=EnuPoint(east=wp["east"], north=wp["north"], up=wp["up"]),
                speed_mps=wp["speed_mps"],
                heading_deg=wp["heading_deg"],
                gimbal_pitch_deg=wp["gimbal_pitch_deg"],
                capture=bool(wp["capture"]),
            )
            for wp in data["waypoints"]
        )
    except (KeyError, TypeError) as exc:
        raise PlanParseError(f"malformed neutral plan document: {exc}") from exc
    return FlightPlan(origin=origin, waypoints=waypoints)


def save_plan_json(plan: FlightPlan) -> bytes:
    _require_finite_plan(plan)
    return json.dumps(plan_to_dict(plan), sort_keys=True, indent=2, allow_nan=False).encode("utf-8")


def load_plan_json(data: bytes) -> FlightPlan:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise PlanParseError(f"not a valid neutral plan document: {exc}") from exc
    return plan_from_dict(doc)
