"""Coordinate frames, camera intrinsics, footprint math and frustum tests.

Conventions used throughout the toolkit:

* Local frame is ENU (east, north, up) in metres, anchored at a geodetic
  origin. Geodetic conversion uses a spherical equirectangular model with
  R = 6378137 m, adequate for km-scale sites; this is a stated approximation,
  not full WGS84.
* Yaw is in degrees clockwise from north (the convention of mission file
  formats); internal trigonometry converts explicitly.
* Gimbal pitch is in degrees below the horizontal: 0 = horizon, 90 = nadir.
  Mechanical range is -30..90.
* The camera mounts landscape with the long sensor side perpendicular to the
  flight direction, so the in-track footprint axis maps to sensor height and
  the cross-track axis to sensor width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from . import kernels
from .errors import InvalidArgumentError, UnsupportedLatitudeError

EARTH_RADIUS_M = 6378137.0

Axis = Literal["in_track", "cross_track"]


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise InvalidArgumentError(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class CameraIntrinsics:
    """Physical sensor dimensions and focal length, all in millimetres."""

    sensor_width_mm: float
    sensor_height_mm: float
    focal_length_mm: float

    def __post_init__(self) -> None:
        for name in ("sensor_width_mm", "sensor_height_mm", "focal_length_mm"):
            value = getattr(self, name)
            _require_finite(name, value)
            if value <= 0:
                raise InvalidArgumentError(f"{name} must be > 0, got {value}")
        if self.sensor_width_mm < self.sensor_height_mm:
            raise InvalidArgumentError(
                "landscape orientation required: sensor_width_mm "
                f"({self.sensor_width_mm}) < sensor_height_mm ({self.sensor_height_mm})"
            )

    def half_fov_rad(self, axis: Axis) -> float:
        """Angular half field of view for one image axis."""
        ss = self.sensor_width_mm if axis == "cross_track" else self.sensor_height_mm
        return math.atan(ss / (2.0 * self.focal_length_mm))


DEFAULT_CAMERA = CameraIntrinsics(sensor_width_mm=23.66, sensor_height_mm=13.3, focal_length_mm=35.0)


@dataclass(frozen=True)
class ReferenceSetup:
    """Reference camera and working distance that all rescaling is relative to."""

    camera: CameraIntrinsics = DEFAULT_CAMERA
    working_distance_m: float = 20.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.working_distance_m) and self.working_distance_m > 0):
            raise InvalidArgumentError(f"working_distance_m must be > 0, got {self.working_distance_m}")


DEFAULT_REFERENCE = ReferenceSetup()


@dataclass(frozen=True)
class EnuPoint:
    """A point in the local east/north/up frame, metres."""

    east: float
    north: float
    up: float

    def __post_init__(self) -> None:
        for name in ("east", "north", "up"):
            _require_finite(name, getattr(self, name))

    def translate(self, de: float, dn: float, du: float) -> "EnuPoint":
        return EnuPoint(self.east + de, self.north + dn, self.up + du)

    def distance_to(self, other: "EnuPoint") -> float:
        return math.sqrt(
            (self.east - other.east) ** 2
            + (self.north - other.north) ** 2
            + (self.up - other.up) ** 2
        )

    def horizontal_distance_to(self, other: "EnuPoint") -> float:
        return math.hypot(self.east - other.east, self.north - other.north)


@dataclass(frozen=True)
class GeoOrigin:
    """Geodetic anchor of the ENU frame."""

    latitude: float
    longitude: float
    altitude: float = 0.0

    def __post_init__(self) -> None:
        for name in ("latitude", "longitude", "altitude"):
            _require_finite(name, getattr(self, name))
        if not abs(self.latitude) < 90.0:
            raise InvalidArgumentError(f"|latitude| must be < 90, got {self.latitude}")
        if not abs(self.longitude) <= 180.0:
            raise InvalidArgumentError(f"|longitude| must be <= 180, got {self.longitude}")


@dataclass(frozen=True)
class Pose:
    """Drone/camera pose: position plus yaw and gimbal pitch."""

    position: EnuPoint
    yaw_deg: float
    gimbal_pitch_deg: float

    def __post_init__(self) -> None:
        _require_finite("yaw_deg", self.yaw_deg)
        _require_finite("gimbal_pitch_deg", self.gimbal_pitch_deg)
        if not 0.0 <= self.yaw_deg < 360.0:
            raise InvalidArgumentError(f"yaw_deg must be in [0, 360), got {self.yaw_deg}")
        if not -30.0 <= self.gimbal_pitch_deg <= 90.0:
            raise InvalidArgumentError(
                f"gimbal_pitch_deg must be in [-30, 90], got {self.gimbal_pitch_deg}"
            )


@dataclass(frozen=True)
class GroundFootprint:
    """Ground rectangle imaged by one exposure, metres per axis."""

    in_track_m: float
    cross_track_m: float

    def __post_init__(self) -> None:
        if self.in_track_m <= 0 or self.cross_track_m <= 0:
            raise InvalidArgumentError("footprint extents must be > 0")

    def extent(self, axis: Axis) -> float:
        return self.cross_track_m if axis == "cross_track" else self.in_track_m


def ground_footprint(camera: CameraIntrinsics, working_distance_m: float) -> GroundFootprint:
    """Linear ground coverage per axis at the given working distance.

    Coverage on each axis is sensor_size * distance / focal_length; the
    cross-track axis uses the wide sensor side (landscape mount).
    """
    if not (math.isfinite(working_distance_m) and working_distance_m > 0):
        raise InvalidArgumentError(f"working_distance_m must be > 0, got {working_distance_m}")
    return GroundFootprint(
        in_track_m=camera.sensor_height_mm * working_distance_m / camera.focal_length_mm,
        cross_track_m=camera.sensor_width_mm * working_distance_m / camera.focal_length_mm,
    )


def scale_working_distance(ref: ReferenceSetup, actual: CameraIntrinsics, axis: Axis = "cross_track") -> float:
    """Working distance for `actual` that reproduces the reference ground coverage.

    Returns (SS_ref / SS_act) * (FL_act / FL_ref) * WD_ref with the sensor
    dimension selected by `axis`.
    """
    if axis == "cross_track":
        ss_ref = ref.camera.sensor_width_mm
        ss_act = actual.sensor_width_mm
    else:
        ss_ref = ref.camera.sensor_height_mm
        ss_act = actual.sensor_height_mm
    return (ss_ref / ss_act) * (actual.focal_length_mm / ref.camera.focal_length_mm) * ref.working_distance_m


def enu_to_geodetic(origin: GeoOrigin, p: EnuPoint) -> tuple[float, float, float]:
    """Convert an ENU offset to (latitude, longitude, altitude).

    Equirectangular small-area model: dlat = north/R, dlon = east/(R cos lat0).
    """
    if abs(origin.latitude) >= 89.9:
        raise UnsupportedLatitudeError(
            f"origin latitude {origin.latitude} too close to a pole for the equirectangular model"
        )
    lat0 = math.radians(origin.latitude)
    lat = origin.latitude + math.degrees(p.north / EARTH_RADIUS_M)
    lon = origin.longitude + math.degrees(p.east / (EARTH_RADIUS_M * math.cos(lat0)))
    alt = origin.altitude + p.up
    return lat, lon, alt


def geodetic_to_enu(origin: GeoOrigin, latitude: float, longitude: float, altitude: float) -> EnuPoint:
    """Inverse of enu_to_geodetic on the same small-area model."""
    if abs(origin.latitude) >= 89.9:
        raise UnsupportedLatitudeError(
            f"origin latitude {origin.latitude} too close to a pole for the equirectangular model"
        )
    lat0 = math.radians(origin.latitude)
    north = math.radians(latitude - origin.latitude) * EARTH_RADIUS_M
    east = math.radians(longitude - origin.longitude) * (EARTH_RADIUS_M * math.cos(lat0))
    return EnuPoint(east=east, north=north, up=altitude - origin.altitude)


def point_in_frustum(pose: Pose, camera: CameraIntrinsics, target: EnuPoint) -> bool:
    """True when the target is in front of the camera and inside both half-FOVs."""
    p = pose.position
    if p.east == target.east and p.north == target.north and p.up == target.up:
        raise InvalidArgumentError("target coincides with the camera position")
    return kernels.point_in_frustum(
        p.east,
        p.north,
        p.up,
        pose.yaw_deg,
        pose.gimbal_pitch_deg,
        camera.sensor_width_mm,
        camera.sensor_height_mm,
        camera.focal_length_mm,
        target.east,
        target.north,
        target.up,
    )


def normalize_yaw_deg(yaw_deg: float) -> float:
    """Wrap an angle into [0, 360). Plain % can round up to exactly 360.0
    for tiny negative inputs, which the Pose invariant forbids."""
    yaw = yaw_deg % 360.0
    return 0.0 if yaw >= 360.0 else yaw


def bearing_deg(origin: EnuPoint, target: EnuPoint) -> float:
    """Compass bearing from origin to target, degrees clockwise from north."""
    return normalize_yaw_deg(math.degrees(math.atan2(target.east - origin.east, target.north - origin.north)))
