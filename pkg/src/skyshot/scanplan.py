"""Layered grid scan missions for photogrammetry capture.

A scan mission covers a rectangular area with boustrophedon (serpentine)
grid passes in two orthogonal directions, repeated at three heights: the
base height, base + average building height, and base + maximum building
height. Leg spacing and capture spacing are derived from the camera ground
footprint and the requested overlap ratios; quantization always tightens
spacing so the requested overlap is met or exceeded.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, replace
from typing import Iterator, Literal

from .errors import InsufficientDataError, InvalidArgumentError
from .geometry import (
    DEFAULT_CAMERA,
    DEFAULT_REFERENCE,
    Axis,
    CameraIntrinsics,
    EnuPoint,
    GeoOrigin,
    Pose,
    ReferenceSetup,
    enu_to_geodetic,
    ground_footprint,
    normalize_yaw_deg,
    scale_working_distance,
)

GridDirection = Literal["x", "y"]

# Minimum in-track overlap below which reconstruction quality degrades.
LANDSCAPE_OVERLAP_THRESHOLD = 0.70
DETAIL_OVERLAP_THRESHOLD = 0.80

OverlapMode = Literal["landscape", "detail"]


@dataclass(frozen=True)
class ScanArea:
    """Rectangle to scan: origin corner plus side lengths, optionally rotated.

    The grid frame's x axis points east rotated by rotation_deg counter-
    clockwise about up; origin_corner is the (0, 0) corner at ground level.
    """

    origin_corner: EnuPoint
    length_x_m: float
    length_y_m: float
    rotation_deg: float = 0.0

    def __post_init__(self) -> None:
        if self.length_x_m <= 0 or self.length_y_m <= 0:
            raise InvalidArgumentError("scan area side lengths must be > 0")
        if self.origin_corner.up != 0.0:
            raise InvalidArgumentError("origin_corner must lie at up = 0")

    def to_world(self, gx: float, gy: float, up: float) -> EnuPoint:
        """Map grid-frame coordinates to the ENU frame."""
        rot = math.radians(self.rotation_deg)
        cos_r = math.cos(rot)
        sin_r = math.sin(rot)
        return EnuPoint(
            east=self.origin_corner.east + gx * cos_r - gy * sin_r,
            north=self.origin_corner.north + gx * sin_r + gy * cos_r,
            up=up,
        )

    def contains(self, p: EnuPoint, tol: float = 1e-9) -> bool:
        """Inclusive containment of the horizontal position in the rectangle."""
        rot = math.radians(self.rotation_deg)
        cos_r = math.cos(rot)
        sin_r = math.sin(rot)
        de = p.east - self.origin_corner.east
        dn = p.north - self.origin_corner.north
        gx = de * cos_r + dn * sin_r
        gy = -de * sin_r + dn * cos_r
        return -tol <= gx <= self.length_x_m + tol and -tol <= gy <= self.length_y_m + tol


@dataclass(frozen=True)
class ScanConfig:
    """Mission parameters; defaults follow the recommended capture settings."""

    camera: CameraIntrinsics = DEFAULT_CAMERA
    base_height_m: float = 20.0
    avg_building_height_m: float = 0.0
    max_building_height_m: float = 0.0
    in_track_overlap: float = 0.80
    cross_track_overlap: float = 0.70
    # Gimbal pitch per layer, highest layer first (assigned 85/60/35 top-down).
    gimbal_pitch_per_layer_deg: tuple[float, float, float] = (85.0, 60.0, 35.0)
    cruise_speed_mps: float = 5.0
    both_directions: bool = True

    def __post_init__(self) -> None:
        if self.base_height_m <= 0:
            raise InvalidArgumentError("base_height_m must be > 0")
        if not 0.0 <= self.avg_building_height_m <= self.max_building_height_m:
            raise InvalidArgumentError(
                "need 0 <= avg_building_height_m <= max_building_height_m, got "
                f"{self.avg_building_height_m} / {self.max_building_height_m}"
            )
        for name in ("in_track_overlap", "cross_track_overlap"):
            value = getattr(self, name)
            if not 0.0 <= value <= 0.95:
                raise InvalidArgumentError(f"{name} must be in [0, 0.95], got {value}")
        if len(self.gimbal_pitch_per_layer_deg) != 3:
            raise InvalidArgumentError("gimbal_pitch_per_layer_deg needs exactly 3 entries")
        for pitch in self.gimbal_pitch_per_layer_deg:
            if not -30.0 <= pitch <= 90.0:
                raise InvalidArgumentError(f"gimbal pitch {pitch} outside [-30, 90]")
        if self.cruise_speed_mps <= 0:
            raise InvalidArgumentError("cruise_speed_mps must be > 0")


@dataclass(frozen=True)
class CapturePoint:
    position: EnuPoint
    pose: Pose


@dataclass(frozen=True)
class ScanLeg:
    """One straight flight leg with its ordered capture points."""

    start: EnuPoint
    end: EnuPoint
    heading_deg: float
    captures: tuple[CapturePoint, ...] = ()


@dataclass(frozen=True)
class GridPass:
    """All parallel legs of one sweep direction at one height."""

    direction: GridDirection
    cross_spacing_m: float  # actual (quantized) spacing between legs
    in_spacing_m: float  # actual (quantized) spacing between captures
    legs: tuple[ScanLeg, ...]


@dataclass(frozen=True)
class ScanLayer:
    """One height level of the mission.

    cross_track_spacing_m / in_track_spacing_m are the overlap-derived
    maxima (symbolic W1 and in-track spacing); each pass stores the actual
    quantized values, which never exceed these.
    """

    height_m: float
    gimbal_pitch_deg: float
    cross_track_spacing_m: float
    in_track_spacing_m: float
    passes: tuple[GridPass, ...]

    @property
    def legs(self) -> tuple[ScanLeg, ...]:
        return tuple(leg for p in self.passes for leg in p.legs)

    def capture_count(self) -> int:
        return sum(len(leg.captures) for leg in self.legs)


@dataclass(frozen=True)
class ScanPlan:
    layers: tuple[ScanLayer, ...]
    total_image_count: int

    def __post_init__(self) -> None:
        heights = [layer.height_m for layer in self.layers]
        if heights != sorted(heights):
            raise InvalidArgumentError("layers must be ordered by increasing height")
        if self.total_image_count != sum(layer.capture_count() for layer in self.layers):
            raise InvalidArgumentError("total_image_count does not match the capture points")

    def iter_captures(self) -> Iterator[CapturePoint]:
        for layer in self.layers:
            for leg in layer.legs:
                yield from leg.captures


def layer_heights(config: ScanConfig) -> list[float]:
    """The three scan heights: base, base+avg building, base+max building."""
    h = config.base_height_m
    return [h, h + config.avg_building_height_m, h + config.max_building_height_m]


def recommended_base_height(
    camera: CameraIntrinsics,
    ref: ReferenceSetup = DEFAULT_REFERENCE,
    axis: Axis = "cross_track",
) -> float:
    """Base height for an arbitrary camera, rescaled from the reference setup."""
    return scale_working_distance(ref, camera, axis)


def spacing_from_overlap(footprint_extent_m: float, overlap: float) -> float:
    """Centre-to-centre spacing that yields the requested footprint overlap."""
    if footprint_extent_m <= 0:
        raise InvalidArgumentError("footprint_extent_m must be > 0")
    if not 0.0 <= overlap < 1.0:
        raise InvalidArgumentError(f"overlap must be in [0, 1), got {overlap}")
    return footprint_extent_m * (1.0 - overlap)


def _line_count(side_m: float, spacing_m: float) -> int:
    return math.ceil(side_m / spacing_m) + 1


def _build_pass(
    area: ScanArea,
    cross_spacing_m: float,
    in_spacing_m: float | None,
    direction: GridDirection,
    height_m: float,
    gimbal_pitch_deg: float,
) -> GridPass:
    """Serpentine legs for one direction; captures placed when in_spacing given.

    Quantization tightens: n legs span the cross side at side/(n-1) <= the
    requested spacing, first and last legs on the boundary. Odd legs are
    flown in reverse so consecutive legs alternate direction.
    """
    if cross_spacing_m <= 0:
        raise InvalidArgumentError("cross spacing must be > 0")
    along = area.length_x_m if direction == "x" else area.length_y_m
    across = area.length_y_m if direction == "x" else area.length_x_m

    n_legs = _line_count(across, cross_spacing_m)
    actual_cross = across / (n_legs - 1)

    if in_spacing_m is not None:
        n_pts = _line_count(along, in_spacing_m)
        actual_in = along / (n_pts - 1)
    else:
        n_pts = 0
        actual_in = 0.0

    def grid_point(s: float, offset: float, up: float) -> EnuPoint:
        if direction == "x":
            return area.to_world(s, offset, up)
        return area.to_world(offset, s, up)

    legs = []
    for j in range(n_legs):
        offset = j * actual_cross
        forward = j % 2 == 0
        s0, s1 = (0.0, along) if forward else (along, 0.0)
        start = grid_point(s0, offset, height_m)
        end = grid_point(s1, offset, height_m)
        heading = _heading_of(start, end)
        captures = []
        for i in range(n_pts):
            s = i * actual_in if forward else along - i * actual_in
            position = grid_point(s, offset, height_m)
            pose = Pose(position=position, yaw_deg=heading, gimbal_pitch_deg=gimbal_pitch_deg)
            captures.append(CapturePoint(position=position, pose=pose))
        legs.append(ScanLeg(start=start, end=end, heading_deg=heading, captures=tuple(captures)))

    return GridPass(
        direction=direction,
        cross_spacing_m=actual_cross,
        in_spacing_m=actual_in,
        legs=tuple(legs),
    )


def _heading_of(start: EnuPoint, end: EnuPoint) -> float:
    return normalize_yaw_deg(math.degrees(math.atan2(end.east - start.east, end.north - start.north)))


def generate_grid(area: ScanArea, cross_spacing_m: float, direction: GridDirection = "x") -> list[ScanLeg]:
    """Serpentine legs (no capture points) covering the area at ground level."""
    return list(_build_pass(area, cross_spacing_m, None, direction, 0.0, 0.0).legs)


def plan_scan(area: ScanArea, config: ScanConfig) -> ScanPlan:
    """Build the full three-layer mission for the area.

    Per layer: footprint at that height (nadir-equivalent working distance),
    spacing from the overlap ratios, then one grid pass per direction. The
    gimbal pitch tuple is given highest layer first, so it is reversed for
    the ascending layer order.
    """
    heights = layer_heights(config)
    pitches = list(reversed(config.gimbal_pitch_per_layer_deg))
    directions: tuple[GridDirection, ...] = ("x", "y") if config.both_directions else ("x",)

    layers = []
    for height, pitch in zip(heights, pitches):
        footprint = ground_footprint(config.camera, height)
        in_spacing = spacing_from_overlap(footprint.in_track_m, config.in_track_overlap)
        cross_spacing = spacing_from_overlap(footprint.cross_track_m, config.cross_track_overlap)
        passes = tuple(
            _build_pass(area, cross_spacing, in_spacing, direction, height, pitch)
            for direction in directions
        )
        layers.append(
            ScanLayer(
                height_m=height,
                gimbal_pitch_deg=pitch,
                cross_track_spacing_m=cross_spacing,
                in_track_spacing_m=in_spacing,
                passes=passes,
            )
        )

    total = sum(layer.capture_count() for layer in layers)
    return ScanPlan(layers=tuple(layers), total_image_count=total)


def estimate_image_count(plan: ScanPlan) -> int:
    """Exact number of capture points across all layers and directions."""
    return sum(layer.capture_count() for layer in plan.layers)


@dataclass(frozen=True)
class LayerOverlapResult:
    height_m: float
    min_in_track: float
    min_cross_track: float


@dataclass(frozen=True)
class OverlapReport:
    mode: OverlapMode
    threshold: float
    layers: tuple[LayerOverlapResult, ...]
    warnings: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.warnings


def verify_overlap(plan: ScanPlan, camera: CameraIntrinsics, mode: OverlapMode = "landscape") -> OverlapReport:
    """Measure achieved overlap ratios from the plan geometry.

    Flat-terrain assumption with nadir-equivalent footprints at each layer
    height. For each adjacent capture pair the achieved ratio is the 1-D
    footprint intersection over the footprint extent along that axis;
    adjacent parallel legs give the cross-track ratio the same way. Layers
    whose minimum in-track ratio falls below the mode's threshold produce
    a warning.
    """
    if mode == "landscape":
        threshold = LANDSCAPE_OVERLAP_THRESHOLD
    elif mode == "detail":
        threshold = DETAIL_OVERLAP_THRESHOLD
    else:
        raise InvalidArgumentError(f"unknown overlap mode {mode!r}")

    results = []
    warnings: list[str] = []
    for layer in plan.layers:
        footprint = ground_footprint(camera, layer.height_m)
        min_in = 1.0
        min_cross = 1.0
        for grid_pass in layer.passes:
            for leg in grid_pass.legs:
                if len(leg.captures) < 2:
                    raise InsufficientDataError(
                        f"leg at height {layer.height_m} m has fewer than 2 capture points"
                    )
                for a, b in zip(leg.captures, leg.captures[1:]):
                    d = a.position.distance_to(b.position)
                    ratio = max(0.0, footprint.in_track_m - d) / footprint.in_track_m
                    min_in = min(min_in, ratio)
            for leg_a, leg_b in zip(grid_pass.legs, grid_pass.legs[1:]):
                d = _leg_separation(leg_a, leg_b)
                ratio = max(0.0, footprint.cross_track_m - d) / footprint.cross_track_m
                min_cross = min(min_cross, ratio)
        results.append(
            LayerOverlapResult(height_m=layer.height_m, min_in_track=min_in, min_cross_track=min_cross)
        )
        # Thresholds apply to the in-track ratio (the quantity the quality
        # study varied); cross-track minima are reported for information.
        if min_in < threshold:
            warnings.append(
                f"layer {layer.height_m:g} m: in-track overlap {min_in:.3f} "
                f"below {mode} threshold {threshold:.2f}"
            )

    return OverlapReport(mode=mode, threshold=threshold, layers=tuple(results), warnings=tuple(warnings))


def _leg_separation(leg_a: ScanLeg, leg_b: ScanLeg) -> float:
    """Perpendicular distance between two parallel legs."""
    de = leg_a.end.east - leg_a.start.east
    dn = leg_a.end.north - leg_a.start.north
    length = math.hypot(de, dn)
    if length == 0.0:
        raise InsufficientDataError("zero-length leg")
    # unit normal to the leg direction, horizontal plane
    nx = -dn / length
    ny = de / length
    return abs((leg_b.start.east - leg_a.start.east) * nx + (leg_b.start.north - leg_a.start.north) * ny)


def with_rescaled_height(config: ScanConfig, ref: ReferenceSetup = DEFAULT_REFERENCE) -> ScanConfig:
    """Config with base height rescaled for its camera relative to the reference."""
    return replace(config, base_height_m=recommended_base_height(config.camera, ref))


def write_capture_manifest(plan: ScanPlan, origin: GeoOrigin) -> str:
    """Capture manifest CSV: one row per capture point."""
    buf = io.StringIO()
    buf.write("index,latitude,longitude,altitude_m,heading_deg,gimbal_pitch_deg\r\n")
    for index, capture in enumerate(plan.iter_captures()):
        lat, lon, alt = enu_to_geodetic(origin, capture.position)
        buf.write(
            f"{index},{lat:.7f},{lon:.7f},{alt:.3f},"
            f"{capture.pose.yaw_deg:.2f},{capture.pose.gimbal_pitch_deg:.2f}\r\n"
        )
    return buf.getvalue()
