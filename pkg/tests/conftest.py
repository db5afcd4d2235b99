import math
import random

import pytest

from skyshot.geometry import CameraIntrinsics, EnuPoint, GeoOrigin, Pose


@pytest.fixture
def rng():
    return random.Random(20260810)


def random_camera(rng: random.Random) -> CameraIntrinsics:
    height = rng.uniform(4.0, 40.0)
    width = height * rng.uniform(1.0, 2.2)
    focal = rng.uniform(10.0, 120.0)
    return CameraIntrinsics(sensor_width_mm=width, sensor_height_mm=height, focal_length_mm=focal)


def random_pose(rng: random.Random) -> Pose:
    return Pose(
        position=EnuPoint(rng.uniform(-500, 500), rng.uniform(-500, 500), rng.uniform(0, 200)),
        yaw_deg=rng.uniform(0, 359.999),
        gimbal_pitch_deg=rng.uniform(-30, 90),
    )


def random_origin(rng: random.Random) -> GeoOrigin:
    return GeoOrigin(
        latitude=rng.uniform(-60, 60),
        longitude=rng.uniform(-179, 179),
        altitude=rng.uniform(-50, 500),
    )


def frustum_oracle(pose: Pose, camera: CameraIntrinsics, target: EnuPoint) -> bool:
    """Independent frustum check: rotate the target into the camera frame
    explicitly and compare per-axis angles against atan(ss / (2 fl))."""
    yaw = math.radians(pose.yaw_deg)
    pitch = math.radians(pose.gimbal_pitch_deg)
    # rotation matrices about up (yaw, clockwise from north) then camera right (pitch down)
    v = (
        target.east - pose.position.east,
        target.north - pose.position.north,
        target.up - pose.position.up,
    )
    # world -> heading frame: x' = right, y' = forward-horizontal, z' = up
    x1 = v[0] * math.cos(yaw) - v[1] * math.sin(yaw)
    y1 = v[0] * math.sin(yaw) + v[1] * math.cos(yaw)
    z1 = v[2]
    # pitch rotates the forward axis down about the right axis
    forward = y1 * math.cos(pitch) - z1 * math.sin(pitch)
    down = -(z1 * math.cos(pitch) + y1 * math.sin(pitch))
    right = x1
    if forward <= 0:
        return False
    half_w = math.atan(camera.sensor_width_mm / (2.0 * camera.focal_length_mm))
    half_h = math.atan(camera.sensor_height_mm / (2.0 * camera.focal_length_mm))
    ang_w = math.atan2(abs(right), forward)
    ang_h = math.atan2(abs(down), forward)
    return ang_w <= half_w and ang_h <= half_h
