"""Drone cinematography planning and rehearsal toolkit.

Photogrammetry scan mission generation, parametric cinematic shot
trajectories, deterministic kinematic flight simulation, landmark coverage
checks and flight-plan export, plus an HTTP/WebSocket service and a CLI.
"""

from .geometry import (
    DEFAULT_CAMERA,
    DEFAULT_REFERENCE,
    CameraIntrinsics,
    EnuPoint,
    GeoOrigin,
    GroundFootprint,
    Pose,
    ReferenceSetup,
    enu_to_geodetic,
    geodetic_to_enu,
    ground_footprint,
    point_in_frustum,
    scale_working_distance,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"
