"""Deterministic fixed-step simulation of drones, actors, wind and terrain."""

from .actors import Actor, follow_path, point_along, polyline_length
from .drone import (
    ControlInput,
    Drone,
    DroneLimits,
    DroneMode,
    apply_manual_control,
    sample_trajectory,
)
from .inputlog import load_input_log, save_input_log
from .recording import Recording, record_and_export
from .terrain import Terrain
from .wind import Wind, wind_velocity
from .world import (
    DEFAULT_ACTOR_THRESHOLD_M,
    DEFAULT_TERRAIN_THRESHOLD_M,
    DEFAULT_TICK_S,
    SimEvent,
    World,
    landmark_coverage,
)

__all__ = [
    "Actor",
    "ControlInput",
    "Drone",
    "DroneLimits",
    "DroneMode",
    "Recording",
    "SimEvent",
    "Terrain",
    "Wind",
    "World",
    "DEFAULT_ACTOR_THRESHOLD_M",
    "DEFAULT_TERRAIN_THRESHOLD_M",
    "DEFAULT_TICK_S",
    "apply_manual_control",
    "follow_path",
    "landmark_coverage",
    "load_input_log",
    "point_along",
    "save_input_log",
    "polyline_length",
    "record_and_export",
    "sample_trajectory",
    "wind_velocity",
]
