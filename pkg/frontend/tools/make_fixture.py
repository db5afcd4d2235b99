"""Generate the scripted-freeplay fixture consumed by the frontend tests.

Runs the simulator over a 10 s keyboard script and freezes the per-tick
controls, the resulting drone states and the 1 s-interval recorded-path
waypoints, so the UI tests can verify the keyboard mapping and rendering
against simulator truth without spawning a server.

Usage: python frontend/tools/make_fixture.py
"""

import json
import pathlib

from skyshot.geometry import EnuPoint, GeoOrigin
from skyshot.sim import ControlInput, Drone, Recording, World, record_and_export

# Must match KEY_AXES in frontend/src/freeplay.ts.
KEY_AXES = {
    "w": ("forward", 1.0),
    "s": ("forward", -1.0),
    "d": ("right", 1.0),
    "a": ("right", -1.0),
    "ArrowUp": ("climb", 1.0),
    "ArrowDown": ("climb", -1.0),
    "ArrowRight": ("yaw_rate", 1.0),
    "ArrowLeft": ("yaw_rate", -1.0),
    "e": ("gimbal_rate", 1.0),
    "q": ("gimbal_rate", -1.0),
}


def keys_for_tick(tick: int) -> list[str]:
    if tick < 60:
        return ["w"]
    if tick < 100:
        return ["w", "d", "ArrowRight"]
    if tick < 140:
        return ["s", "ArrowUp"]
    if tick < 180:
        return ["a", "ArrowLeft", "e"]
    return []


def control_from_keys(keys: list[str]) -> ControlInput:
    axes = {"forward": 0.0, "right": 0.0, "climb": 0.0, "yaw_rate": 0.0, "gimbal_rate": 0.0}
    for key in keys:
        axis, value = KEY_AXES[key]
        axes[axis] += value
    axes = {name: max(-1.0, min(1.0, value)) for name, value in axes.items()}
    return ControlInput(**axes)


def main() -> None:
    ticks = 200
    drone = Drone(drone_id=1, position=EnuPoint(0.0, 0.0, 15.0))
    world = World(drones=[drone])
    world.start_recording(1)

    key_script = [keys_for_tick(i) for i in range(ticks)]
    controls = [control_from_keys(keys) for keys in key_script]

    def state() -> dict:
        return {
            "tick": world.tick,
            "east": drone.position.east,
            "north": drone.position.north,
            "up": drone.position.up,
            "yaw_deg": drone.yaw_deg,
            "gimbal_pitch_deg": drone.gimbal_pitch_deg,
        }

    states = [state()]
    for control in controls:
        world.set_control(1, control)
        world.step()
        states.append(state())

    recording = world.stop_recording(1)
    plan = record_and_export(recording, GeoOrigin(0.0, 0.0, 0.0), interval_s=1.0)
    waypoints = [
        {
            "east": wp.position.east,
            "north": wp.position.north,
            "up": wp.position.up,
            "heading_deg": wp.heading_deg,
            "gimbal_pitch_deg": wp.gimbal_pitch_deg,
        }
        for wp in plan.waypoints
    ]

    fixture = {
        "dt_s": world.tick_s,
        "ticks": ticks,
        "key_script": key_script,
        "controls": [
            {
                "forward": c.forward,
                "right": c.right,
                "climb": c.climb,
                "yaw_rate": c.yaw_rate,
                "gimbal_rate": c.gimbal_rate,
            }
            for c in controls
        ],
        "states": states,
        "waypoints": waypoints,
    }
    out = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "freeplay_scripted.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(fixture, indent=1, sort_keys=True) + "\n")
    print(f"wrote {out} ({ticks} ticks, {len(waypoints)} waypoints)")


if __name__ == "__main__":
    main()
