"""Batch command-line access to planning, shots, simulation and export.

Subcommands: plan-scan, shot, simulate, verify-overlap, export, serve.
Exit codes: 0 success, 1 validation/usage error, 2 I/O error. All outputs
are deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import SkyshotError
from .flightplan import (
    export_litchi_csv,
    export_qgc_plan,
    from_trajectory,
    import_qgc_plan,
    load_plan_json,
    save_plan_json,
)
from .geometry import CameraIntrinsics, EnuPoint, GeoOrigin
from .project import (
    build_world,
    load_project,
    scan_bundle_from_dict,
    scan_bundle_to_dict,
    trajectory_from_dict,
    trajectory_to_dict,
)
from .scanplan import ScanArea, ScanConfig, plan_scan, verify_overlap, write_capture_manifest
from .shots import ShotSpec, ShotType, TargetRef, generate_shot
from .sim import DroneMode, landmark_coverage, load_input_log
from .sim.drone import Drone


class CliError(Exception):
    """Usage-level error carrying the intended exit code."""

    def __init__(self, message: str, code: int = 1):
        super().__init__(message)
        self.code = code


class Parser(argparse.ArgumentParser):
    # argparse defaults to exit code 2 on bad flags; the contract is 1.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise CliError(f"{self.prog}: {message}\n{self.format_usage()}", code=1)


def _parse_enu(text: str, flag: str) -> EnuPoint:
    parts = text.split(",")
    if len(parts) != 3:
        raise CliError(f"{flag} expects 'east,north,up', got {text!r}")
    try:
        return EnuPoint(east=float(parts[0]), north=float(parts[1]), up=float(parts[2]))
    except ValueError as exc:
        raise CliError(f"{flag}: {exc}") from exc


def _add_camera_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--sensor-width-mm", type=float, default=23.66)
    parser.add_argument("--sensor-height-mm", type=float, default=13.3)
    parser.add_argument("--focal-length-mm", type=float, default=35.0)


def _camera_from_args(args: argparse.Namespace) -> CameraIntrinsics:
    return CameraIntrinsics(
        sensor_width_mm=args.sensor_width_mm,
        sensor_height_mm=args.sensor_height_mm,
        focal_length_mm=args.focal_length_mm,
    )


def _add_origin_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--origin-lat", type=float, default=0.0)
    parser.add_argument("--origin-lon", type=float, default=0.0)
    parser.add_argument("--origin-alt-m", type=float, default=0.0)


def _origin_from_args(args: argparse.Namespace) -> GeoOrigin:
    return GeoOrigin(latitude=args.origin_lat, longitude=args.origin_lon, altitude=args.origin_alt_m)


def _write_text(path: str, text: str) -> None:
    with open(path, "w", newline="") as f:
        f.write(text)


def _write_json(path: str, data: dict) -> None:
    _write_text(path, json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n")


def build_parser() -> Parser:
    parser = Parser(prog="skyshot", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("plan-scan", help="generate a layered grid scan mission", parents=[], add_help=True)
    p.add_argument("--length-x-m", type=float, default=50.0)
    p.add_argument("--length-y-m", type=float, default=50.0)
    p.add_argument("--rotation-deg", type=float, default=0.0)
    p.add_argument("--base-height-m", type=float, default=20.0)
    p.add_argument("--avg-building-height-m", type=float, default=0.0)
    p.add_argument("--max-building-height-m", type=float, default=0.0)
    p.add_argument("--in-track-overlap", type=float, default=0.80)
    p.add_argument("--cross-track-overlap", type=float, default=0.70)
    p.add_argument("--gimbal-pitches-deg", default="85,60,35", help="highest layer first, comma separated")
    p.add_argument("--cruise-speed-mps", type=float, default=5.0)
    p.add_argument("--single-direction", action="store_true", help="skip the second orthogonal pass")
    _add_camera_flags(p)
    _add_origin_flags(p)
    p.add_argument("--out", help="write the scan mission JSON here")
    p.add_argument("--manifest", help="write the capture manifest CSV here")

    p = sub.add_parser("shot", help="generate a cinematic shot trajectory")
    p.add_argument("--type", required=True, choices=[t.value.lower() for t in ShotType])
    p.add_argument("--target", default="0,0,0", help="target point 'east,north,up'")
    p.add_argument("--height-m", type=float, default=10.0)
    p.add_argument("--speed-mps", type=float, default=5.0)
    p.add_argument("--radius-m", type=float, default=30.0)
    p.add_argument("--arc-deg", type=float, default=360.0)
    p.add_argument("--chase-distance-m", type=float, default=10.0)
    p.add_argument("--duration-s", type=float, default=20.0, help="chase duration")
    p.add_argument("--flyby-offset-m", type=float, default=15.0)
    p.add_argument("--flyby-leg-m", type=float, default=100.0)
    p.add_argument("--start-height-m", type=float, default=5.0, help="elevator start height")
    p.add_argument("--end-height-m", type=float, default=45.0, help="elevator end height")
    p.add_argument("--dt-s", type=float, default=0.05)
    _add_camera_flags(p)
    _add_origin_flags(p)
    p.add_argument("--out", help="write the trajectory JSON here")
    p.add_argument("--plan-out", help="also write a waypoint flight plan JSON here")
    p.add_argument("--waypoint-interval-s", type=float, default=1.0)

    p = sub.add_parser("simulate", help="run a headless simulation of a project")
    p.add_argument("--project", required=True)
    p.add_argument("--duration-s", type=float, default=10.0)
    p.add_argument("--input-log", help="replay manual controls from this log")
    p.add_argument("--trajectory", help="attach this trajectory JSON to a new drone")
    p.add_argument("--landmark", help="report per-drone landmark coverage for 'east,north,up'")
    p.add_argument("--out-trace", help="write the pose trace CSV here")
    p.add_argument("--out-events", help="write the event list CSV here")

    p = sub.add_parser("verify-overlap", help="check achieved overlap ratios of a scan mission")
    p.add_argument("--plan", required=True, help="scan mission JSON from plan-scan")
    p.add_argument("--mode", choices=["landscape", "detail"], default="landscape")

    p = sub.add_parser("export", help="convert plan files between formats")
    p.add_argument("--input", required=True, help="neutral plan JSON or QGC .plan")
    p.add_argument("--format", required=True, choices=["qgc", "litchi", "neutral"])
    p.add_argument("--output", required=True)

    p = sub.add_parser("serve", help="start the HTTP/WebSocket service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def cmd_plan_scan(args: argparse.Namespace) -> int:
    pitches = tuple(float(x) for x in args.gimbal_pitches_deg.split(","))
    area = ScanArea(
        origin_corner=EnuPoint(0.0, 0.0, 0.0),
        length_x_m=args.length_x_m,
        length_y_m=args.length_y_m,
        rotation_deg=args.rotation_deg,
    )
    config = ScanConfig(
        camera=_camera_from_args(args),
        base_height_m=args.base_height_m,
        avg_building_height_m=args.avg_building_height_m,
        max_building_height_m=args.max_building_height_m,
        in_track_overlap=args.in_track_overlap,
        cross_track_overlap=args.cross_track_overlap,
        gimbal_pitch_per_layer_deg=pitches,  # type: ignore[arg-type]
        cruise_speed_mps=args.cruise_speed_mps,
        both_directions=not args.single_direction,
    )
    plan = plan_scan(area, config)
    print(f"total image count: {plan.total_image_count}")
    for layer in plan.layers:
        print(
            f"layer height {layer.height_m:g} m: gimbal {layer.gimbal_pitch_deg:g} deg, "
            f"{layer.capture_count()} captures"
        )
    if args.out:
        _write_json(args.out, scan_bundle_to_dict(area, config, plan))
    if args.manifest:
        _write_text(args.manifest, write_capture_manifest(plan, _origin_from_args(args)))
    return 0


def cmd_shot(args: argparse.Namespace) -> int:
    target = _parse_enu(args.target, "--target")
    spec = ShotSpec(
        shot_type=ShotType(args.type.upper()),
        target=TargetRef.point(target),
        camera=_camera_from_args(args),
        height_m=args.height_m,
        speed_mps=args.speed_mps,
        orbit_radius_m=args.radius_m,
        orbit_arc_deg=args.arc_deg,
        chase_distance_m=args.chase_distance_m,
        chase_duration_s=args.duration_s,
        flyby_offset_m=args.flyby_offset_m,
        flyby_leg_m=args.flyby_leg_m,
        elevator_start_height_m=args.start_height_m,
        elevator_end_height_m=args.end_height_m,
    )
    trajectory = generate_shot(spec, dt_s=args.dt_s)
    print(f"samples: {len(trajectory.samples)}, duration: {trajectory.duration_s:g} s")
    if args.out:
        _write_json(args.out, trajectory_to_dict(trajectory))
    if args.plan_out:
        plan = from_trajectory(trajectory, _origin_from_args(args), args.waypoint_interval_s, spec.speed_mps)
        _write_text(args.plan_out, save_plan_json(plan).decode("utf-8"))
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    with open(args.project, "rb") as f:
        project = load_project(f.read())
    world = build_world(project)

    coverage_targets = {}
    if args.trajectory:
        with open(args.trajectory) as f:
            trajectory = trajectory_from_dict(json.load(f))
        new_id = max((d.drone_id for d in world.drones), default=0) + 1
        world.drones.append(
            Drone(drone_id=new_id, position=trajectory.samples[0].pose.position,
                  mode=DroneMode.FOLLOW_TRAJECTORY, trajectory=trajectory)
        )
        print(f"attached trajectory to drone {new_id}")

    records = []
    if args.input_log:
        with open(args.input_log) as f:
            records = load_input_log(f.read())
    by_tick: dict[int, list] = {}
    for tick, drone_id, control in records:
        by_tick.setdefault(tick, []).append((drone_id, control))

    n_ticks = round(args.duration_s / world.tick_s)
    trace_lines = ["tick,time_s,entity,id,east,north,up,yaw_deg,gimbal_pitch_deg"]
    event_lines = ["time_s,kind,subject_ids,distance_m"]
    all_events = []

    def record_trace() -> None:
        for d in world.drones:
            trace_lines.append(
                f"{world.tick},{world.time_s!r},drone,{d.drone_id},{d.position.east!r},"
                f"{d.position.north!r},{d.position.up!r},{d.yaw_deg!r},{d.gimbal_pitch_deg!r}"
            )
        for a in world.actors:
            p = a.pose.position
            trace_lines.append(
                f"{world.tick},{world.time_s!r},actor,{a.actor_id},{p.east!r},"
                f"{p.north!r},{p.up!r},{a.pose.yaw_deg!r},{a.pose.gimbal_pitch_deg!r}"
            )

    record_trace()
    for i in range(n_ticks):
        for drone_id, control in by_tick.get(i, ()):
            world.set_control(drone_id, control)
        events = world.step()
        all_events.extend(events)
        record_trace()
        for e in events:
            ids = ";".join(str(s) for s in e.subject_ids)
            event_lines.append(f"{e.time_s!r},{e.kind},{ids},{e.distance_m!r}")

    summary: dict = {"ticks": world.tick, "duration_s": world.time_s, "events": len(all_events)}
    if args.landmark:
        landmark = _parse_enu(args.landmark, "--landmark")
        coverage = {}
        for d in world.drones:
            if d.trajectory is not None:
                coverage[str(d.drone_id)] = landmark_coverage(d.trajectory, d.trajectory.camera, landmark)
        summary["coverage"] = coverage
    print(json.dumps(summary, sort_keys=True))

    if args.out_trace:
        _write_text(args.out_trace, "\n".join(trace_lines) + "\n")
    if args.out_events:
        _write_text(args.out_events, "\n".join(event_lines) + "\n")
    return 0


def cmd_verify_overlap(args: argparse.Namespace) -> int:
    with open(args.plan) as f:
        _area, config, plan = scan_bundle_from_dict(json.load(f))
    report = verify_overlap(plan, config.camera, args.mode)
    print(f"mode: {report.mode} (threshold {report.threshold:.2f})")
    for layer in report.layers:
        print(
            f"layer {layer.height_m:g} m: in-track {layer.min_in_track:.4f}, "
            f"cross-track {layer.min_cross_track:.4f}"
        )
    for warning in report.warnings:
        print(f"WARNING: {warning}")
    print("result: " + ("ok" if report.ok else f"{len(report.warnings)} warning(s)"))
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    with open(args.input, "rb") as f:
        raw = f.read()
    try:
        head = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CliError(f"--input is not a JSON plan document: {exc}") from exc
    if isinstance(head, dict) and head.get("fileType") == "Plan":
        plan = import_qgc_plan(raw)
    else:
        plan = load_plan_json(raw)
    if args.format == "qgc":
        data = export_qgc_plan(plan)
    elif args.format == "litchi":
        data = export_litchi_csv(plan).encode("utf-8")
    else:
        data = save_plan_json(plan)
    with open(args.output, "wb") as f:
        f.write(data)
    print(f"wrote {len(plan.waypoints)} waypoints to {args.output}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "plan-scan": cmd_plan_scan,
    "shot": cmd_shot,
    "simulate": cmd_simulate,
    "verify-overlap": cmd_verify_overlap,
    "export": cmd_export,
    "serve": cmd_serve,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError(parser.format_usage())
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    except (SkyshotError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
