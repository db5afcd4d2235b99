"""Session-oriented HTTP/WebSocket service for planning, simulation and free play.

Run states per session: editing <-> running <-> paused, with freeplay
reachable only from editing. Every mutating endpoint validates against a
candidate project first and swaps atomically, so a failed request leaves
the session's project untouched.

The stream protocol exchanges JSON messages with a `kind` discriminator:
server emits state / event / error, clients send control (freeplay only)
and, on non-realtime sessions, tick messages that advance the simulation
in lockstep for deterministic replay. Realtime sessions tick themselves at
the fixed 20 Hz rate instead.
"""

from __future__ import annotations

import asyncio
from dataclasses import replace
from typing import Any

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from . import project as project_mod
from .errors import InvalidArgumentError, SkyshotError, StateConflictError
from .flightplan import export_litchi_csv, export_qgc_plan, from_trajectory
from .project import (
    Project,
    ScanPlanEntry,
    attach_recording,
    build_world,
    generate_project_shot,
    project_from_dict,
    project_to_dict,
    save_project,
)
from .geometry import EnuPoint
from .scanplan import estimate_image_count, plan_scan, verify_overlap, write_capture_manifest
from .shots import Trajectory
from .sim import ControlInput, World, landmark_coverage, record_and_export

TICK_S = 0.05

EDITING = "editing"
RUNNING = "running"
PAUSED = "paused"
FREEPLAY = "freeplay"


class Session:
    def __init__(self, session_id: str, project: Project, realtime: bool):
        self.session_id = session_id
        self.project = project
        self.realtime = realtime
        self.run_state = EDITING
        self.world: World | None = None
        self.freeplay_drone_id: int | None = None
        self.lock = asyncio.Lock()
        self.streams: list[WebSocket] = []
        self.ticker: asyncio.Task | None = None

    @property
    def tick(self) -> int:
        return self.world.tick if self.world is not None else 0

    def require_state(self, *allowed: str) -> None:
        if self.run_state not in allowed:
            raise StateConflictError(
                f"operation requires state {' or '.join(allowed)}, session is {self.run_state}"
            )

    def state_message(self) -> dict:
        payload: dict[str, Any] = {"run_state": self.run_state}
        if self.world is not None:
            payload.update(self.world.snapshot())
        return {"kind": "state", "tick": self.tick, "payload": payload}

    async def broadcast(self, message: dict) -> None:
        dead = []
        for ws in self.streams:
            try:
                await ws.send_json(message)
            except Exception:
                dead.append(ws)
        for ws in dead:
            self.streams.remove(ws)

    async def step_once(self) -> list:
        assert self.world is not None
        events = self.world.step()
        await self.broadcast(self.state_message())
        for event in events:
            await self.broadcast(
                {
                    "kind": "event",
                    "tick": self.tick,
                    "payload": {
                        "time_s": event.time_s,
                        "event_kind": event.kind,
                        "subject_ids": list(event.subject_ids),
                        "distance_m": event.distance_m,
                    },
                }
            )
        return events

    def start_ticker(self) -> None:
        # realtime sessions only make sense under a live server with one
        # persistent event loop; lockstep sessions never tick themselves
        if self.realtime and self.ticker is None:
            self.ticker = asyncio.get_running_loop().create_task(self._tick_loop())

    def stop_ticker(self) -> None:
        if self.ticker is not None:
            self.ticker.cancel()
            self.ticker = None

    async def _tick_loop(self) -> None:
        try:
            while self.run_state in (RUNNING, FREEPLAY):
                await asyncio.sleep(TICK_S)
                async with self.lock:
                    if self.run_state in (RUNNING, FREEPLAY) and self.world is not None:
                        await self.step_once()
        except asyncio.CancelledError:
            pass


class SessionStore:
    def __init__(self) -> None:
        self._sessions: dict[str, Session] = {}
        self._counter = 0

    def create(self, project: Project, realtime: bool) -> Session:
        self._counter += 1
        session = Session(f"s{self._counter}", project, realtime)
        self._sessions[session.session_id] = session
        return session

    def get(self, session_id: str) -> Session:
        session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session


class CreateSessionRequest(BaseModel):
    project: dict | None = None
    realtime: bool = False


class StepRequest(BaseModel):
    ticks: int = 1


class FreeplayEnterRequest(BaseModel):
    drone_id: int


class ScanPlanRequest(BaseModel):
    area: dict
    config: dict


class VerifyOverlapRequest(BaseModel):
    mode: str = "landscape"


class ShotRequest(BaseModel):
    spec: dict
    drone_id: int | None = None


class CoverageRequest(BaseModel):
    landmark: dict


def _error_response(status: int, reason: str, field: str | None = None, state: str | None = None) -> JSONResponse:
    error: dict[str, Any] = {"reason": reason}
    if field is not None:
        error["field"] = field
    if state is not None:
        error["state"] = state
    return JSONResponse(status_code=status, content={"error": error})


def _trajectory_payload(trajectory: Trajectory) -> dict:
    return {
        "dt_s": trajectory.dt_s,
        "camera": {
            "sensor_width_mm": trajectory.camera.sensor_width_mm,
            "sensor_height_mm": trajectory.camera.sensor_height_mm,
            "focal_length_mm": trajectory.camera.focal_length_mm,
        },
        "samples": [
            {
                "time_s": s.time_s,
                "east": s.pose.position.east,
                "north": s.pose.position.north,
                "up": s.pose.position.up,
                "yaw_deg": s.pose.yaw_deg,
                "gimbal_pitch_deg": s.pose.gimbal_pitch_deg,
            }
            for s in trajectory.samples
        ],
    }


def create_app() -> FastAPI:
    app = FastAPI(title="skyshot", version="0.1.0")
    store = SessionStore()
    app.state.store = store

    @app.exception_handler(StateConflictError)
    async def conflict_handler(_request: Request, exc: StateConflictError):
        return _error_response(409, str(exc))

    @app.exception_handler(SkyshotError)
    async def skyshot_error_handler(_request: Request, exc: SkyshotError):
        return _error_response(400, str(exc))

    @app.exception_handler(KeyError)
    async def missing_handler(_request: Request, exc: KeyError):
        return _error_response(404, f"unknown resource {exc}")

    def get_session(session_id: str) -> Session:
        return store.get(session_id)

    @app.post("/v1/sessions")
    async def create_session(body: CreateSessionRequest):
        project = project_from_dict(body.project) if body.project is not None else Project()
        session = store.create(project, body.realtime)
        return {"session_id": session.session_id, "run_state": session.run_state}

    @app.get("/v1/sessions/{session_id}")
    async def session_info(session_id: str):
        session = get_session(session_id)
        return {"session_id": session.session_id, "run_state": session.run_state, "tick": session.tick}

    @app.get("/v1/sessions/{session_id}/project")
    async def get_project(session_id: str):
        return project_to_dict(get_session(session_id).project)

    @app.put("/v1/sessions/{session_id}/project")
    async def put_project(session_id: str, body: dict):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            session.project = project_from_dict(body)
        return {"ok": True}

    @app.post("/v1/sessions/{session_id}/project/save")
    async def save_project_doc(session_id: str):
        session = get_session(session_id)
        return Response(content=save_project(session.project), media_type="application/json")

    def _apply_project(session: Session, candidate: Project) -> None:
        project_mod.validate_project(candidate)
        session.project = candidate

    @app.post("/v1/sessions/{session_id}/actors")
    async def add_actor(session_id: str, body: dict):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            doc = project_to_dict(session.project)
            doc["actors"] = doc["actors"] + [body]
            _apply_project(session, project_from_dict(doc))
        return body

    @app.put("/v1/sessions/{session_id}/actors/{actor_id}")
    async def update_actor(session_id: str, actor_id: int, body: dict):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            if body.get("actor_id") != actor_id:
                raise InvalidArgumentError("body actor_id must match the path actor_id")
            doc = project_to_dict(session.project)
            found = False
            actors = []
            for actor in doc["actors"]:
                if actor["actor_id"] == actor_id:
                    actors.append(body)
                    found = True
                else:
                    actors.append(actor)
            if not found:
                raise KeyError(f"actor {actor_id}")
            doc["actors"] = actors
            _apply_project(session, project_from_dict(doc))
        return body

    @app.delete("/v1/sessions/{session_id}/actors/{actor_id}")
    async def delete_actor(session_id: str, actor_id: int):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            doc = project_to_dict(session.project)
            if not any(a["actor_id"] == actor_id for a in doc["actors"]):
                raise KeyError(f"actor {actor_id}")
            doc["actors"] = [a for a in doc["actors"] if a["actor_id"] != actor_id]
            _apply_project(session, project_from_dict(doc))
        return {"ok": True}

    @app.post("/v1/sessions/{session_id}/drones")
    async def add_drone(session_id: str, body: dict):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            doc = project_to_dict(session.project)
            doc["drones"] = doc["drones"] + [body]
            _apply_project(session, project_from_dict(doc))
        return body

    @app.put("/v1/sessions/{session_id}/drones/{drone_id}")
    async def update_drone(session_id: str, drone_id: int, body: dict):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            if body.get("drone_id") != drone_id:
                raise InvalidArgumentError("body drone_id must match the path drone_id")
            doc = project_to_dict(session.project)
            found = False
            drones = []
            for drone in doc["drones"]:
                if drone["drone_id"] == drone_id:
                    drones.append(body)
                    found = True
                else:
                    drones.append(drone)
            if not found:
                raise KeyError(f"drone {drone_id}")
            doc["drones"] = drones
            _apply_project(session, project_from_dict(doc))
        return body

    @app.delete("/v1/sessions/{session_id}/drones/{drone_id}")
    async def delete_drone(session_id: str, drone_id: int):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            doc = project_to_dict(session.project)
            if not any(d["drone_id"] == drone_id for d in doc["drones"]):
                raise KeyError(f"drone {drone_id}")
            doc["drones"] = [d for d in doc["drones"] if d["drone_id"] != drone_id]
            _apply_project(session, project_from_dict(doc))
        return {"ok": True}

    @app.post("/v1/sessions/{session_id}/scan-plans")
    async def create_scan_plan(session_id: str, body: ScanPlanRequest):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            doc = project_to_dict(session.project)
            plan_id = max((p["plan_id"] for p in doc["scan_plans"]), default=0) + 1
            entry_doc = {"plan_id": plan_id, "area": body.area, "config": body.config, "plan": None}
            # parse area/config through the strict document path, then plan
            probe = dict(entry_doc)
            probe["plan"] = {"total_image_count": 0, "layers": []}
            doc_probe = dict(doc)
            doc_probe["scan_plans"] = doc["scan_plans"] + [probe]
            parsed = project_from_dict(doc_probe)
            pending = parsed.scan_plans[-1]
            plan = plan_scan(pending.area, pending.config)
            entry = ScanPlanEntry(plan_id=plan_id, area=pending.area, config=pending.config, plan=plan)
            candidate = replace(parsed, scan_plans=parsed.scan_plans[:-1] + (entry,))
            _apply_project(session, candidate)
        return {
            "plan_id": plan_id,
            "image_count": estimate_image_count(plan),
            "layer_heights_m": [layer.height_m for layer in plan.layers],
        }

    @app.post("/v1/sessions/{session_id}/scan-plans/{plan_id}/verify-overlap")
    async def verify_scan_plan(session_id: str, plan_id: int, body: VerifyOverlapRequest):
        session = get_session(session_id)
        entry = next((p for p in session.project.scan_plans if p.plan_id == plan_id), None)
        if entry is None:
            raise KeyError(f"scan plan {plan_id}")
        report = verify_overlap(entry.plan, entry.config.camera, body.mode)  # type: ignore[arg-type]
        return {
            "mode": report.mode,
            "threshold": report.threshold,
            "layers": [
                {
                    "height_m": layer.height_m,
                    "min_in_track": layer.min_in_track,
                    "min_cross_track": layer.min_cross_track,
                }
                for layer in report.layers
            ],
            "warnings": list(report.warnings),
            "ok": report.ok,
        }

    @app.post("/v1/sessions/{session_id}/shots")
    async def create_shot(session_id: str, body: ShotRequest):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            doc = project_to_dict(session.project)
            spec_id = max((s["spec_id"] for s in doc["shot_specs"]), default=0) + 1
            doc["shot_specs"] = doc["shot_specs"] + [{"spec_id": spec_id, "spec": body.spec}]
            if body.drone_id is not None:
                found = False
                for drone in doc["drones"]:
                    if drone["drone_id"] == body.drone_id:
                        drone["shot_spec_id"] = spec_id
                        found = True
                if not found:
                    raise KeyError(f"drone {body.drone_id}")
            candidate = project_from_dict(doc)
            spec = candidate.shot_specs[-1].spec
            trajectory = generate_project_shot(candidate, spec, dt_s=TICK_S)
            _apply_project(session, candidate)
        return {"spec_id": spec_id, "trajectory": _trajectory_payload(trajectory)}

    @app.post("/v1/sessions/{session_id}/shots/{spec_id}/coverage")
    async def shot_coverage(session_id: str, spec_id: int, body: CoverageRequest):
        session = get_session(session_id)
        entry = next((s for s in session.project.shot_specs if s.spec_id == spec_id), None)
        if entry is None:
            raise KeyError(f"shot spec {spec_id}")
        landmark = EnuPoint(
            east=float(body.landmark.get("east", 0.0)),
            north=float(body.landmark.get("north", 0.0)),
            up=float(body.landmark.get("up", 0.0)),
        )
        trajectory = generate_project_shot(session.project, entry.spec, dt_s=TICK_S)
        coverage = landmark_coverage(trajectory, entry.spec.camera, landmark)
        return {"spec_id": spec_id, "coverage": coverage, "samples": len(trajectory.samples)}

    @app.post("/v1/sessions/{session_id}/run/start")
    async def run_start(session_id: str):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING, PAUSED)
            if session.run_state == EDITING:
                session.world = build_world(session.project, tick_s=TICK_S)
            session.run_state = RUNNING
            session.start_ticker()
        return {"run_state": session.run_state}

    @app.post("/v1/sessions/{session_id}/run/pause")
    async def run_pause(session_id: str):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(RUNNING)
            session.run_state = PAUSED
        return {"run_state": session.run_state}

    @app.post("/v1/sessions/{session_id}/run/reset")
    async def run_reset(session_id: str):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(RUNNING, PAUSED)
            session.world = None
            session.run_state = EDITING
            session.stop_ticker()
        return {"run_state": session.run_state}

    @app.post("/v1/sessions/{session_id}/step")
    async def step(session_id: str, body: StepRequest):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(RUNNING, FREEPLAY)
            if body.ticks < 1:
                raise InvalidArgumentError("ticks must be >= 1")
            events = []
            for _ in range(body.ticks):
                events.extend(await session.step_once())
        return {
            "tick": session.tick,
            "events": [
                {
                    "time_s": e.time_s,
                    "kind": e.kind,
                    "subject_ids": list(e.subject_ids),
                    "distance_m": e.distance_m,
                }
                for e in events
            ],
        }

    @app.post("/v1/sessions/{session_id}/freeplay/enter")
    async def freeplay_enter(session_id: str, body: FreeplayEnterRequest):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(EDITING)
            if not any(d.drone_id == body.drone_id for d in session.project.drones):
                raise KeyError(f"drone {body.drone_id}")
            session.world = build_world(session.project, tick_s=TICK_S, manual_drone_id=body.drone_id)
            session.world.start_recording(body.drone_id)
            session.freeplay_drone_id = body.drone_id
            session.run_state = FREEPLAY
            session.start_ticker()
        return {"run_state": session.run_state, "drone_id": body.drone_id}

    @app.post("/v1/sessions/{session_id}/freeplay/exit")
    async def freeplay_exit(session_id: str):
        session = get_session(session_id)
        async with session.lock:
            session.require_state(FREEPLAY)
            assert session.world is not None and session.freeplay_drone_id is not None
            recording = session.world.stop_recording(session.freeplay_drone_id)
            session.project = attach_recording(session.project, recording)
            waypoints = []
            if len(recording.samples) >= 2:
                plan = record_and_export(recording, session.project.origin)
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
            session.world = None
            session.freeplay_drone_id = None
            session.run_state = EDITING
            session.stop_ticker()
        return {"run_state": session.run_state, "recorded_samples": len(recording.samples), "waypoints": waypoints}

    @app.get("/v1/sessions/{session_id}/export")
    async def export(
        session_id: str,
        format: str,
        shot_spec_id: int | None = None,
        scan_plan_id: int | None = None,
        recording_index: int | None = None,
        waypoint_interval_s: float = 1.0,
    ):
        session = get_session(session_id)
        project = session.project
        if format == "manifest":
            if scan_plan_id is None:
                raise InvalidArgumentError("manifest export needs scan_plan_id")
            entry = next((p for p in project.scan_plans if p.plan_id == scan_plan_id), None)
            if entry is None:
                raise KeyError(f"scan plan {scan_plan_id}")
            csv_text = write_capture_manifest(entry.plan, project.origin)
            return Response(content=csv_text, media_type="text/csv")
        if format not in ("qgc", "litchi"):
            raise InvalidArgumentError(f"unknown export format {format!r}")
        if shot_spec_id is not None:
            spec_entry = next((s for s in project.shot_specs if s.spec_id == shot_spec_id), None)
            if spec_entry is None:
                raise KeyError(f"shot spec {shot_spec_id}")
            trajectory = generate_project_shot(project, spec_entry.spec, dt_s=TICK_S)
            plan = from_trajectory(
                trajectory, project.origin, waypoint_interval_s, spec_entry.spec.speed_mps
            )
        elif recording_index is not None:
            if not 0 <= recording_index < len(project.recordings):
                raise KeyError(f"recording {recording_index}")
            rec = project.recordings[recording_index]
            from .sim import Recording

            plan = record_and_export(
                Recording(drone_id=rec.drone_id, dt_s=rec.dt_s, samples=rec.samples),
                project.origin,
                waypoint_interval_s,
            )
        else:
            raise InvalidArgumentError("export needs shot_spec_id or recording_index")
        if format == "qgc":
            return Response(content=export_qgc_plan(plan), media_type="application/json")
        return Response(content=export_litchi_csv(plan), media_type="text/csv")

    @app.websocket("/v1/sessions/{session_id}/stream")
    async def stream(websocket: WebSocket, session_id: str):
        try:
            session = store.get(session_id)
        except KeyError:
            await websocket.close(code=1008, reason="unknown session")
            return
        await websocket.accept()
        session.streams.append(websocket)
        await websocket.send_json(session.state_message())
        try:
            while True:
                try:
                    message = await websocket.receive_json()
                except WebSocketDisconnect:
                    raise
                except Exception:
                    await websocket.send_json(
                        {"kind": "error", "tick": session.tick, "payload": {"reason": "malformed message"}}
                    )
                    continue
                kind = message.get("kind") if isinstance(message, dict) else None
                if kind == "control":
                    await _handle_control(session, websocket, message)
                elif kind == "tick":
                    await _handle_tick(session, websocket)
                else:
                    await websocket.send_json(
                        {
                            "kind": "error",
                            "tick": session.tick,
                            "payload": {"reason": f"unknown message kind {kind!r}"},
                        }
                    )
        except WebSocketDisconnect:
            pass
        finally:
            if websocket in session.streams:
                session.streams.remove(websocket)

    async def _handle_control(session: Session, websocket: WebSocket, message: dict) -> None:
        if session.run_state != FREEPLAY:
            await websocket.send_json(
                {
                    "kind": "error",
                    "tick": session.tick,
                    "payload": {"reason": "control accepted only in freeplay", "state": session.run_state},
                }
            )
            return
        payload = message.get("payload", {})
        try:
            control = ControlInput(
                forward=float(payload.get("forward", 0.0)),
                right=float(payload.get("right", 0.0)),
                climb=float(payload.get("climb", 0.0)),
                yaw_rate=float(payload.get("yaw_rate", 0.0)),
                gimbal_rate=float(payload.get("gimbal_rate", 0.0)),
            )
            drone_id = int(payload.get("drone_id", session.freeplay_drone_id))
            async with session.lock:
                assert session.world is not None
                session.world.set_control(drone_id, control)
        except (SkyshotError, TypeError, ValueError) as exc:
            await websocket.send_json(
                {"kind": "error", "tick": session.tick, "payload": {"reason": str(exc)}}
            )

    async def _handle_tick(session: Session, websocket: WebSocket) -> None:
        if session.realtime:
            await websocket.send_json(
                {
                    "kind": "error",
                    "tick": session.tick,
                    "payload": {"reason": "tick messages are only valid on lockstep sessions"},
                }
            )
            return
        if session.run_state not in (RUNNING, FREEPLAY):
            await websocket.send_json(
                {
                    "kind": "error",
                    "tick": session.tick,
                    "payload": {"reason": "session is not running", "state": session.run_state},
                }
            )
            return
        async with session.lock:
            await session.step_once()

    return app


app = create_app()
