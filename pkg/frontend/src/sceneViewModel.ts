// Editing-mode view model: a project mirror with optimistic edits that are
// rolled back when the server rejects the mutation, and reconciled to the
// server's copy after every acknowledgement.

import { ApiClient, ApiError, ShotResult } from "./api";
import type { ActorDoc, DroneDoc, EnuPoint, ProjectDoc, RecordedWaypoint, ShotSpecDoc, TrajectorySampleDoc } from "./types";

export interface Selection {
  kind: "actor" | "drone";
  id: number;
  waypointIndex?: number;
}

interface DragState {
  actorId: number;
  waypointIndex: number;
  preGesture: ProjectDoc;
}

function clone<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}

export class SceneViewModel {
  project: ProjectDoc | null = null;
  selection: Selection | null = null;
  lastError: string | null = null;
  trajectoryOverlays = new Map<number, TrajectorySampleDoc[]>();
  recordedPathOverlay: RecordedWaypoint[] | null = null;

  private drag: DragState | null = null;

  constructor(
    private api: ApiClient,
    private sessionId: string,
  ) {}

  async load(): Promise<void> {
    this.project = await this.api.getProject(this.sessionId);
  }

  private requireProject(): ProjectDoc {
    if (!this.project) {
      throw new Error("project not loaded");
    }
    return this.project;
  }

  select(selection: Selection | null): void {
    this.selection = selection;
  }

  actor(actorId: number): ActorDoc {
    const actor = this.requireProject().actors.find((a) => a.actor_id === actorId);
    if (!actor) {
      throw new Error(`actor ${actorId} not in project`);
    }
    return actor;
  }

  drone(droneId: number): DroneDoc {
    const drone = this.requireProject().drones.find((d) => d.drone_id === droneId);
    if (!drone) {
      throw new Error(`drone ${droneId} not in project`);
    }
    return drone;
  }

  // --- waypoint drag gesture: local while dragging, one request on drop ---

  beginWaypointDrag(actorId: number, waypointIndex: number): void {
    this.drag = { actorId, waypointIndex, preGesture: clone(this.requireProject()) };
    this.selection = { kind: "actor", id: actorId, waypointIndex };
  }

  moveWaypoint(position: EnuPoint): void {
    if (!this.drag) {
      throw new Error("no drag in progress");
    }
    this.actor(this.drag.actorId).path[this.drag.waypointIndex] = position;
  }

  async commitWaypointDrag(): Promise<boolean> {
    if (!this.drag) {
      throw new Error("no drag in progress");
    }
    const drag = this.drag;
    this.drag = null;
    return this.mutate(
      () => this.api.updateActor(this.sessionId, this.actor(drag.actorId)),
      drag.preGesture,
    );
  }

  // --- option-panel edits: one request each, rollback on rejection ---

  async updateActorOptions(actor: ActorDoc): Promise<boolean> {
    const before = clone(this.requireProject());
    const target = this.actor(actor.actor_id);
    Object.assign(target, clone(actor));
    return this.mutate(() => this.api.updateActor(this.sessionId, target), before);
  }

  async updateDroneOptions(drone: DroneDoc): Promise<boolean> {
    const before = clone(this.requireProject());
    const target = this.drone(drone.drone_id);
    Object.assign(target, clone(drone));
    return this.mutate(() => this.api.updateDrone(this.sessionId, target), before);
  }

  async addActor(actor: ActorDoc): Promise<boolean> {
    const before = clone(this.requireProject());
    this.requireProject().actors.push(clone(actor));
    return this.mutate(() => this.api.addActor(this.sessionId, actor), before);
  }

  async addDrone(drone: DroneDoc): Promise<boolean> {
    const before = clone(this.requireProject());
    this.requireProject().drones.push(clone(drone));
    return this.mutate(() => this.api.addDrone(this.sessionId, drone), before);
  }

  async deleteActor(actorId: number): Promise<boolean> {
    const before = clone(this.requireProject());
    const project = this.requireProject();
    project.actors = project.actors.filter((a) => a.actor_id !== actorId);
    return this.mutate(() => this.api.deleteActor(this.sessionId, actorId), before);
  }

  // Shot configuration from the drone options tab: generates a trajectory
  // server-side, attaches the spec and overlays the returned path on the map.
  async setDroneShot(droneId: number, spec: ShotSpecDoc): Promise<ShotResult | null> {
    const before = clone(this.requireProject());
    try {
      const result = await this.api.createShot(this.sessionId, spec, droneId);
      this.trajectoryOverlays.set(droneId, result.trajectory.samples);
      await this.reconcile();
      this.lastError = null;
      return result;
    } catch (error) {
      this.project = before;
      this.recordError(error);
      return null;
    }
  }

  attachRecordedPath(waypoints: RecordedWaypoint[]): void {
    this.recordedPathOverlay = waypoints;
  }

  private async mutate(request: () => Promise<void>, rollbackTo: ProjectDoc): Promise<boolean> {
    try {
      await request();
      await this.reconcile();
      this.lastError = null;
      return true;
    } catch (error) {
      this.project = rollbackTo;
      this.recordError(error);
      return false;
    }
  }

  private async reconcile(): Promise<void> {
    this.project = await this.api.getProject(this.sessionId);
  }

  private recordError(error: unknown): void {
    if (error instanceof ApiError) {
      this.lastError = error.message;
    } else {
      this.lastError = String(error);
    }
  }
}
