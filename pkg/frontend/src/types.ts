// Wire types mirroring the /v1 service schemas.

export interface EnuPoint {
  east: number;
  north: number;
  up: number;
}

export interface CameraIntrinsics {
  sensor_width_mm: number;
  sensor_height_mm: number;
  focal_length_mm: number;
}

export interface DroneLimits {
  max_horizontal_mps: number;
  max_climb_mps: number;
  max_yaw_rate_dps: number;
  max_gimbal_rate_dps: number;
}

export interface ActorDoc {
  actor_id: number;
  kind: "car" | "cyclist" | "boat";
  path: EnuPoint[];
  speed_mps: number;
  loop: boolean;
}

export interface DroneDoc {
  drone_id: number;
  name: string;
  start: EnuPoint;
  cruise_speed_mps: number;
  limits: DroneLimits;
  shot_spec_id: number | null;
}

export interface ShotSpecDoc {
  shot_type: "ESTABLISH" | "CHASE" | "FLYBY" | "ELEVATOR" | "ORBIT";
  target: { static_point: EnuPoint } | { actor_id: number };
  camera: CameraIntrinsics;
  [param: string]: unknown;
}

export interface ProjectDoc {
  schema_version: number;
  origin: { latitude: number; longitude: number; altitude: number };
  terrain: { cell_size_m: number; heights: number[][]; water_mask: number[][] | null } | null;
  wind: Record<string, number>;
  actors: ActorDoc[];
  drones: DroneDoc[];
  shot_specs: { spec_id: number; spec: ShotSpecDoc }[];
  scan_plans: unknown[];
  recordings: unknown[];
  scene: Record<string, number>;
}

export interface ControlAxes {
  forward: number;
  right: number;
  climb: number;
  yaw_rate: number;
  gimbal_rate: number;
}

export interface DroneSnapshot {
  id: number;
  east: number;
  north: number;
  up: number;
  yaw_deg: number;
  gimbal_pitch_deg: number;
  mode: string;
  camera?: CameraIntrinsics;
}

export interface ActorSnapshot {
  id: number;
  kind: string;
  east: number;
  north: number;
  up: number;
  yaw_deg: number;
}

export interface StatePayload {
  run_state: string;
  tick?: number;
  time_s?: number;
  drones?: DroneSnapshot[];
  actors?: ActorSnapshot[];
}

export interface StreamMessage {
  kind: "state" | "event" | "error" | "control" | "tick";
  tick?: number;
  payload?: Record<string, unknown>;
}

export interface StateMessage extends StreamMessage {
  kind: "state";
  tick: number;
  payload: StatePayload & Record<string, unknown>;
}

export interface TrajectorySampleDoc {
  time_s: number;
  east: number;
  north: number;
  up: number;
  yaw_deg: number;
  gimbal_pitch_deg: number;
}

export interface RecordedWaypoint {
  east: number;
  north: number;
  up: number;
  heading_deg: number;
  gimbal_pitch_deg: number;
}
