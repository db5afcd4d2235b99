// Schematic per-drone perspective viewports, derived purely from a server
// snapshot (pose + intrinsics). No physics here: the snapshot is the truth.

import type { ActorSnapshot, CameraIntrinsics, DroneSnapshot, StatePayload } from "./types";

export interface ViewportPoint {
  x: number; // normalized image coords, [-1, 1] inside the frame
  y: number;
  depth: number; // metres along the optical axis
}

export interface ViewportMarker extends ViewportPoint {
  id: number;
  kind: string;
}

export interface ViewportScene {
  droneId: number;
  markers: ViewportMarker[];
  horizonY: number | null; // normalized y of the horizon line, if in frame
}

const DEG = Math.PI / 180;

export function projectPoint(
  pose: { east: number; north: number; up: number; yaw_deg: number; gimbal_pitch_deg: number },
  camera: CameraIntrinsics,
  point: { east: number; north: number; up: number },
): ViewportPoint | null {
  const yaw = pose.yaw_deg * DEG;
  const pitch = pose.gimbal_pitch_deg * DEG;
  const sy = Math.sin(yaw);
  const cy = Math.cos(yaw);
  const sp = Math.sin(pitch);
  const cp = Math.cos(pitch);

  const ve = point.east - pose.east;
  const vn = point.north - pose.north;
  const vu = point.up - pose.up;

  const forward = ve * (sy * cp) + vn * (cy * cp) + vu * -sp;
  if (forward <= 0) {
    return null;
  }
  const right = ve * cy - vn * sy;
  const upImg = ve * (sy * sp) + vn * (cy * sp) + vu * cp;

  const tanHalfW = camera.sensor_width_mm / (2 * camera.focal_length_mm);
  const tanHalfH = camera.sensor_height_mm / (2 * camera.focal_length_mm);
  return {
    x: right / forward / tanHalfW,
    y: upImg / forward / tanHalfH,
    depth: forward,
  };
}

export function inFrame(p: ViewportPoint | null): boolean {
  return p !== null && Math.abs(p.x) <= 1 && Math.abs(p.y) <= 1;
}

// One drone's viewport from a shared state snapshot; callers may derive any
// number of these (picture-in-picture) from the same snapshot. The snapshot
// carries each drone's intrinsics; the parameter is only a fallback.
export function viewportScene(
  droneId: number,
  fallbackCamera: CameraIntrinsics,
  state: StatePayload,
): ViewportScene {
  const drones = state.drones ?? [];
  const actors = state.actors ?? [];
  const self = drones.find((d: DroneSnapshot) => d.id === droneId);
  if (!self) {
    throw new Error(`drone ${droneId} not in snapshot`);
  }
  const camera = self.camera ?? fallbackCamera;
  const markers: ViewportMarker[] = [];
  for (const actor of actors) {
    const p = projectPoint(self, camera, actor);
    if (inFrame(p)) {
      markers.push({ id: actor.id, kind: (actor as ActorSnapshot).kind, ...(p as ViewportPoint) });
    }
  }
  for (const other of drones) {
    if (other.id === droneId) continue;
    const p = projectPoint(self, camera, other);
    if (inFrame(p)) {
      markers.push({ id: other.id, kind: "drone", ...(p as ViewportPoint) });
    }
  }
  // horizon: where a level ray at the drone's own height projects
  const tanHalfH = camera.sensor_height_mm / (2 * camera.focal_length_mm);
  const pitch = self.gimbal_pitch_deg * DEG;
  const horizon = Math.tan(pitch) / tanHalfH;
  return {
    droneId,
    markers,
    horizonY: Math.abs(horizon) <= 1 ? horizon : null,
  };
}
