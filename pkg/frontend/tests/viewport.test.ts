import { describe, expect, it } from "vitest";

import { inFrame, projectPoint, viewportScene } from "../src/viewport";
import type { CameraIntrinsics, StatePayload } from "../src/types";

const CAMERA: CameraIntrinsics = { sensor_width_mm: 23.66, sensor_height_mm: 13.3, focal_length_mm: 35 };

describe("projectPoint", () => {
  it("centres a target on the optical axis", () => {
    // drone east of the target, orbit-style: yaw west (270), pitched down
    const pitch = (Math.atan2(20, 30) * 180) / Math.PI;
    const pose = { east: 30, north: 0, up: 20, yaw_deg: 270, gimbal_pitch_deg: pitch };
    const p = projectPoint(pose, CAMERA, { east: 0, north: 0, up: 0 })!;
    expect(Math.abs(p.x)).toBeLessThan(1e-9);
    expect(Math.abs(p.y)).toBeLessThan(1e-9);
    expect(p.depth).toBeCloseTo(Math.hypot(30, 20), 9);
  });

  it("returns null behind the camera", () => {
    const pose = { east: 0, north: 0, up: 10, yaw_deg: 0, gimbal_pitch_deg: 0 };
    expect(projectPoint(pose, CAMERA, { east: 0, north: -50, up: 10 })).toBeNull();
  });

  it("marks points outside the half-FOV as out of frame", () => {
    const pose = { east: 0, north: 0, up: 10, yaw_deg: 0, gimbal_pitch_deg: 0 };
    const halfTan = CAMERA.sensor_width_mm / (2 * CAMERA.focal_length_mm);
    const inside = projectPoint(pose, CAMERA, { east: 100 * halfTan * 0.999, north: 100, up: 10 });
    const outside = projectPoint(pose, CAMERA, { east: 100 * halfTan * 1.001, north: 100, up: 10 });
    expect(inFrame(inside)).toBe(true);
    expect(inFrame(outside)).toBe(false);
  });
});

describe("viewportScene", () => {
  const snapshot: StatePayload = {
    run_state: "running",
    drones: [
      { id: 1, east: 30, north: 0, up: 20, yaw_deg: 270, gimbal_pitch_deg: 33.69006752597979, mode: "follow_trajectory" },
      { id: 2, east: -40, north: 0, up: 20, yaw_deg: 90, gimbal_pitch_deg: 26.56505117707799, mode: "manual" },
    ],
    actors: [{ id: 7, kind: "car", east: 0, north: 0, up: 0, yaw_deg: 0 }],
  };

  it("keeps an orbited target centred in that drone's viewport", () => {
    const scene = viewportScene(1, CAMERA, snapshot);
    const marker = scene.markers.find((m) => m.id === 7)!;
    expect(Math.abs(marker.x)).toBeLessThan(1e-6);
    expect(Math.abs(marker.y)).toBeLessThan(1e-6);
  });

  it("derives independent viewports for each drone from one snapshot", () => {
    const one = viewportScene(1, CAMERA, snapshot);
    const two = viewportScene(2, CAMERA, snapshot);
    expect(one.droneId).toBe(1);
    expect(two.droneId).toBe(2);
    // both see the car, from opposite sides, at different depths
    const carFromOne = one.markers.find((m) => m.id === 7)!;
    const carFromTwo = two.markers.find((m) => m.id === 7)!;
    expect(carFromOne.depth).not.toBeCloseTo(carFromTwo.depth, 6);
    // drone 1 is level with drone 2, far above the downward optical axis:
    // projected but outside the vertical half-FOV, so no marker for it
    expect(two.markers.some((m) => m.kind === "drone" && m.id === 1)).toBe(false);
    const raw = projectPoint(snapshot.drones![1], CAMERA, snapshot.drones![0]);
    expect(raw).not.toBeNull();
    expect(raw!.y).toBeGreaterThan(1);
  });

  it("places the horizon per gimbal pitch", () => {
    const level: StatePayload = {
      run_state: "running",
      drones: [{ id: 1, east: 0, north: 0, up: 10, yaw_deg: 0, gimbal_pitch_deg: 0, mode: "manual" }],
      actors: [],
    };
    expect(viewportScene(1, CAMERA, level).horizonY).toBeCloseTo(0, 12);
  });

  it("prefers the intrinsics carried in the snapshot over the fallback", () => {
    const tele: StatePayload = {
      run_state: "running",
      drones: [
        {
          id: 1,
          east: 0,
          north: 0,
          up: 10,
          yaw_deg: 0,
          gimbal_pitch_deg: 0,
          mode: "manual",
          camera: { sensor_width_mm: 23.66, sensor_height_mm: 13.3, focal_length_mm: 105 },
        },
      ],
      actors: [{ id: 3, kind: "car", east: 20, north: 100, up: 10, yaw_deg: 0 }],
    };
    // inside the wide fallback FOV but outside the telephoto FOV
    expect(viewportScene(1, CAMERA, tele).markers).toHaveLength(0);
  });
});
