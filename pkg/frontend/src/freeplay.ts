// Free-play mode: keyboard state mapped to control axes, one control
// message per simulation tick, and the recorded path recovered on exit.

import { ApiClient } from "./api";
import { SceneViewModel } from "./sceneViewModel";
import type { StreamTransport } from "./playback";
import type { ControlAxes, RecordedWaypoint, StreamMessage } from "./types";

// Key -> (axis, direction). Mirrored by the simulator fixture generator.
export const KEY_AXES: Record<string, [keyof ControlAxes, number]> = {
  w: ["forward", 1],
  s: ["forward", -1],
  d: ["right", 1],
  a: ["right", -1],
  ArrowUp: ["climb", 1],
  ArrowDown: ["climb", -1],
  ArrowRight: ["yaw_rate", 1],
  ArrowLeft: ["yaw_rate", -1],
  e: ["gimbal_rate", 1],
  q: ["gimbal_rate", -1],
};

const clamp = (value: number) => Math.max(-1, Math.min(1, value));

export class KeyboardState {
  private pressed = new Set<string>();

  keyDown(key: string): void {
    this.pressed.add(key);
  }

  keyUp(key: string): void {
    this.pressed.delete(key);
  }

  setPressed(keys: string[]): void {
    this.pressed = new Set(keys);
  }

  toControl(): ControlAxes {
    const axes: ControlAxes = { forward: 0, right: 0, climb: 0, yaw_rate: 0, gimbal_rate: 0 };
    for (const key of this.pressed) {
      const mapping = KEY_AXES[key];
      if (mapping) {
        axes[mapping[0]] += mapping[1];
      }
    }
    for (const name of Object.keys(axes) as (keyof ControlAxes)[]) {
      axes[name] = clamp(axes[name]);
    }
    return axes;
  }
}

export class FreeplayController {
  lastSentTick: number | null = null;
  controlsSent = 0;
  closedReason: string | null = null;

  constructor(
    private transport: StreamTransport,
    private droneId: number,
    private keyboard: KeyboardState,
  ) {
    transport.onMessage((message) => this.handle(message));
  }

  private handle(message: StreamMessage): void {
    if (message.kind === "state" && typeof message.tick === "number") {
      this.sendControlForTick(message.tick);
    }
  }

  // At most one control per observed tick, even if snapshots are replayed.
  sendControlForTick(tick: number): void {
    if (this.lastSentTick !== null && tick <= this.lastSentTick) {
      return;
    }
    this.lastSentTick = tick;
    this.controlsSent += 1;
    this.transport.send({
      kind: "control",
      tick,
      payload: { drone_id: this.droneId, ...this.keyboard.toControl() },
    });
  }

  channelClosed(reason: string): void {
    this.closedReason = reason;
  }
}

// Leave free play: the recording becomes an editable waypoint overlay.
export async function exitFreeplay(
  api: ApiClient,
  sessionId: string,
  scene: SceneViewModel,
): Promise<RecordedWaypoint[]> {
  const result = await api.exitFreeplay(sessionId);
  scene.attachRecordedPath(result.waypoints);
  return result.waypoints;
}
