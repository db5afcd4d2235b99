// Simulation-mode playback: consumes the state stream with snapshot
// coalescing (render the latest, drop stale frames) and freezes on pause.

import type { StateMessage, StatePayload, StreamMessage } from "./types";

export interface StreamTransport {
  send(message: StreamMessage): void;
  onMessage(handler: (message: StreamMessage) => void): void;
}

export interface SimEventEntry {
  tick: number;
  payload: Record<string, unknown>;
}

export class PlaybackController {
  paused = false;
  gapDetected = false;
  lastTick: number | null = null;
  events: SimEventEntry[] = [];
  errors: string[] = [];

  private pending: StateMessage | null = null;
  private frozen: StateMessage | null = null;
  private rendered: StateMessage | null = null;

  constructor(private transport: StreamTransport) {
    transport.onMessage((message) => this.handle(message));
  }

  private handle(message: StreamMessage): void {
    if (message.kind === "state") {
      const state = message as StateMessage;
      if (this.lastTick !== null && state.tick > this.lastTick + 1) {
        this.gapDetected = true; // stream gap: show the reconnect indicator
      }
      this.lastTick = state.tick;
      this.pending = state; // coalesce: only the newest snapshot survives
    } else if (message.kind === "event") {
      this.events.push({ tick: message.tick ?? -1, payload: message.payload ?? {} });
    } else if (message.kind === "error") {
      this.errors.push(String(message.payload?.reason ?? "unknown error"));
    }
  }

  pause(): void {
    this.paused = true;
    this.frozen = this.rendered ?? this.pending;
  }

  resume(): void {
    this.paused = false;
    this.frozen = null;
  }

  // Called by the render loop; returns the snapshot to draw, or null when
  // nothing new arrived. While paused, every viewport keeps the frozen tick.
  nextFrame(): StateMessage | null {
    if (this.paused) {
      return this.frozen;
    }
    if (this.pending) {
      this.rendered = this.pending;
      this.pending = null;
      return this.rendered;
    }
    return null;
  }

  currentState(): StatePayload | null {
    const frame = this.paused ? this.frozen : (this.rendered ?? this.pending);
    return frame ? frame.payload : null;
  }

  requestTick(): void {
    this.transport.send({ kind: "tick" });
  }
}
