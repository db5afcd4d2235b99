// HTTP client for the /v1 session API. The transport is injectable so tests
// can intercept the data layer; every client method performs exactly one
// request.

import type { ActorDoc, DroneDoc, ProjectDoc, RecordedWaypoint, ShotSpecDoc, TrajectorySampleDoc } from "./types";

export interface HttpResponse {
  status: number;
  body: unknown;
}

export interface HttpTransport {
  request(method: string, path: string, body?: unknown): Promise<HttpResponse>;
}

export class FetchTransport implements HttpTransport {
  constructor(private baseUrl: string) {}

  async request(method: string, path: string, body?: unknown): Promise<HttpResponse> {
    const response = await fetch(this.baseUrl + path, {
      method,
      headers: body !== undefined ? { "content-type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    const text = await response.text();
    let parsed: unknown = null;
    try {
      parsed = text ? JSON.parse(text) : null;
    } catch {
      parsed = text;
    }
    return { status: response.status, body: parsed };
  }
}

export class ApiError extends Error {
  status: number;
  field: string | null;
  state: string | null;

  constructor(status: number, body: unknown) {
    const error = (body as { error?: { reason?: string; field?: string; state?: string } })?.error;
    super(error?.reason ?? `request failed with status ${status}`);
    this.status = status;
    this.field = error?.field ?? null;
    this.state = error?.state ?? null;
  }
}

function expectOk(response: HttpResponse): unknown {
  if (response.status >= 400) {
    throw new ApiError(response.status, response.body);
  }
  return response.body;
}

export interface ShotResult {
  spec_id: number;
  trajectory: { dt_s: number; camera: unknown; samples: TrajectorySampleDoc[] };
}

export interface FreeplayExitResult {
  run_state: string;
  recorded_samples: number;
  waypoints: RecordedWaypoint[];
}

export class ApiClient {
  constructor(private transport: HttpTransport) {}

  async createSession(project?: ProjectDoc, realtime = false): Promise<string> {
    const body = expectOk(
      await this.transport.request("POST", "/v1/sessions", { project: project ?? null, realtime }),
    ) as { session_id: string };
    return body.session_id;
  }

  async getProject(sessionId: string): Promise<ProjectDoc> {
    return expectOk(await this.transport.request("GET", `/v1/sessions/${sessionId}/project`)) as ProjectDoc;
  }

  async putProject(sessionId: string, project: ProjectDoc): Promise<void> {
    expectOk(await this.transport.request("PUT", `/v1/sessions/${sessionId}/project`, project));
  }

  async addActor(sessionId: string, actor: ActorDoc): Promise<void> {
    expectOk(await this.transport.request("POST", `/v1/sessions/${sessionId}/actors`, actor));
  }

  async updateActor(sessionId: string, actor: ActorDoc): Promise<void> {
    expectOk(await this.transport.request("PUT", `/v1/sessions/${sessionId}/actors/${actor.actor_id}`, actor));
  }

  async deleteActor(sessionId: string, actorId: number): Promise<void> {
    expectOk(await this.transport.request("DELETE", `/v1/sessions/${sessionId}/actors/${actorId}`));
  }

  async addDrone(sessionId: string, drone: DroneDoc): Promise<void> {
    expectOk(await this.transport.request("POST", `/v1/sessions/${sessionId}/drones`, drone));
  }

  async updateDrone(sessionId: string, drone: DroneDoc): Promise<void> {
    expectOk(await this.transport.request("PUT", `/v1/sessions/${sessionId}/drones/${drone.drone_id}`, drone));
  }

  async deleteDrone(sessionId: string, droneId: number): Promise<void> {
    expectOk(await this.transport.request("DELETE", `/v1/sessions/${sessionId}/drones/${droneId}`));
  }

  async createShot(sessionId: string, spec: ShotSpecDoc, droneId?: number): Promise<ShotResult> {
    return expectOk(
      await this.transport.request("POST", `/v1/sessions/${sessionId}/shots`, {
        spec,
        drone_id: droneId ?? null,
      }),
    ) as ShotResult;
  }

  async shotCoverage(
    sessionId: string,
    specId: number,
    landmark: { east: number; north: number; up: number },
  ): Promise<number> {
    const body = expectOk(
      await this.transport.request("POST", `/v1/sessions/${sessionId}/shots/${specId}/coverage`, {
        landmark,
      }),
    ) as { coverage: number };
    return body.coverage;
  }

  async startRun(sessionId: string): Promise<string> {
    const body = expectOk(await this.transport.request("POST", `/v1/sessions/${sessionId}/run/start`)) as {
      run_state: string;
    };
    return body.run_state;
  }

  async pauseRun(sessionId: string): Promise<string> {
    const body = expectOk(await this.transport.request("POST", `/v1/sessions/${sessionId}/run/pause`)) as {
      run_state: string;
    };
    return body.run_state;
  }

  async resetRun(sessionId: string): Promise<string> {
    const body = expectOk(await this.transport.request("POST", `/v1/sessions/${sessionId}/run/reset`)) as {
      run_state: string;
    };
    return body.run_state;
  }

  async enterFreeplay(sessionId: string, droneId: number): Promise<void> {
    expectOk(
      await this.transport.request("POST", `/v1/sessions/${sessionId}/freeplay/enter`, { drone_id: droneId }),
    );
  }

  async exitFreeplay(sessionId: string): Promise<FreeplayExitResult> {
    return expectOk(
      await this.transport.request("POST", `/v1/sessions/${sessionId}/freeplay/exit`),
    ) as FreeplayExitResult;
  }
}
