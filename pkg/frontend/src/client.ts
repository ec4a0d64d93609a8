/** Thin typed client for the stroke-session HTTP API. */

export interface RankedLabel {
  label: string;
  score: number;
}

export interface RecognitionPayload {
  rejected: boolean;
  ranked: RankedLabel[];
  error?: string;
}

export interface TrajPoint {
  x: number;
  y: number;
  t: number;
}

export interface SessionState {
  id: string;
  phase: string;
  raw_trajectory: TrajPoint[];
  smoothed_trajectory?: TrajPoint[];
  result?: RecognitionPayload;
}

export interface PointAck {
  phase: string;
  velocity: number | null;
  point_count: number;
}

export class HttpError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

type FetchLike = typeof fetch;

export class ServiceClient {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = fetch,
  ) {}

  private async request(method: string, path: string, body?: unknown): Promise<unknown> {
    const res = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!res.ok) {
      throw new HttpError(res.status, `${method} ${path} -> ${res.status}`);
    }
    if (res.status === 204) return undefined;
    return res.json();
  }

  async createSession(): Promise<string> {
    const out = (await this.request("POST", "/sessions")) as { id: string };
    return out.id;
  }

  async sendPose(id: string, raisedFingers: number): Promise<string> {
    const out = (await this.request("POST", `/sessions/${id}/pose`, {
      raised_fingers: raisedFingers,
    })) as { phase: string };
    return out.phase;
  }

  async sendPoint(id: string, point: TrajPoint): Promise<PointAck> {
    return (await this.request("POST", `/sessions/${id}/points`, point)) as PointAck;
  }

  async getSession(id: string): Promise<SessionState> {
    return (await this.request("GET", `/sessions/${id}`)) as SessionState;
  }

  async deleteSession(id: string): Promise<void> {
    await this.request("DELETE", `/sessions/${id}`);
  }
}
