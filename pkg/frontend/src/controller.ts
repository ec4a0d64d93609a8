/**
 * Writing-pad state machine, DOM-free so it runs headless in tests.
 *
 * Pointer positions are sampled on a fixed clock while the session is in
 * the writing phase, stamped with monotonic timestamps, and sent one at
 * a time so order is guaranteed. Network failures buffer the stroke and
 * flush it in order once the service answers again. The pad never
 * mutates trajectory data: smoothing and recognition come back from the
 * server only.
 */

import { HttpError, PointAck, RecognitionPayload, ServiceClient, TrajPoint } from "./client.js";

export const TAU_PX_PER_S = 40;

export interface RenderModel {
  phase: string;
  rawPoints: TrajPoint[];
  smoothedPoints: TrajPoint[] | null;
  velocity: number | null;
  tau: number;
  result: RecognitionPayload | null;
  offline: boolean;
  pendingPoints: number;
  prompt: string;
}

export interface PadOptions {
  sampleRateHz?: number;
  now?: () => number;
}

export class PadController {
  readonly sampleRateHz: number;
  private now: () => number;
  private sessionId: string | null = null;
  private phase = "idle";
  private raw: TrajPoint[] = [];
  private smoothed: TrajPoint[] | null = null;
  private result: RecognitionPayload | null = null;
  private velocity: number | null = null;
  private offline = false;

  private pointer: { x: number; y: number } | null = null;
  private queue: TrajPoint[] = [];
  private sending = false;
  private lastStamp = -Infinity;

  constructor(private client: ServiceClient, opts: PadOptions = {}) {
    this.sampleRateHz = opts.sampleRateHz ?? 30;
    this.now = opts.now ?? (() => performance.now());
  }

  async open(): Promise<string> {
    this.sessionId = await this.client.createSession();
    this.phase = "idle";
    return this.sessionId;
  }

  get id(): string | null {
    return this.sessionId;
  }

  /** Pose event from the UI (button or keyboard): 1 arms writing. */
  async setPose(raisedFingers: number): Promise<void> {
    if (!this.sessionId) throw new Error("no session");
    const phase = await this.client.sendPose(this.sessionId, raisedFingers);
    this.phase = phase;
    if (raisedFingers !== 1 || phase === "writing") {
      // both transitions start from a clean slate
      this.raw = [];
      this.smoothed = null;
      this.result = null;
      this.velocity = null;
      this.queue = [];
      this.lastStamp = -Infinity;
    }
  }

  pointerDown(x: number, y: number): void {
    this.pointer = { x, y };
  }

  pointerMove(x: number, y: number): void {
    if (this.pointer !== null) this.pointer = { x, y };
  }

  pointerUp(): void {
    this.pointer = null;
  }

  /** One sampling tick: capture the current pointer position. */
  tick(): void {
    if (this.phase !== "writing" || this.pointer === null) return;
    this.enqueuePoint(this.pointer.x, this.pointer.y, this.now());
  }

  /** Direct point injection (scripted traces, camera sources). */
  enqueuePoint(x: number, y: number, t: number): void {
    if (t <= this.lastStamp) t = this.lastStamp + 1e-3; // keep order strict
    this.lastStamp = t;
    this.queue.push({ x, y, t });
    void this.pump();
  }

  /** Resolves when every queued point has been acknowledged. */
  async flush(): Promise<void> {
    await this.pump();
    while (this.queue.length > 0 || this.sending) {
      await new Promise((r) => setTimeout(r, 5));
      await this.pump();
    }
  }

  private async pump(): Promise<void> {
    if (this.sending || !this.sessionId) return;
    this.sending = true;
    try {
      while (this.queue.length > 0) {
        const point = this.queue[0];
        let ack: PointAck;
        try {
          ack = await this.client.sendPoint(this.sessionId, point);
        } catch (err) {
          if (err instanceof HttpError) {
            // the service refused the point (stale phase, bad stamp):
            // drop it, stay in sync with the server's view
            this.queue.shift();
            if (err.status === 409) await this.refresh();
            continue;
          }
          this.offline = true; // network failure: keep the queue intact
          return;
        }
        this.offline = false;
        this.queue.shift();
        this.raw.push(point);
        this.velocity = ack.velocity;
        this.phase = ack.phase;
        if (ack.phase === "terminated") {
          this.queue = [];
          await this.refresh();
          break;
        }
      }
    } finally {
      this.sending = false;
    }
  }

  /** Retry hook: flush buffered points after connectivity returns. */
  async reconnect(): Promise<void> {
    this.offline = false;
    await this.flush();
  }

  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const state = await this.client.getSession(this.sessionId);
    this.phase = state.phase;
    this.raw = state.raw_trajectory;
    this.smoothed = state.smoothed_trajectory ?? null;
    this.result = state.result ?? null;
  }

  renderModel(): RenderModel {
    let prompt = "";
    if (this.phase === "idle") prompt = "raise one finger (pose 1) to write";
    else if (this.phase === "writing") prompt = "writing… slow down to finish";
    else if (this.result?.rejected) prompt = "unrecognized — rewrite?";
    else if (this.result) prompt = `recognized: ${this.result.ranked[0]?.label ?? "?"}`;
    return {
      phase: this.phase,
      rawPoints: [...this.raw],
      smoothedPoints: this.smoothed ? [...this.smoothed] : null,
      velocity: this.velocity,
      tau: TAU_PX_PER_S,
      result: this.result,
      offline: this.offline,
      pendingPoints: this.queue.length,
      prompt,
    };
  }
}
