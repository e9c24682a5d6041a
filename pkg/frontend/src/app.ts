/** Console state machine: one active session, one rating in flight at most.
 *
 * All optimization state lives server-side; the console can be refreshed at
 * any point and resumes from GET /sessions/{id}.  Failed submissions keep the
 * entered form values so the participant can retry.
 */

import { ApiError, ConsoleApi } from "./api.js";
import { RatingForm } from "./form.js";
import type { PhysicalDesign, SubmitResponse } from "./types.js";

export type ConsolePhase = "idle" | "rating" | "submitting" | "complete" | "error";

export interface ConsoleState {
  phase: ConsolePhase;
  sessionId?: string;
  runIndex?: number;
  totalRuns: number;
  physical?: PhysicalDesign;
  trace: number[];
  lastError?: string;
}

export class ConsoleApp {
  readonly form = new RatingForm();
  private state: ConsoleState = { phase: "idle", totalRuns: 30, trace: [] };

  constructor(private readonly api: ConsoleApi) {}

  snapshot(): ConsoleState {
    return { ...this.state, trace: [...this.state.trace] };
  }

  async start(participantLabel: string, condition: string, rngSeed = 0): Promise<ConsoleState> {
    const started = await this.api.startSession(participantLabel, condition, rngSeed);
    this.state = {
      phase: "rating",
      sessionId: started.session_id,
      runIndex: started.run_index,
      totalRuns: 30,
      physical: started.physical,
      trace: [],
    };
    this.form.reset();
    return this.snapshot();
  }

  /** Re-fetch server state, e.g. after a page reload. */
  async resume(sessionId: string): Promise<ConsoleState> {
    const summary = await this.api.getSession(sessionId);
    this.state = {
      phase: summary.complete ? "complete" : "rating",
      sessionId: summary.session_id,
      runIndex: summary.run_index,
      totalRuns: summary.total_runs,
      physical: summary.physical,
      trace: [...summary.aggregate_trace],
    };
    return this.snapshot();
  }

  /** Submit the completed form; advances to the next proposal or completion. */
  async submit(): Promise<ConsoleState> {
    const sessionId = this.state.sessionId;
    if (this.state.phase !== "rating" || !sessionId) {
      throw new Error(`cannot submit in phase ${this.state.phase}`);
    }
    const payload = this.form.toPayload();
    this.state = { ...this.state, phase: "submitting" };
    let response: SubmitResponse;
    try {
      response = await this.api.submitRatings(sessionId, payload);
    } catch (error) {
      // keep entered values; participant fixes or retries
      const detail =
        error instanceof ApiError ? error.detail : String(error);
      this.state = { ...this.state, phase: "rating", lastError: detail };
      return this.snapshot();
    }
    this.state.trace.push(response.aggregate);
    if (response.complete) {
      this.state = {
        ...this.state,
        phase: "complete",
        runIndex: undefined,
        physical: undefined,
        lastError: undefined,
      };
    } else {
      this.state = {
        ...this.state,
        phase: "rating",
        runIndex: response.run_index,
        physical: response.physical,
        lastError: undefined,
      };
      this.form.reset();
    }
    return this.snapshot();
  }
}
