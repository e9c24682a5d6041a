/** Thin typed client for the optimization server; fetch is injectable for tests. */

import type {
  CatalogEntry,
  ParetoResponse,
  RatingsPayload,
  SessionStart,
  SessionSummary,
  SubmitResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`server responded ${status}: ${detail}`);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function parse<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = response.statusText;
    try {
      const body = await response.json();
      if (typeof body.detail === "string") detail = body.detail;
      else if (body.detail) detail = JSON.stringify(body.detail);
    } catch {
      /* non-JSON error body; keep the status text */
    }
    throw new ApiError(response.status, detail);
  }
  return (await response.json()) as T;
}

export class ConsoleApi {
  constructor(
    private readonly base: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  catalog(): Promise<CatalogEntry[]> {
    return this.request("GET", "/catalog");
  }

  startSession(participantLabel: string, condition: string, rngSeed = 0): Promise<SessionStart> {
    return this.request("POST", "/sessions", {
      label: participantLabel,
      condition,
      rng_seed: rngSeed,
    });
  }

  getSession(sessionId: string): Promise<SessionSummary> {
    return this.request("GET", `/sessions/${sessionId}`);
  }

  submitRatings(sessionId: string, ratings: RatingsPayload): Promise<SubmitResponse> {
    return this.request("POST", `/sessions/${sessionId}/ratings`, ratings);
  }

  pareto(sessionId: string): Promise<ParetoResponse> {
    return this.request("GET", `/sessions/${sessionId}/pareto`);
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchImpl(`${this.base}${path}`, init);
    return parse<T>(response);
  }
}
