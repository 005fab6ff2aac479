import type { AssessResponse, QuestionnaireDoc, RecommendResponse, ApiErrorDetail } from "./types.js";

export class ApiError extends Error {
  readonly status: number;
  readonly details: ApiErrorDetail[];

  constructor(status: number, details: ApiErrorDetail[]) {
    super(details.map((d) => `${d.field}: ${d.message}`).join("; ") || `HTTP ${status}`);
    this.status = status;
    this.details = details;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function postJson<T>(
  fetchImpl: FetchLike,
  url: string,
  body: unknown,
  signal?: AbortSignal,
): Promise<T> {
  const response = await fetchImpl(url, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(body),
    signal,
  });
  if (!response.ok) {
    let details: ApiErrorDetail[] = [];
    try {
      const payload = (await response.json()) as { detail?: unknown };
      if (Array.isArray(payload.detail)) details = payload.detail as ApiErrorDetail[];
      else if (typeof payload.detail === "string")
        details = [{ field: "$", message: payload.detail }];
    } catch {
      // non-JSON error body; the status alone will have to do
    }
    throw new ApiError(response.status, details);
  }
  return (await response.json()) as T;
}

/** Thin client for the recommendation service. The UI never computes a
 * flag, score or category itself; everything flows through these calls. */
export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(baseUrl = "", fetchImpl: FetchLike = (...args) => fetch(...args)) {
    this.base = baseUrl.replace(/\/$/, "");
    this.fetchImpl = fetchImpl;
  }

  assess(doc: QuestionnaireDoc, signal?: AbortSignal): Promise<AssessResponse> {
    return postJson<AssessResponse>(this.fetchImpl, `${this.base}/assess`, doc, signal);
  }

  recommend(doc: QuestionnaireDoc, signal?: AbortSignal): Promise<RecommendResponse> {
    return postJson<RecommendResponse>(this.fetchImpl, `${this.base}/recommend`, doc, signal);
  }
}

/** Latest-wins request slot: one in-flight request per panel.
 *
 * Starting a new request aborts the previous one, and a response that
 * arrives after a newer request started is reported as stale so the
 * caller drops it instead of rendering yesterday's panel.
 */
export class RequestSlot {
  private seq = 0;
  private controller: AbortController | null = null;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<{ stale: boolean; value?: T }> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.seq;
    try {
      const value = await task(controller.signal);
      if (ticket !== this.seq) return { stale: true };
      return { stale: false, value };
    } catch (err) {
      if (controller.signal.aborted || ticket !== this.seq) return { stale: true };
      throw err;
    }
  }
}
