import { describe, expect, it } from "vitest";

import { ApiClient, ApiError, RequestSlot } from "../src/api.js";
import assessWorkedJson from "./fixtures/assess_worked_example.json";

function jsonResponse(payload: unknown, status = 200): Response {
  return new Response(JSON.stringify(payload), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("posts the document and returns the parsed body", async () => {
    const seen: { url: string; body: string }[] = [];
    const client = new ApiClient("http://svc", async (url, init) => {
      seen.push({ url, body: String(init?.body) });
      return jsonResponse(assessWorkedJson);
    });
    const result = await client.assess({ x2: 49, x15: 1 });
    expect(seen).toHaveLength(1);
    expect(seen[0]!.url).toBe("http://svc/assess");
    expect(JSON.parse(seen[0]!.body)).toEqual({ x2: 49, x15: 1 });
    expect(result.category).toBe("high");
  });

  it("turns a field-error response into an ApiError with details", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse({ detail: [{ field: "x99", message: "unknown field" }] }, 400),
    );
    const err = await client.assess({ x99: 1 }).catch((e: unknown) => e);
    expect(err).toBeInstanceOf(ApiError);
    expect((err as ApiError).status).toBe(400);
    expect((err as ApiError).message).toBe("x99: unknown field");
  });

  it("copes with a string detail and a non-JSON error body", async () => {
    const client = new ApiClient("", async () =>
      jsonResponse({ detail: "service not ready" }, 503),
    );
    const err = (await client.recommend({}).catch((e: unknown) => e)) as ApiError;
    expect(err.details).toEqual([{ field: "$", message: "service not ready" }]);

    const opaque = new ApiClient("", async () => new Response("boom", { status: 502 }));
    const err2 = (await opaque.assess({}).catch((e: unknown) => e)) as ApiError;
    expect(err2.status).toBe(502);
    expect(err2.message).toBe("HTTP 502");
  });
});

interface Deferred<T> {
  promise: Promise<T>;
  resolve: (value: T) => void;
  reject: (err: unknown) => void;
}

function deferred<T>(): Deferred<T> {
  let resolve!: (value: T) => void;
  let reject!: (err: unknown) => void;
  const promise = new Promise<T>((res, rej) => {
    resolve = res;
    reject = rej;
  });
  return { promise, resolve, reject };
}

describe("RequestSlot", () => {
  it("reports the superseded request as stale and aborts it", async () => {
    const slot = new RequestSlot();
    const slow = deferred<string>();
    let slowSignal: AbortSignal | undefined;

    const first = slot.run((signal) => {
      slowSignal = signal;
      return slow.promise;
    });
    const second = await slot.run(() => Promise.resolve("fresh"));

    expect(second).toEqual({ stale: false, value: "fresh" });
    expect(slowSignal?.aborted).toBe(true);

    slow.resolve("stale answer");
    expect(await first).toEqual({ stale: true });
  });

  it("marks an aborted rejection as stale instead of throwing", async () => {
    const slot = new RequestSlot();
    const slow = deferred<string>();
    const first = slot.run((signal) => {
      signal.addEventListener("abort", () => slow.reject(new DOMException("gone", "AbortError")));
      return slow.promise;
    });
    await slot.run(() => Promise.resolve("fresh"));
    expect(await first).toEqual({ stale: true });
  });

  it("rethrows a genuine failure of the current request", async () => {
    const slot = new RequestSlot();
    await expect(slot.run(() => Promise.reject(new Error("boom")))).rejects.toThrow("boom");
  });

  it("passes through sequential requests untouched", async () => {
    const slot = new RequestSlot();
    expect(await slot.run(() => Promise.resolve(1))).toEqual({ stale: false, value: 1 });
    expect(await slot.run(() => Promise.resolve(2))).toEqual({ stale: false, value: 2 });
  });
});
