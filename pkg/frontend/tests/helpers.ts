/** Test plumbing: fixture loading and a fetch stub.
 *
 * Every fixture under tests/fixtures was captured verbatim from the service
 * answering over HTTP, so these tests exercise the real wire contract.
 */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { vi } from "vitest";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

export function fixture<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES, name), "utf8")) as T;
}

export interface StubAnswer {
  status?: number;
  body: unknown;
}

/** Replace global fetch; the route function decides each response. */
export function stubFetch(route: (url: string, init?: RequestInit) => StubAnswer) {
  const mock = vi.fn(async (url: string, init?: RequestInit) => {
    const { status = 200, body } = route(url, init);
    return {
      ok: status >= 200 && status < 300,
      status,
      statusText: String(status),
      json: async () => body,
    };
  });
  vi.stubGlobal("fetch", mock);
  return mock;
}

/** A fetch stub whose every call fails like an unreachable host. */
export function stubFetchDown() {
  const mock = vi.fn(async () => {
    throw new TypeError("fetch failed");
  });
  vi.stubGlobal("fetch", mock);
  return mock;
}
