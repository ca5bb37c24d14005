/** Typed fetch client for the docadopt service.
 *
 * All traffic to the service goes through this module, so the rest of the app
 * never touches URLs or response parsing.
 */

import type { Augmentation, HealthInfo, ProjectListing, SectionListing } from "./types.js";

export interface FieldError {
  loc: (string | number)[];
  msg: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly fields: FieldError[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

let base = "";

/** Point the client at a service origin; "" means same-origin. */
export function setApiBase(url: string): void {
  base = url.replace(/\/+$/, "");
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  let res: Response;
  try {
    res = await fetch(base + path, init);
  } catch {
    throw new ApiError(0, "service unreachable");
  }
  if (res.ok) {
    return (await res.json()) as T;
  }
  // the service reports validation problems as field-level {loc, msg} rows
  let fields: FieldError[] = [];
  let message = `request failed (${res.status})`;
  try {
    const body = await res.json();
    if (Array.isArray(body.detail)) {
      fields = body.detail as FieldError[];
      message = fields.map((f) => f.msg).join("; ") || message;
    } else if (typeof body.detail === "string") {
      message = body.detail;
    }
  } catch {
    // non-JSON error body, keep the status line
  }
  throw new ApiError(res.status, message, fields);
}

function post<T>(path: string, payload: unknown): Promise<T> {
  return request<T>(path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
}

export const api = {
  health(): Promise<HealthInfo> {
    return request("/health");
  },

  projects(): Promise<ProjectListing> {
    return request("/projects");
  },

  sections(projectId: string, label?: string): Promise<SectionListing> {
    const query = label === undefined ? "" : `?label=${encodeURIComponent(label)}`;
    return request(`/projects/${encodeURIComponent(projectId)}/sections${query}`);
  },

  augment(paragraph: string, domain: string): Promise<Augmentation> {
    return post("/augment", { paragraph, domain });
  },
};
