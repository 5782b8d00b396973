import type { ControlCommand, Frame } from "./types.js";

/** Server rejection carrying the HTTP status and any offending field names. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly fields: string[] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(path, init);
  } catch (err) {
    throw new ApiError(0, `cannot reach the server (${String(err)})`);
  }
  if (response.status === 204) return undefined as T;
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    // non-JSON error bodies fall through to the generic message
  }
  if (!response.ok) {
    const detail = (body as { detail?: { message?: string; fields?: string[] } } | null)?.detail;
    const message =
      typeof detail === "string"
        ? detail
        : detail?.message ?? `request failed with status ${response.status}`;
    throw new ApiError(response.status, message, detail && typeof detail === "object" ? detail.fields ?? [] : []);
  }
  return body as T;
}

export function createSession(payload: unknown): Promise<{ session_id: string; frame: Frame }> {
  return request("/sessions", {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify(payload ?? {}),
  });
}

export function listSessions(): Promise<{ sessions: string[] }> {
  return request("/sessions");
}

export function getSnapshot(sessionId: string): Promise<Frame> {
  return request(`/sessions/${sessionId}`);
}

export function deleteSession(sessionId: string): Promise<void> {
  return request(`/sessions/${sessionId}`, { method: "DELETE" });
}

export interface ControlExtras {
  seed?: number;
  lr?: number;
  batch_size?: number;
}

export function control(
  sessionId: string,
  command: ControlCommand,
  extras: ControlExtras = {},
): Promise<Frame> {
  return request(`/sessions/${sessionId}/control`, {
    method: "POST",
    headers: { "Content-Type": "application/json" },
    body: JSON.stringify({ command, ...extras }),
  });
}
