/** Server rejection carrying the HTTP status and any offending field names. */
export class ApiError extends Error {
    constructor(status, message, fields = []) {
        super(message);
        this.status = status;
        this.fields = fields;
        this.name = "ApiError";
    }
}
async function request(path, init) {
    let response;
    try {
        response = await fetch(path, init);
    }
    catch (err) {
        throw new ApiError(0, `cannot reach the server (${String(err)})`);
    }
    if (response.status === 204)
        return undefined;
    let body = null;
    try {
        body = await response.json();
    }
    catch {
        // non-JSON error bodies fall through to the generic message
    }
    if (!response.ok) {
        const detail = body?.detail;
        const message = typeof detail === "string"
            ? detail
            : detail?.message ?? `request failed with status ${response.status}`;
        throw new ApiError(response.status, message, detail && typeof detail === "object" ? detail.fields ?? [] : []);
    }
    return body;
}
export function createSession(payload) {
    return request("/sessions", {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload ?? {}),
    });
}
export function listSessions() {
    return request("/sessions");
}
export function getSnapshot(sessionId) {
    return request(`/sessions/${sessionId}`);
}
export function deleteSession(sessionId) {
    return request(`/sessions/${sessionId}`, { method: "DELETE" });
}
export function control(sessionId, command, extras = {}) {
    return request(`/sessions/${sessionId}/control`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ command, ...extras }),
    });
}
