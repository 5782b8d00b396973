/**
 * Frame subscription over server-sent events.
 *
 * EventSource reconnects by itself after transient drops; the status
 * callback lets the header show connected/retrying. Frames that fail to
 * parse are reported but do not kill the stream, matching the service's
 * keep-the-stream-alive error contract.
 */
/** Cheap structural check before a payload is trusted as a frame. */
export function looksLikeFrame(value) {
    if (typeof value !== "object" || value === null)
        return false;
    const v = value;
    return (typeof v.session_id === "string" &&
        typeof v.seq === "number" &&
        typeof v.state === "string" &&
        typeof v.metrics === "object" &&
        v.metrics !== null &&
        Array.isArray(v.layers) &&
        typeof v.grid === "object" &&
        v.grid !== null &&
        typeof v.config_echo === "object" &&
        v.config_echo !== null);
}
export class FrameStream {
    constructor(onFrame, onStatus, onBadFrame) {
        this.onFrame = onFrame;
        this.onStatus = onStatus;
        this.onBadFrame = onBadFrame;
        this.source = null;
    }
    open(sessionId) {
        this.close();
        const source = new EventSource(`/sessions/${sessionId}/stream`);
        this.source = source;
        source.onopen = () => this.onStatus(true);
        source.onerror = () => this.onStatus(false);
        source.onmessage = (ev) => {
            let parsed;
            try {
                parsed = JSON.parse(ev.data);
            }
            catch (err) {
                this.onBadFrame(err);
                return;
            }
            if (!looksLikeFrame(parsed)) {
                this.onBadFrame(new Error("payload does not look like a frame"));
                return;
            }
            this.onFrame(parsed);
        };
    }
    close() {
        if (this.source) {
            this.source.close();
            this.source = null;
            this.onStatus(false);
        }
    }
}
