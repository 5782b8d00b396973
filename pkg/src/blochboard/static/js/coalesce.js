/**
 * Latest-wins delivery valve between the stream and the renderer.
 *
 * Frames can arrive faster than the page can draw. Pushes overwrite the
 * pending item and a single flush is scheduled; by the time the scheduler
 * fires only the newest item is handed on, so rendering never queues up
 * behind stale frames.
 */
export class Coalescer {
    constructor(flush, schedule) {
        this.flush = flush;
        this.schedule = schedule;
        this.pending = null;
        this.scheduled = false;
    }
    push(item) {
        this.pending = item;
        if (this.scheduled)
            return;
        this.scheduled = true;
        this.schedule(() => {
            this.scheduled = false;
            const item = this.pending;
            this.pending = null;
            if (item !== null)
                this.flush(item);
        });
    }
}
