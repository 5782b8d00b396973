/**
 * Per-run metric history behind the line charts.
 *
 * Frames arrive at arbitrary cadence (batch steps, epoch boundaries, command
 * acks). The charts want exactly one point per epoch: a new epoch index
 * appends a point, frames within the same epoch refresh the latest point in
 * place, and a reset (new `run`) clears the series.
 */
export class MetricHistory {
    constructor() {
        this.run = -1;
        this.points = [];
    }
    /** Fold one frame in; returns true when chart data changed. */
    consume(frame) {
        let changed = false;
        if (frame.run !== this.run) {
            this.run = frame.run;
            this.points = [];
            changed = true;
        }
        const point = {
            epoch: frame.epoch,
            train_loss: frame.metrics.train_loss,
            train_accuracy: frame.metrics.train_accuracy,
            test_accuracy: frame.metrics.test_accuracy,
        };
        const last = this.points[this.points.length - 1];
        if (last === undefined || frame.epoch > last.epoch) {
            this.points.push(point);
            return true;
        }
        if (frame.epoch === last.epoch) {
            const moved = last.train_loss !== point.train_loss ||
                last.train_accuracy !== point.train_accuracy ||
                last.test_accuracy !== point.test_accuracy;
            this.points[this.points.length - 1] = point;
            return changed || moved;
        }
        // an epoch in the past would mean a missed reset; treat it as one
        this.points = [point];
        return true;
    }
}
