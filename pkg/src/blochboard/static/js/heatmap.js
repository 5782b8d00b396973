import { classColorAlpha, classColor, CORRECT_OUTLINE, MISCLASSIFIED_OUTLINE } from "./colors.js";
export const GRID_BOUND = 1.2;
/**
 * Cells sitting on a label boundary of the flattened truth grid.
 *
 * Grid layout matches the service: index = iy * res + ix with x fastest and
 * y ascending. A cell is marked when any 4-neighbor holds another class,
 * which draws the ground-truth rule as a thin contour band.
 */
export function boundaryMask(labels, resolution) {
    const out = new Array(labels.length).fill(false);
    for (let iy = 0; iy < resolution; iy++) {
        for (let ix = 0; ix < resolution; ix++) {
            const i = iy * resolution + ix;
            const here = labels[i];
            if ((ix > 0 && labels[i - 1] !== here) ||
                (ix < resolution - 1 && labels[i + 1] !== here) ||
                (iy > 0 && labels[i - resolution] !== here) ||
                (iy < resolution - 1 && labels[i + resolution] !== here)) {
                out[i] = true;
            }
        }
    }
    return out;
}
/**
 * Fill opacity for a predicted cell: chance-level score fades to nearly
 * transparent, certainty to a solid tint.
 */
export function confidenceAlpha(score, nClasses) {
    const chance = 1 / nClasses;
    const t = Math.min(1, Math.max(0, (score - chance) / (1 - chance)));
    return 0.08 + 0.72 * t;
}
/** Decision map: predicted classes under the truth contour and the samples. */
export class HeatmapPanel {
    constructor(container, size = 340) {
        this.frame = null;
        this.onHover = () => { };
        this.canvas = document.createElement("canvas");
        this.canvas.width = size;
        this.canvas.height = size;
        this.canvas.className = "heatmap-canvas";
        this.ctx = this.canvas.getContext("2d");
        container.appendChild(this.canvas);
        this.canvas.addEventListener("pointermove", (ev) => {
            const info = this.hitTest(ev);
            this.onHover(info, ev.clientX, ev.clientY);
        });
        this.canvas.addEventListener("pointerleave", () => this.onHover(null, 0, 0));
    }
    hitTest(ev) {
        if (!this.frame)
            return null;
        const rect = this.canvas.getBoundingClientRect();
        const px = ((ev.clientX - rect.left) / rect.width) * this.canvas.width;
        const py = ((ev.clientY - rect.top) / rect.height) * this.canvas.height;
        const res = this.frame.grid.resolution;
        const cell = this.canvas.width / res;
        const ix = Math.floor(px / cell);
        const iy = res - 1 - Math.floor(py / cell);
        if (ix < 0 || ix >= res || iy < 0 || iy >= res)
            return null;
        const i = iy * res + ix;
        const width = (2 * GRID_BOUND) / res;
        const predicted = this.frame.grid.labels[i];
        return {
            x: -GRID_BOUND + width * (ix + 0.5),
            y: -GRID_BOUND + width * (iy + 0.5),
            predicted,
            score: this.frame.grid.scores[i][predicted],
            truth: this.frame.grid.truth[i],
        };
    }
    render(frame) {
        this.frame = frame;
        const { ctx, canvas } = this;
        const res = frame.grid.resolution;
        const cell = canvas.width / res;
        const nClasses = frame.config_echo.n_classes;
        ctx.clearRect(0, 0, canvas.width, canvas.height);
        for (let iy = 0; iy < res; iy++) {
            for (let ix = 0; ix < res; ix++) {
                const i = iy * res + ix;
                const label = frame.grid.labels[i];
                const alpha = confidenceAlpha(frame.grid.scores[i][label], nClasses);
                ctx.fillStyle = classColorAlpha(label, alpha);
                // canvas rows run top-down while the grid's y runs bottom-up
                ctx.fillRect(ix * cell, (res - 1 - iy) * cell, cell + 0.5, cell + 0.5);
            }
        }
        const boundary = boundaryMask(frame.grid.truth, res);
        ctx.fillStyle = "rgba(20, 20, 20, 0.35)";
        for (let iy = 0; iy < res; iy++) {
            for (let ix = 0; ix < res; ix++) {
                if (boundary[iy * res + ix]) {
                    ctx.fillRect(ix * cell, (res - 1 - iy) * cell, cell + 0.5, cell + 0.5);
                }
            }
        }
        const toPx = (v) => ((v + GRID_BOUND) / (2 * GRID_BOUND)) * canvas.width;
        const finalPoints = frame.final.points;
        for (let k = 0; k < frame.sample_indices.length; k++) {
            const [x, y] = frame.dataset.train.points[frame.sample_indices[k]];
            const p = finalPoints[k];
            ctx.beginPath();
            ctx.arc(toPx(x), canvas.height - toPx(y), 3.5, 0, 2 * Math.PI);
            ctx.fillStyle = classColor(p.label);
            ctx.fill();
            ctx.lineWidth = p.correct ? 1 : 2;
            ctx.strokeStyle = p.correct ? CORRECT_OUTLINE : MISCLASSIFIED_OUTLINE;
            ctx.stroke();
        }
    }
}
