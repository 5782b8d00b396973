import { linearScale, padded, ticks } from "./scales.js";
import type { EpochPoint } from "./metrics.js";

export interface SeriesDef {
  key: keyof Omit<EpochPoint, "epoch">;
  label: string;
  color: string;
}

const MARGIN = { top: 10, right: 12, bottom: 24, left: 44 };

/** Epoch-indexed line chart redrawn whole from the metric history. */
export class LineChart {
  private readonly canvas: HTMLCanvasElement;
  private readonly ctx: CanvasRenderingContext2D;

  constructor(
    container: HTMLElement,
    private readonly series: SeriesDef[],
    private readonly opts: { fixedDomain?: [number, number]; title: string },
    width = 420,
    height = 180,
  ) {
    this.canvas = document.createElement("canvas");
    this.canvas.width = width;
    this.canvas.height = height;
    this.canvas.className = "chart-canvas";
    this.ctx = this.canvas.getContext("2d")!;
    container.appendChild(this.canvas);
  }

  render(points: readonly EpochPoint[]): void {
    const { ctx, canvas } = this;
    const w = canvas.width;
    const h = canvas.height;
    ctx.clearRect(0, 0, w, h);
    ctx.font = "11px system-ui, sans-serif";

    ctx.fillStyle = "#555";
    ctx.fillText(this.opts.title, MARGIN.left, 12);

    const innerX: [number, number] = [MARGIN.left, w - MARGIN.right];
    const innerY: [number, number] = [h - MARGIN.bottom, MARGIN.top];
    const maxEpoch = points.length > 0 ? Math.max(1, points[points.length - 1].epoch) : 1;
    const xScale = linearScale([0, maxEpoch], innerX);

    let yDomain = this.opts.fixedDomain;
    if (!yDomain) {
      let lo = Infinity;
      let hi = -Infinity;
      for (const p of points) {
        for (const s of this.series) {
          const v = p[s.key];
          if (v < lo) lo = v;
          if (v > hi) hi = v;
        }
      }
      yDomain = points.length > 0 ? padded(Math.min(lo, 0), hi) : [0, 1];
    }
    const yScale = linearScale(yDomain, innerY);

    ctx.strokeStyle = "#e3e3e3";
    ctx.fillStyle = "#888";
    ctx.lineWidth = 1;
    for (const t of ticks(yDomain[0], yDomain[1], 4)) {
      const y = yScale.map(t);
      ctx.beginPath();
      ctx.moveTo(innerX[0], y);
      ctx.lineTo(innerX[1], y);
      ctx.stroke();
      ctx.fillText(formatTick(t), 4, y + 3);
    }
    for (const t of ticks(0, maxEpoch, 6)) {
      if (!Number.isInteger(t)) continue;
      const x = xScale.map(t);
      ctx.fillText(String(t), x - 3, h - 8);
    }

    for (const s of this.series) {
      ctx.strokeStyle = s.color;
      ctx.lineWidth = 1.6;
      ctx.beginPath();
      points.forEach((p, i) => {
        const x = xScale.map(p.epoch);
        const y = yScale.map(p[s.key]);
        if (i === 0) ctx.moveTo(x, y);
        else ctx.lineTo(x, y);
      });
      ctx.stroke();
      if (points.length > 0) {
        const last = points[points.length - 1];
        ctx.fillStyle = s.color;
        ctx.beginPath();
        ctx.arc(xScale.map(last.epoch), yScale.map(last[s.key]), 2.5, 0, 2 * Math.PI);
        ctx.fill();
      }
    }

    // legend along the top edge
    let lx = innerX[1] - this.series.length * 86;
    for (const s of this.series) {
      ctx.fillStyle = s.color;
      ctx.fillRect(lx, 6, 10, 3);
      ctx.fillStyle = "#555";
      ctx.fillText(s.label, lx + 14, 12);
      lx += 86;
    }
  }
}

function formatTick(v: number): string {
  if (Math.abs(v) >= 100 || Number.isInteger(v)) return String(v);
  return v.toPrecision(2);
}
